#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rnaicgf/rnai_model.hpp"

namespace rnaicgf {

void RnaiParams::validate() const {
  for (double r : {transcription, polymerization, cleavage, degradation, decay_to_nothing,
                   decay_to_aberrant, dicer_inhibition, risc_inhibition}) {
    if (!std::isfinite(r) || r <= 0.0) throw std::invalid_argument("rates must be positive");
  }
  if (sirna_per_cleave < 1 || sirna_per_degrade < 1) {
    throw std::invalid_argument("siRNA yields must be >= 1");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return v;
}

Solution one(const char* name) { return Solution{{name, 1}}; }

void populate(Solution& init, const RnaiParams& p) {
  init.add(rnai::kDsRna, p.dsRNA);
  init.add(rnai::kMRna, p.mRNA);
  init.add(rnai::kMRnaAb, p.mRNAab);
  init.add(rnai::kSiRna, p.siRNA);
  init.add(rnai::kDicer, p.Dicer);
  init.add(rnai::kRisc, p.RISC);
  init.add(rnai::kRdRp, p.RdRp);
  init.add(rnai::kGene, p.Gene);
}

}  // namespace

void set_rnai_param(RnaiParams& p, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  auto rate = [&](double& field) { field = parse_number<double>(key, value); };
  auto count = [&](Count& field) { field = parse_number<Count>(key, value); };
  if (key == "transcription") rate(p.transcription);
  else if (key == "polymerization") rate(p.polymerization);
  else if (key == "cleavage") rate(p.cleavage);
  else if (key == "degradation") rate(p.degradation);
  else if (key == "decay_to_nothing") rate(p.decay_to_nothing);
  else if (key == "decay_to_aberrant") rate(p.decay_to_aberrant);
  else if (key == "dicer_inhibition") rate(p.dicer_inhibition);
  else if (key == "risc_inhibition") rate(p.risc_inhibition);
  else if (key == "dsRNA") count(p.dsRNA);
  else if (key == "mRNA") count(p.mRNA);
  else if (key == "mRNAab") count(p.mRNAab);
  else if (key == "siRNA") count(p.siRNA);
  else if (key == "Dicer") count(p.Dicer);
  else if (key == "RISC") count(p.RISC);
  else if (key == "RdRp") count(p.RdRp);
  else if (key == "Gene") count(p.Gene);
  else if (key == "sirna_per_cleave") count(p.sirna_per_cleave);
  else if (key == "sirna_per_degrade") count(p.sirna_per_degrade);
  else throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
}

RnaiParams parse_rnai_params(std::string_view text) {
  RnaiParams p;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected key=value, got '" + std::string(sv) + "'");
    }
    set_rnai_param(p, sv.substr(0, eq), sv.substr(eq + 1));
  }
  p.validate();
  return p;
}

CgfProgram build_rnai(const RnaiParams& p) {
  p.validate();
  CgfProgram prog;
  Environment& env = prog.env;
  Solution gene_out = one(rnai::kMRna);
  gene_out.add(rnai::kGene);
  env[rnai::kGene] = Molecule{{Choice{Prefix::tau(Rate{p.transcription}), gene_out}}};

  // Polymerization uses up the RdRp along with the aberrant template.
  const Rate poly{p.polymerization};
  env[rnai::kRdRp] = Molecule{{Choice{Prefix::output("p", poly), Solution{}}}};
  env[rnai::kMRnaAb] = Molecule{{Choice{Prefix::input("p", poly), one(rnai::kDsRna)}}};

  const Rate cleave{p.cleavage};
  env[rnai::kDicer] = Molecule{{Choice{Prefix::output("c", cleave), Solution{}}}};
  env[rnai::kDsRna] =
      Molecule{{Choice{Prefix::input("c", cleave), Solution{{rnai::kSiRna, p.sirna_per_cleave}}}}};

  const Rate degrade{p.degradation};
  env[rnai::kRisc] = Molecule{{Choice{Prefix::output("g", degrade), one(rnai::kRisc)}}};
  env[rnai::kMRna] = Molecule{{Choice{Prefix::input("g", degrade), one(rnai::kDeg)}}};
  env[rnai::kDeg] = Molecule{{
      Choice{Prefix::tau(Rate{p.decay_to_nothing}), Solution{}},
      Choice{Prefix::tau(Rate{p.decay_to_aberrant}), one(rnai::kMRnaAb)},
  }};
  env[rnai::kSiRna] = Molecule{};
  populate(prog.init, p);
  return prog;
}

CgfProgram build_recursive_rnai(const RnaiParams& p) {
  CgfProgram prog = build_rnai(p);
  Environment& env = prog.env;
  const Rate d{p.dicer_inhibition};
  const Rate r{p.risc_inhibition};
  env[rnai::kSiRna] = Molecule{{
      Choice{Prefix::output("d", d), Solution{}},
      Choice{Prefix::output("r", r), Solution{}},
  }};
  // Each Dicer / RISC copy either acts or is destroyed with its inhibitor.
  auto& dicer = env[rnai::kDicer].choices;
  dicer.insert(dicer.begin(), Choice{Prefix::input("d", d), Solution{}});
  auto& risc = env[rnai::kRisc].choices;
  risc.insert(risc.begin(), Choice{Prefix::input("r", r), Solution{}});

  const Solution yield{{rnai::kSiRna, p.sirna_per_degrade}};
  Solution aberrant = yield;
  aberrant.add(rnai::kMRnaAb);
  env[rnai::kDeg] = Molecule{{
      Choice{Prefix::tau(Rate{p.decay_to_nothing}), yield},
      Choice{Prefix::tau(Rate{p.decay_to_aberrant}), aberrant},
  }};
  return prog;
}

}  // namespace rnaicgf
