// rnaicgf: parse, compile, simulate and verify CGF register-machine encodings.
//
// Exit codes: 0 success (all verdicts Consistent), 1 usage or input error,
// 2 at least one Violated verdict.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rnaicgf/analysis.hpp"
#include "rnaicgf/cgf.hpp"
#include "rnaicgf/compiler.hpp"
#include "rnaicgf/rm.hpp"
#include "rnaicgf/rnai_model.hpp"
#include "rnaicgf/ssa.hpp"

namespace {

using namespace rnaicgf;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolated = 2;

struct Common {
  std::string out;
  bool no_header = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + common.out + "'");
  out << text;
}

std::string header(const Common& common, const std::string& command) {
  if (common.no_header) return "";
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return "# rnaicgf " + command + " generated " + buf + "\n";
}

std::pair<Count, Count> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      Count v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected N or A..B, got '" + text + "'");
  }
}

std::vector<Count> parse_list(const std::string& text) {
  std::vector<Count> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "expected comma-separated integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("list", "empty list");
  return out;
}

struct StopFlags {
  std::string stop = "terminal";
  std::uint64_t max_steps = 100000;
  double max_time = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--stop", stop, "terminal | species:NAME=COUNT");
    cmd->add_option("--max-steps", max_steps, "step budget")->capture_default_str();
    cmd->add_option("--max-time", max_time, "simulated time budget (0 = none)");
  }

  StopCondition build() const {
    StopCondition c;
    c.max_steps = max_steps;
    if (max_time > 0.0) c.max_time = max_time;
    if (stop.rfind("species:", 0) == 0) {
      auto spec = stop.substr(8);
      auto eq = spec.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--stop", "expected species:NAME=COUNT");
      c.species_reached = SpeciesTarget{spec.substr(0, eq), std::stoull(spec.substr(eq + 1))};
    } else if (stop != "terminal") {
      throw CLI::ValidationError("--stop", "unknown stop condition '" + stop + "'");
    }
    return c;
  }
};

int worst_exit(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Violated) return kExitViolated;
  }
  return kExitOk;
}

std::string format_reports(const std::vector<VerificationReport>& reports,
                           const std::string& format, bool proposition) {
  if (format == "json") return reports_json(reports) + "\n";
  if (format == "table") return reports_table(reports);
  return proposition ? proposition_csv(reports) : termination_csv(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CGF engine and register-machine compiler with RNAi encodings"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "write output to this file instead of stdout");
    cmd->add_flag("--no-header", common.no_header, "omit the timestamped comment header");
  };

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "validate a CGF file and print it canonically");
  std::string cgf_path;
  parse_cmd->add_option("file", cgf_path, "CGF program")->required();
  add_common(parse_cmd);

  // compile
  auto* compile_cmd = app.add_subcommand("compile", "compile a register machine to CGF");
  std::string rm_path;
  std::string scheme = "recursive";
  Count h = 0, sirna_cleave = 1, sirna_degrade = 1;
  bool aberrant = false;
  std::uint64_t r1 = 0, r2 = 0;
  std::size_t pc = 0;
  compile_cmd->add_option("file", rm_path, "register machine program")->required();
  compile_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"naive", "recursive"}));
  compile_cmd->add_option("--h", h, "initial siRNA count (recursive)");
  compile_cmd->add_option("--sirna-per-cleave", sirna_cleave)->check(CLI::PositiveNumber);
  compile_cmd->add_option("--sirna-per-degrade", sirna_degrade)->check(CLI::PositiveNumber);
  compile_cmd->add_flag("--aberrant", aberrant, "include the aberrant-mRNA branch");
  compile_cmd->add_option("--r1", r1, "initial r1 (dsRNA)");
  compile_cmd->add_option("--r2", r2, "initial r2 (mRNA)");
  compile_cmd->add_option("--pc", pc, "initial instruction");
  add_common(compile_cmd);

  // run
  auto* run_cmd = app.add_subcommand("run", "simulate one trajectory");
  std::uint64_t seed = 0;
  std::string format;
  StopFlags stop;
  run_cmd->add_option("file", cgf_path, "CGF program")->required();
  run_cmd->add_option("--seed", seed)->capture_default_str();
  run_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  stop.add_to(run_cmd);
  add_common(run_cmd);

  // ensemble
  auto* ens_cmd = app.add_subcommand("ensemble", "simulate independent trials");
  std::uint64_t trials = 100;
  unsigned jobs = 1;
  ens_cmd->add_option("file", cgf_path, "CGF program")->required();
  ens_cmd->add_option("--seed", seed)->capture_default_str();
  ens_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  ens_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  ens_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"csv", "json"}));
  stop.add_to(ens_cmd);
  add_common(ens_cmd);

  // rnai-demo
  auto* demo_cmd = app.add_subcommand("rnai-demo", "simulate the RNAi reaction network");
  bool recursive = false, emit_cgf = false;
  std::string params_path;
  std::vector<std::string> sets;
  demo_cmd->add_flag("--recursive", recursive, "add siRNA inhibition of Dicer and RISC");
  demo_cmd->add_option("--params", params_path, "key=value parameter file");
  demo_cmd->add_option("--set", sets, "override a parameter, key=value");
  demo_cmd->add_flag("--emit-cgf", emit_cgf, "print the network instead of simulating");
  demo_cmd->add_option("--seed", seed)->capture_default_str();
  stop.add_to(demo_cmd);
  add_common(demo_cmd);

  // verify-prop
  auto* prop_cmd = app.add_subcommand("verify-prop", "check correct-step probabilities");
  std::string l_range = "0..5", h_range = "1..50";
  std::uint64_t mc_trials = 2000;
  prop_cmd->add_option("--l", l_range, "register values, N or A..B")->capture_default_str();
  prop_cmd->add_option("--h", h_range, "siRNA counts, N or A..B")->capture_default_str();
  prop_cmd->add_option("--trials", mc_trials, "Monte-Carlo trials per case (0 = none)")
      ->capture_default_str();
  prop_cmd->add_option("--seed", seed)->capture_default_str();
  prop_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  prop_cmd->add_option("--format", format, "csv | json | table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  add_common(prop_cmd);

  // verify-term
  auto* term_cmd = app.add_subcommand("verify-term", "check faithful probabilistic termination");
  std::string h_list = "10,100";
  std::uint64_t term_trials = 10000;
  term_cmd->add_option("--rm", rm_path, "register machine program")->required();
  term_cmd->add_option("--r1", r1);
  term_cmd->add_option("--r2", r2);
  term_cmd->add_option("--h", h_list, "comma-separated siRNA counts")->capture_default_str();
  term_cmd->add_option("--trials", term_trials)->check(CLI::PositiveNumber)->capture_default_str();
  term_cmd->add_option("--seed", seed)->capture_default_str();
  term_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  term_cmd->add_option("--format", format, "csv | json | table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  add_common(term_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) {
      CgfProgram p = parse_cgf(read_file(cgf_path));
      emit(common, header(common, "parse") + print_cgf(p));
    } else if (compile_cmd->parsed()) {
      RmProgram rm = parse_rm(read_file(rm_path));
      EncodingConfig cfg{scheme == "naive" ? Scheme::Naive : Scheme::Recursive, h, sirna_cleave,
                         sirna_degrade, aberrant};
      CompiledMachine m = compile(rm, cfg);
      emit(common, header(common, "compile") + print_cgf(with_initial(m, RmState{pc, r1, r2, false})));
    } else if (run_cmd->parsed()) {
      CgfProgram p = parse_cgf(read_file(cgf_path));
      Trajectory t = simulate(p, stop.build(), seed);
      if (format == "json") {
        emit(common, trajectory_summary_json(t) + "\n");
      } else {
        std::ostringstream os;
        os << header(common, "run");
        write_trajectory_csv(os, t, p.env);
        emit(common, os.str());
      }
    } else if (ens_cmd->parsed()) {
      CgfProgram p = parse_cgf(read_file(cgf_path));
      auto summaries = run_ensemble(p, stop.build(), trials, seed, EnsembleOptions{jobs, {}});
      if (format == "csv") {
        std::ostringstream os;
        os << header(common, "ensemble");
        write_summaries_csv(os, summaries, p.env);
        emit(common, os.str());
      } else {
        emit(common, summaries_json(summaries) + "\n");
      }
    } else if (demo_cmd->parsed()) {
      RnaiParams params = params_path.empty() ? RnaiParams{} : parse_rnai_params(read_file(params_path));
      for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value");
        set_rnai_param(params, kv.substr(0, eq), kv.substr(eq + 1));
      }
      CgfProgram p = recursive ? build_recursive_rnai(params) : build_rnai(params);
      if (emit_cgf) {
        emit(common, header(common, "rnai-demo") + print_cgf(p));
      } else {
        StopCondition c = stop.build();
        if (!c.max_time) c.max_time = 10.0;
        std::ostringstream os;
        os << header(common, "rnai-demo");
        write_trajectory_csv(os, simulate(p, c, seed), p.env);
        emit(common, os.str());
      }
    } else if (prop_cmd->parsed()) {
      auto [l_lo, l_hi] = parse_range(l_range);
      auto [h_lo, h_hi] = parse_range(h_range);
      PropositionOptions opts;
      opts.mc_trials = mc_trials;
      opts.seed = seed;
      opts.jobs = jobs;
      auto reports = verify_proposition(l_lo, l_hi, h_lo, h_hi, opts);
      std::string body = format_reports(reports, format, true);
      emit(common, (format == "json" ? "" : header(common, "verify-prop")) + body);
      return worst_exit(reports);
    } else if (term_cmd->parsed()) {
      RmProgram rm = parse_rm(read_file(rm_path));
      TerminationOptions opts;
      opts.trials = term_trials;
      opts.seed = seed;
      opts.jobs = jobs;
      auto reports = verify_termination(rm, RmState{0, r1, r2, false}, parse_list(h_list), opts);
      std::string body = format_reports(reports, format, false);
      emit(common, (format == "json" ? "" : header(common, "verify-term")) + body);
      return worst_exit(reports);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "rnaicgf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rnaicgf: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
