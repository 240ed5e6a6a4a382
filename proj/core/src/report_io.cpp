#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rnaicgf/analysis.hpp"

namespace rnaicgf {
namespace {

std::string num(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << std::setprecision(17) << *v;
  return os.str();
}

std::string num(double v) { return num(std::optional<double>(v)); }

std::int64_t param(const VerificationReport& r, const std::string& key) {
  auto it = r.parameters.find(key);
  return it == r.parameters.end() ? -1 : it->second;
}

std::optional<double> extra(const VerificationReport& r, const std::string& key) {
  auto it = r.extras.find(key);
  if (it == r.extras.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string proposition_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "l,h,exact,closed_form,bound,mc_estimate,ci_lo,ci_hi,verdict\n";
  for (const auto& r : reports) {
    os << param(r, "l") << "," << param(r, "h") << "," << num(r.exact) << ","
       << num(r.closed_form) << "," << num(r.bound) << ",";
    if (r.monte_carlo) {
      os << num(r.monte_carlo->estimate) << "," << num(r.monte_carlo->ci.lo) << ","
         << num(r.monte_carlo->ci.hi);
    } else {
      os << ",,";
    }
    os << "," << to_string(r.verdict) << "\n";
  }
  return os.str();
}

std::string termination_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "h,d,trials,faithful,mc_estimate,ci_lo,ci_hi,bound,product_bound,sum_bound,verdict\n";
  for (const auto& r : reports) {
    os << param(r, "h") << "," << param(r, "d") << ",";
    if (r.monte_carlo) {
      os << r.monte_carlo->trials << "," << r.monte_carlo->successes << ","
         << num(r.monte_carlo->estimate) << "," << num(r.monte_carlo->ci.lo) << ","
         << num(r.monte_carlo->ci.hi);
    } else {
      os << ",,,,";
    }
    os << "," << num(r.bound) << "," << num(extra(r, "product_bound")) << ","
       << num(extra(r, "sum_bound")) << "," << to_string(r.verdict) << "\n";
  }
  return os.str();
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  using json = nlohmann::ordered_json;
  json arr = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : reports) {
    json j;
    j["quantity"] = r.quantity;
    j["parameters"] = r.parameters;
    j["exact"] = opt(r.exact);
    j["closed_form"] = opt(r.closed_form);
    j["bound"] = opt(r.bound);
    if (r.monte_carlo) {
      j["monte_carlo"] = {{"estimate", r.monte_carlo->estimate},
                          {"ci_lo", r.monte_carlo->ci.lo},
                          {"ci_hi", r.monte_carlo->ci.hi},
                          {"successes", r.monte_carlo->successes},
                          {"trials", r.monte_carlo->trials}};
    } else {
      j["monte_carlo"] = nullptr;
    }
    if (r.audit) {
      j["audit"] = {{"steps", r.audit->steps},
                    {"token_violations", r.audit->token_violations},
                    {"sirna_decreases", r.audit->sirna_decreases},
                    {"successful_decrements", r.audit->successful_decrements},
                    {"yield_mismatches", r.audit->yield_mismatches},
                    {"wrong_jumps", r.audit->wrong_jumps}};
    }
    j["extras"] = r.extras;
    j["verdict"] = to_string(r.verdict);
    j["notes"] = r.notes;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string reports_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "quantity" << std::setw(18) << "parameters"
     << std::setw(14) << "exact" << std::setw(14) << "closed_form" << std::setw(12) << "bound"
     << std::setw(26) << "monte_carlo [ci]" << "verdict\n";
  os << std::fixed << std::setprecision(6);
  auto cell = [&](const std::optional<double>& v, int width) {
    std::ostringstream c;
    c << std::fixed << std::setprecision(6);
    if (v) c << *v;
    else c << "-";
    os << std::setw(width) << c.str();
  };
  for (const auto& r : reports) {
    std::ostringstream p;
    for (const auto& [k, v] : r.parameters) p << k << "=" << v << " ";
    os << std::setw(28) << r.quantity << std::setw(18) << p.str();
    cell(r.exact, 14);
    cell(r.closed_form, 14);
    cell(r.bound, 12);
    if (r.monte_carlo) {
      std::ostringstream m;
      m << std::fixed << std::setprecision(4) << r.monte_carlo->estimate << " ["
        << r.monte_carlo->ci.lo << "," << r.monte_carlo->ci.hi << "]";
      os << std::setw(26) << m.str();
    } else {
      os << std::setw(26) << "-";
    }
    os << to_string(r.verdict) << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
  }
  return os.str();
}

}  // namespace rnaicgf
