#include <cmath>
#include <sstream>

#include "rnaicgf/cgf.hpp"

namespace rnaicgf {

const char* to_string(CgfErrorKind kind) {
  switch (kind) {
    case CgfErrorKind::Syntax: return "syntax error";
    case CgfErrorKind::InvalidRate: return "invalid rate";
    case CgfErrorKind::NestedChoice: return "nested choice";
    case CgfErrorKind::UndefinedSpecies: return "undefined species";
    case CgfErrorKind::DuplicateDefinition: return "duplicate definition";
    case CgfErrorKind::InconsistentChannelRate: return "inconsistent channel rate";
  }
  return "cgf error";
}

namespace {

std::string located(CgfErrorKind kind, const std::string& message, std::size_t line,
                    std::size_t column) {
  std::ostringstream os;
  if (line > 0) os << line << ":" << column << ": ";
  os << to_string(kind) << ": " << message;
  return os.str();
}

}  // namespace

CgfError::CgfError(CgfErrorKind kind, const std::string& message, std::size_t line,
                   std::size_t column)
    : std::runtime_error(located(kind, message, line, column)),
      kind_(kind),
      line_(line),
      column_(column) {}

RmError::RmError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

StateSpaceOverflow::StateSpaceOverflow(std::size_t limit)
    : std::runtime_error("state space exceeds " + std::to_string(limit) + " states"),
      limit_(limit) {}

Rate::Rate(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw CgfError(CgfErrorKind::InvalidRate, "rate must be positive and finite");
  }
}

Prefix Prefix::tau(Rate rate) { return Prefix{PrefixKind::Tau, {}, rate}; }
Prefix Prefix::input(std::string channel, Rate rate) {
  return Prefix{PrefixKind::In, std::move(channel), rate};
}
Prefix Prefix::output(std::string channel, Rate rate) {
  return Prefix{PrefixKind::Out, std::move(channel), rate};
}

Solution::Solution(std::initializer_list<std::pair<const std::string, Count>> items) {
  for (const auto& [name, n] : items) add(name, n);
}

Count Solution::count(std::string_view name) const {
  auto it = counts_.find(name);
  return it == counts_.end() ? 0 : it->second;
}

Count Solution::size() const {
  Count total = 0;
  for (const auto& [name, n] : counts_) total += n;
  return total;
}

void Solution::add(std::string_view name, Count n) {
  if (n == 0) return;
  auto it = counts_.find(name);
  if (it == counts_.end()) {
    counts_.emplace(std::string(name), n);
  } else {
    it->second += n;
  }
}

void Solution::remove(std::string_view name, Count n) {
  if (n == 0) return;
  auto it = counts_.find(name);
  if (it == counts_.end() || it->second < n) {
    throw ReactionNotEnabled("cannot remove " + std::to_string(n) + " x " + std::string(name));
  }
  it->second -= n;
  if (it->second == 0) counts_.erase(it);
}

bool Solution::contains(const Solution& other) const {
  for (const auto& [name, n] : other.counts_) {
    if (count(name) < n) return false;
  }
  return true;
}

Solution& Solution::operator+=(const Solution& other) {
  for (const auto& [name, n] : other.counts_) add(name, n);
  return *this;
}

Solution& Solution::operator-=(const Solution& other) {
  if (!contains(other)) throw ReactionNotEnabled("multiset difference would go negative");
  for (const auto& [name, n] : other.counts_) remove(name, n);
  return *this;
}

Count species_count(const Solution& solution, std::string_view name) {
  return solution.count(name);
}

void CgfProgram::validate() const {
  std::map<std::string, double, std::less<>> channel_rates;
  auto check_defined = [&](const Solution& s, const std::string& where) {
    for (const auto& [name, n] : s) {
      if (!env.contains(name)) {
        throw CgfError(CgfErrorKind::UndefinedSpecies,
                       "species '" + name + "' used in " + where + " has no definition");
      }
    }
  };
  for (const auto& [name, molecule] : env) {
    for (const auto& choice : molecule.choices) {
      if (choice.prefix.kind != PrefixKind::Tau) {
        auto [it, inserted] =
            channel_rates.emplace(choice.prefix.channel, choice.prefix.rate.value());
        if (!inserted && it->second != choice.prefix.rate.value()) {
          throw CgfError(CgfErrorKind::InconsistentChannelRate,
                         "channel '" + choice.prefix.channel + "' carries more than one rate");
        }
      }
      check_defined(choice.continuation, "definition of '" + name + "'");
    }
  }
  check_defined(init, "init");
}

std::string Reaction::id() const {
  if (const auto* d = std::get_if<Decay>(&kind)) {
    return d->species + "#" + std::to_string(d->choice);
  }
  const auto& c = std::get<Collision>(kind);
  return c.input_species + "#" + std::to_string(c.input_choice) + "?" + c.channel + "!" +
         c.output_species + "#" + std::to_string(c.output_choice);
}

}  // namespace rnaicgf
