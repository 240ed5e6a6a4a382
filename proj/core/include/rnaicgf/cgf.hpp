#pragma once

// Chemical Ground Form: reagent definitions, solutions, and the two
// reaction rules (decay of a tau-prefixed choice, collision of matching
// ?a / !a offers) interpreted with mass-action propensities.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rnaicgf/error.hpp"

namespace rnaicgf {

using Count = std::uint64_t;

/// Strictly positive, finite reaction rate.
class Rate {
 public:
  constexpr Rate() = default;
  explicit Rate(double value);
  constexpr double value() const { return value_; }
  friend bool operator==(const Rate&, const Rate&) = default;

 private:
  double value_ = 1.0;
};

enum class PrefixKind { Tau, In, Out };

struct Prefix {
  PrefixKind kind = PrefixKind::Tau;
  std::string channel;  // empty for tau
  Rate rate;

  static Prefix tau(Rate rate = Rate{});
  static Prefix input(std::string channel, Rate rate = Rate{});
  static Prefix output(std::string channel, Rate rate = Rate{});

  friend bool operator==(const Prefix&, const Prefix&) = default;
};

/// Multiset of species names. Zero counts are never stored.
class Solution {
 public:
  using Map = std::map<std::string, Count, std::less<>>;

  Solution() = default;
  Solution(std::initializer_list<std::pair<const std::string, Count>> items);

  Count count(std::string_view name) const;
  Count size() const;
  bool empty() const { return counts_.empty(); }

  void add(std::string_view name, Count n = 1);
  /// Throws ReactionNotEnabled if fewer than n copies are present.
  void remove(std::string_view name, Count n = 1);

  bool contains(const Solution& other) const;
  Solution& operator+=(const Solution& other);
  Solution& operator-=(const Solution& other);

  const Map& counts() const { return counts_; }
  Map::const_iterator begin() const { return counts_.begin(); }
  Map::const_iterator end() const { return counts_.end(); }

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Map counts_;
};

Count species_count(const Solution& solution, std::string_view name);

struct Choice {
  Prefix prefix;
  Solution continuation;
  friend bool operator==(const Choice&, const Choice&) = default;
};

/// A choice of prefixed continuations; no choices is the inert molecule 0.
struct Molecule {
  std::vector<Choice> choices;
  bool inert() const { return choices.empty(); }
  friend bool operator==(const Molecule&, const Molecule&) = default;
};

using Environment = std::map<std::string, Molecule, std::less<>>;

struct CgfProgram {
  Environment env;
  Solution init;

  /// Checks definitions, channel-rate consistency and name resolution.
  /// Throws CgfError.
  void validate() const;

  friend bool operator==(const CgfProgram&, const CgfProgram&) = default;
};

CgfProgram parse_cgf(std::string_view text);
std::string print_cgf(const CgfProgram& program);

struct Decay {
  std::string species;
  std::size_t choice = 0;
  friend bool operator==(const Decay&, const Decay&) = default;
};

/// Collision between an input offer (?channel) and an output offer (!channel).
struct Collision {
  std::string input_species;
  std::size_t input_choice = 0;
  std::string output_species;
  std::size_t output_choice = 0;
  std::string channel;
  friend bool operator==(const Collision&, const Collision&) = default;
};

struct Reaction {
  std::variant<Decay, Collision> kind;
  double propensity = 0.0;
  Solution consumed;
  Solution produced;

  bool is_decay() const { return std::holds_alternative<Decay>(kind); }
  bool is_collision() const { return std::holds_alternative<Collision>(kind); }
  /// Stable textual identifier, e.g. "X#0" or "P#0?a!Q#1".
  std::string id() const;
};

/// Per-species lookup of tau choices and per-channel offer lists, built once
/// per environment so repeated enumeration avoids rescanning molecules.
class ReactionTable {
 public:
  explicit ReactionTable(const Environment& env);

  /// Enabled reactions in deterministic order (species, then choice index;
  /// collisions are keyed by their input side).
  std::vector<Reaction> enumerate(const Solution& solution) const;
  double total_propensity(const Solution& solution) const;

  const Environment& env() const { return env_; }

 private:
  struct Offer {
    std::string species;
    std::size_t choice;
  };
  struct ChannelOffers {
    double rate = 1.0;
    std::vector<Offer> outputs;  // sorted by species, then choice
  };

  Environment env_;
  std::map<std::string, ChannelOffers, std::less<>> channels_;
};

std::vector<Reaction> enumerate_reactions(const Solution& solution, const Environment& env);

/// solution - consumed + produced. Throws ReactionNotEnabled.
Solution apply_reaction(const Solution& solution, const Reaction& reaction);

}  // namespace rnaicgf
