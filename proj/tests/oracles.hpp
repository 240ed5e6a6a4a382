#pragma once

// Test-only oracles. Nothing here calls into the code paths it is used to check.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "rnaicgf/cgf.hpp"
#include "rnaicgf/rm.hpp"

namespace oracle {

using rnaicgf::Count;

/// Key of a reaction instance class: (first species, first choice, second
/// species, second choice, channel); decays leave the second half empty.
using ReactionKey = std::tuple<std::string, std::size_t, std::string, std::size_t, std::string>;

/// Expands the solution into individual molecule copies and sums the rate of
/// every decay and every ordered (?a copy, distinct !a copy) pairing.
inline std::map<ReactionKey, double> brute_force_propensities(const rnaicgf::Solution& solution,
                                                              const rnaicgf::Environment& env) {
  std::vector<std::string> copies;
  for (const auto& [name, n] : solution.counts()) {
    for (Count k = 0; k < n; ++k) copies.push_back(name);
  }
  std::map<ReactionKey, double> out;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto& mi = env.at(copies[i]);
    for (std::size_t ci = 0; ci < mi.choices.size(); ++ci) {
      const auto& pi = mi.choices[ci].prefix;
      if (pi.kind == rnaicgf::PrefixKind::Tau) {
        out[{copies[i], ci, "", 0, ""}] += pi.rate.value();
        continue;
      }
      if (pi.kind != rnaicgf::PrefixKind::In) continue;
      for (std::size_t j = 0; j < copies.size(); ++j) {
        if (j == i) continue;
        const auto& mj = env.at(copies[j]);
        for (std::size_t cj = 0; cj < mj.choices.size(); ++cj) {
          const auto& pj = mj.choices[cj].prefix;
          if (pj.kind == rnaicgf::PrefixKind::Out && pj.channel == pi.channel) {
            out[{copies[i], ci, copies[j], cj, pi.channel}] += pi.rate.value();
          }
        }
      }
    }
  }
  return out;
}

/// Exact rational arithmetic for small linear systems.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
  friend Fraction operator/(Fraction a, Fraction b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Fraction a, Fraction b) { return a.num == b.num && a.den == b.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Gaussian elimination on (I - P) x = b over the rationals.
inline std::vector<Fraction> solve(std::vector<std::vector<Fraction>> a, std::vector<Fraction> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col].num == 0) ++pivot;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].num == 0) continue;
      Fraction f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  std::vector<Fraction> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Correct-step probability of the siRNA-inhibited decrement, written out by
/// hand as a two-transient-state absorbing chain with unit rates:
///   I --(l)--> correct sink,  I --(1)--> B,  B --(h)--> I,  B --(1)--> jump sink.
/// For l = 0 the jump sink is the correct outcome.
inline Fraction gadget_correct_probability(std::int64_t l, std::int64_t h) {
  // Unknowns x = (p_I, p_B).
  Fraction exit_i = l + 1, exit_b = h + 1;
  std::vector<std::vector<Fraction>> a = {{Fraction(1), Fraction(-1) / exit_i},
                                          {Fraction(-h) / exit_b, Fraction(1)}};
  std::vector<Fraction> b = {l > 0 ? Fraction(l) / exit_i : Fraction(0),
                             l > 0 ? Fraction(0) : Fraction(1) / exit_b};
  return solve(a, b)[0];
}

/// Random CGF program over a few species and channels, every name defined.
inline rnaicgf::CgfProgram random_program(std::mt19937_64& rng, bool allow_rates = true) {
  using namespace rnaicgf;
  std::uniform_int_distribution<int> n_species(1, 5), n_choices(0, 3), kind(0, 2), small(0, 3);
  std::uniform_int_distribution<int> n_channels(1, 3);
  const int ns = n_species(rng);
  const int nc = n_channels(rng);
  std::vector<std::string> names;
  for (int i = 0; i < ns; ++i) names.push_back("S" + std::to_string(i) + (i % 2 ? "x" : ""));
  std::vector<double> rates;
  const double rate_pool[] = {1.0, 0.5, 2.0, 3.25, 1e-3, 10.0};
  std::uniform_int_distribution<int> pick_rate(0, 5);
  for (int c = 0; c < nc; ++c) rates.push_back(allow_rates ? rate_pool[pick_rate(rng)] : 1.0);
  std::uniform_int_distribution<int> pick_name(0, ns - 1), pick_channel(0, nc - 1);
  auto random_solution = [&] {
    Solution s;
    int items = small(rng);
    for (int k = 0; k < items; ++k) s.add(names[pick_name(rng)], 1 + small(rng) % 3);
    return s;
  };
  CgfProgram p;
  for (const auto& name : names) {
    Molecule m;
    int choices = n_choices(rng);
    for (int k = 0; k < choices; ++k) {
      int which = kind(rng);
      int ch = pick_channel(rng);
      Prefix prefix = which == 0   ? Prefix::tau(Rate{allow_rates ? rate_pool[pick_rate(rng)] : 1.0})
                      : which == 1 ? Prefix::input("c" + std::to_string(ch), Rate{rates[ch]})
                                   : Prefix::output("c" + std::to_string(ch), Rate{rates[ch]});
      m.choices.push_back(Choice{prefix, random_solution()});
    }
    p.env[name] = m;
  }
  p.init = random_solution();
  return p;
}

/// Random two-register program of up to `max_len` instructions; last is HALT.
inline rnaicgf::RmProgram random_rm(std::mt19937_64& rng, std::size_t max_len) {
  using namespace rnaicgf;
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::size_t n = len(rng);
  std::uniform_int_distribution<int> kind(0, 5), reg(1, 2);
  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  std::vector<RmInstruction> ins;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    int k = kind(rng);
    Register r = reg(rng) == 1 ? Register::R1 : Register::R2;
    if (k <= 1) ins.push_back(Inc{r});
    else if (k <= 4) ins.push_back(DecJump{r, target(rng)});
    else ins.push_back(Halt{});
  }
  ins.push_back(Halt{});
  return RmProgram(std::move(ins));
}

/// Expected reactions of the RNAi networks, one row per reaction kind, keyed
/// by reaction id. Written from the reaction tables, not from the builder.
struct StoichiometryRow {
  std::string id;
  std::string label;
  rnaicgf::Solution consumed;
  rnaicgf::Solution produced;
};

inline std::vector<StoichiometryRow> rnai_rows(bool recursive, Count cleave_yield,
                                               Count degrade_yield) {
  using rnaicgf::Solution;
  Solution k_si{{"siRNA", cleave_yield}};
  std::vector<StoichiometryRow> rows = {
      {"Gene#0", "transcription: -> mRNA", {{"Gene", 1}}, {{"Gene", 1}, {"mRNA", 1}}},
      {"mRNAab#0?p!RdRp#0", "polymerization: RdRp + mRNAab -> dsRNA",
       {{"mRNAab", 1}, {"RdRp", 1}}, {{"dsRNA", 1}}},
  };
  if (!recursive) {
    rows.push_back({"dsRNA#0?c!Dicer#0", "cleavage: dsRNA + Dicer -> siRNA's",
                    {{"dsRNA", 1}, {"Dicer", 1}}, k_si});
    rows.push_back({"mRNA#0?g!RISC#0", "degradation: mRNA + RISC -> Deg + RISC",
                    {{"mRNA", 1}, {"RISC", 1}}, {{"Deg", 1}, {"RISC", 1}}});
    rows.push_back({"Deg#0", "Deg -> 0", {{"Deg", 1}}, {}});
    rows.push_back({"Deg#1", "Deg -> mRNAab", {{"Deg", 1}}, {{"mRNAab", 1}}});
    return rows;
  }
  Solution d_si{{"siRNA", degrade_yield}};
  Solution ab_si = d_si;
  ab_si.add("mRNAab");
  rows.push_back({"dsRNA#0?c!Dicer#1", "cleavage: dsRNA + Dicer -> siRNA's",
                  {{"dsRNA", 1}, {"Dicer", 1}}, k_si});
  rows.push_back({"mRNA#0?g!RISC#1", "degradation: mRNA + RISC -> Deg + RISC",
                  {{"mRNA", 1}, {"RISC", 1}}, {{"Deg", 1}, {"RISC", 1}}});
  rows.push_back({"Deg#0", "Deg -> siRNA's", {{"Deg", 1}}, d_si});
  rows.push_back({"Deg#1", "Deg -> mRNAab + siRNA's", {{"Deg", 1}}, ab_si});
  rows.push_back({"Dicer#0?d!siRNA#0", "degradation of Dicer: siRNA + Dicer -> 0",
                  {{"Dicer", 1}, {"siRNA", 1}}, {}});
  rows.push_back({"RISC#0?r!siRNA#1", "degradation of RISC: siRNA + RISC -> 0",
                  {{"RISC", 1}, {"siRNA", 1}}, {}});
  return rows;
}

}  // namespace oracle
