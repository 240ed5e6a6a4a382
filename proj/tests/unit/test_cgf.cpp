#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "rnaicgf/cgf.hpp"

using namespace rnaicgf;

namespace {

std::map<oracle::ReactionKey, double> keyed(const std::vector<Reaction>& rs) {
  std::map<oracle::ReactionKey, double> out;
  for (const auto& r : rs) {
    if (const auto* d = std::get_if<Decay>(&r.kind)) {
      out[{d->species, d->choice, "", 0, ""}] += r.propensity;
    } else {
      const auto& c = std::get<Collision>(r.kind);
      out[{c.input_species, c.input_choice, c.output_species, c.output_choice, c.channel}] +=
          r.propensity;
    }
  }
  return out;
}

void expect_same(const std::map<oracle::ReactionKey, double>& a,
                 const std::map<oracle::ReactionKey, double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    ASSERT_NE(it, b.end());
    EXPECT_NEAR(v, it->second, 1e-12 * std::max(1.0, v));
  }
}

// All solutions over `names` with total size <= max_size.
void for_each_solution(const std::vector<std::string>& names, Count max_size,
                       const std::function<void(const Solution&)>& fn, std::size_t i = 0,
                       Solution acc = {}) {
  if (i == names.size()) {
    fn(acc);
    return;
  }
  for (Count n = 0; acc.size() + n <= max_size; ++n) {
    Solution next = acc;
    next.add(names[i], n);
    for_each_solution(names, max_size, fn, i + 1, next);
  }
}

CgfErrorKind kind_of(std::string_view text) {
  try {
    parse_cgf(text);
  } catch (const CgfError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return CgfErrorKind::Syntax;
}

}  // namespace

TEST(Cgf, ParsesDecayAndCollision) {
  auto p = parse_cgf("P = ?a@2.5.(Q)\nQ = !a@2.5.0 + tau.(2*P | Q)\ninit 2*P | Q\n");
  ASSERT_EQ(p.env.size(), 2u);
  const auto& q = p.env.at("Q");
  ASSERT_EQ(q.choices.size(), 2u);
  EXPECT_EQ(q.choices[0].prefix.kind, PrefixKind::Out);
  EXPECT_DOUBLE_EQ(q.choices[0].prefix.rate.value(), 2.5);
  EXPECT_TRUE(q.choices[0].continuation.empty());
  EXPECT_EQ(q.choices[1].continuation.count("P"), 2u);
  EXPECT_EQ(p.init, (Solution{{"P", 2}, {"Q", 1}}));
}

TEST(Cgf, DefaultRateIsOne) {
  auto p = parse_cgf("X = tau.0\ninit X");
  EXPECT_DOUBLE_EQ(p.env.at("X").choices[0].prefix.rate.value(), 1.0);
}

TEST(Cgf, FixSugarDefinesReagent) {
  auto p = parse_cgf("A = tau.(fix L.[tau.(L)])\ninit A");
  ASSERT_TRUE(p.env.contains("L"));
  EXPECT_EQ(p.env.at("A").choices[0].continuation.count("L"), 1u);
}

TEST(Cgf, RateRejectsNonPositive) {
  EXPECT_THROW(Rate{0.0}, CgfError);
  EXPECT_THROW(Rate{-1.0}, CgfError);
  EXPECT_THROW(Rate{std::numeric_limits<double>::infinity()}, CgfError);
}

TEST(Cgf, ErrorClassesWithPositions) {
  EXPECT_EQ(kind_of("X = tau@0.(X)\ninit X"), CgfErrorKind::InvalidRate);
  EXPECT_EQ(kind_of("X = tau.(tau.X)\ninit X"), CgfErrorKind::NestedChoice);
  EXPECT_EQ(kind_of("X = tau.(Y)\ninit X"), CgfErrorKind::UndefinedSpecies);
  EXPECT_EQ(kind_of("X = 0\nX = 0\ninit X"), CgfErrorKind::DuplicateDefinition);
  EXPECT_EQ(kind_of("X = ?a@1.0.0\nY = !a@2.0.0\ninit X"), CgfErrorKind::InconsistentChannelRate);
  EXPECT_EQ(kind_of("X = tau.(X\ninit X"), CgfErrorKind::Syntax);

  try {
    parse_cgf("X = tau.0\nY = tau.(X | Z)\ninit X");
    FAIL();
  } catch (const CgfError& e) {
    EXPECT_EQ(e.kind(), CgfErrorKind::UndefinedSpecies);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 14u);
  }
  try {
    parse_cgf("X = tau.0\n  X = 0\ninit X");
    FAIL();
  } catch (const CgfError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Cgf, PrintIsSortedAndRoundTrips) {
  auto p = parse_cgf("Z = tau@3.0.(A)\nA = !c.0\ninit Z | 2*A");
  std::string text = print_cgf(p);
  EXPECT_LT(text.find("A ="), text.find("Z ="));
  EXPECT_EQ(parse_cgf(text), p);
  EXPECT_EQ(print_cgf(parse_cgf(text)), text);
}

TEST(Cgf, RoundTripOnGeneratedPrograms) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    CgfProgram p = oracle::random_program(rng);
    const std::string once = print_cgf(p);
    CgfProgram back = parse_cgf(once);
    EXPECT_EQ(back, p) << once;
    EXPECT_EQ(print_cgf(back), once);
  }
}

TEST(Cgf, SolutionArithmetic) {
  Solution s{{"A", 2}};
  s.add("B");
  EXPECT_EQ(s.size(), 3u);
  s.remove("A", 2);
  EXPECT_EQ(s.count("A"), 0u);
  EXPECT_FALSE(s.counts().contains("A"));
  EXPECT_THROW(s.remove("A"), ReactionNotEnabled);
  EXPECT_EQ(species_count(s, "B"), 1u);
}

TEST(Cgf, DecayPropensityScalesWithCount) {
  auto p = parse_cgf("X = tau.0\ninit 3*X");
  auto rs = enumerate_reactions(p.init, p.env);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_DOUBLE_EQ(rs[0].propensity, 3.0);
  EXPECT_EQ(rs[0].id(), "X#0");
  EXPECT_TRUE(apply_reaction(p.init, rs[0]) == (Solution{{"X", 2}}));
}

TEST(Cgf, HeterogeneousCollision) {
  auto p = parse_cgf("P = ?a@0.5.(Q)\nQ = !a@0.5.0\ninit 2*P | 3*Q");
  auto rs = enumerate_reactions(p.init, p.env);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_DOUBLE_EQ(rs[0].propensity, 0.5 * 6);
  Solution after = apply_reaction(p.init, rs[0]);
  EXPECT_EQ(after, (Solution{{"P", 1}, {"Q", 3}}));
}

TEST(Cgf, HomogeneousCollisionCountsOrderedPairs) {
  auto p = parse_cgf("Z = ?a@2.0.0 + !a@2.0.0\ninit 2*Z");
  auto rs = enumerate_reactions(p.init, p.env);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_DOUBLE_EQ(rs[0].propensity, 2.0 * 2);
  EXPECT_TRUE(apply_reaction(p.init, rs[0]).empty());
  // A single Z cannot collide with itself.
  EXPECT_TRUE(enumerate_reactions(Solution{{"Z", 1}}, p.env).empty());
}

TEST(Cgf, ApplyIsInvertible) {
  auto p = parse_cgf("P = ?a.(R)\nQ = !a.(S)\nR = 0\nS = 0\ninit P | Q");
  for (const auto& r : enumerate_reactions(p.init, p.env)) {
    Solution after = apply_reaction(p.init, r);
    after -= r.produced;
    after += r.consumed;
    EXPECT_EQ(after, p.init);
  }
  Reaction bogus = enumerate_reactions(p.init, p.env).front();
  EXPECT_THROW(apply_reaction(Solution{}, bogus), ReactionNotEnabled);
}

TEST(Cgf, TerminalMeansNoReactions) {
  auto p = parse_cgf("A = ?a.0\nB = 0\ninit A | B");
  EXPECT_TRUE(enumerate_reactions(p.init, p.env).empty());
  EXPECT_DOUBLE_EQ(ReactionTable(p.env).total_propensity(p.init), 0.0);
}

TEST(Cgf, EnumerationMatchesInstanceOracle) {
  std::mt19937_64 rng(11);
  std::size_t checked = 0;
  for (int i = 0; i < 40; ++i) {
    CgfProgram p = oracle::random_program(rng);
    std::vector<std::string> names;
    for (const auto& [n, m] : p.env) names.push_back(n);
    ReactionTable table(p.env);
    for_each_solution(names, names.size() > 3 ? 4 : 6, [&](const Solution& s) {
      auto rs = table.enumerate(s);
      expect_same(keyed(rs), oracle::brute_force_propensities(s, p.env));
      double total = 0.0;
      for (const auto& r : rs) {
        EXPECT_GT(r.propensity, 0.0);
        EXPECT_TRUE(s.contains(r.consumed));
        total += r.propensity;
      }
      EXPECT_NEAR(table.total_propensity(s), total, 1e-9 * std::max(1.0, total));
      ++checked;
    });
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Cgf, EnumerationOrderIsDeterministic) {
  auto p = parse_cgf("B = tau.0 + ?a.0\nA = tau.0 + !a.0\ninit A | B");
  auto rs = enumerate_reactions(p.init, p.env);
  std::vector<std::string> ids;
  for (const auto& r : rs) ids.push_back(r.id());
  EXPECT_EQ(ids, (std::vector<std::string>{"A#0", "B#0", "B#1?a!A#1"}));
}
