#include <algorithm>

#include "rnaicgf/cgf.hpp"

namespace rnaicgf {

ReactionTable::ReactionTable(const Environment& env) : env_(env) {
  for (const auto& [name, molecule] : env_) {
    for (std::size_t i = 0; i < molecule.choices.size(); ++i) {
      const Prefix& p = molecule.choices[i].prefix;
      if (p.kind == PrefixKind::Tau) continue;
      auto& offers = channels_[p.channel];
      offers.rate = p.rate.value();
      if (p.kind == PrefixKind::Out) offers.outputs.push_back(Offer{name, i});
    }
  }
  // env_ iterates in name order, so outputs are already sorted.
}

std::vector<Reaction> ReactionTable::enumerate(const Solution& solution) const {
  std::vector<Reaction> out;
  for (const auto& [species, n] : solution) {
    auto it = env_.find(species);
    if (it == env_.end()) {
      throw CgfError(CgfErrorKind::UndefinedSpecies,
                     "species '" + species + "' in solution has no definition");
    }
    const Molecule& molecule = it->second;
    for (std::size_t i = 0; i < molecule.choices.size(); ++i) {
      const Choice& choice = molecule.choices[i];
      if (choice.prefix.kind == PrefixKind::Tau) {
        Reaction r;
        r.kind = Decay{species, i};
        r.propensity = choice.prefix.rate.value() * static_cast<double>(n);
        r.consumed.add(species);
        r.produced = choice.continuation;
        out.push_back(std::move(r));
      } else if (choice.prefix.kind == PrefixKind::In) {
        auto ch = channels_.find(choice.prefix.channel);
        if (ch == channels_.end()) continue;
        for (const Offer& partner : ch->second.outputs) {
          Count m = solution.count(partner.species);
          // ordered pairs of distinct molecule instances
          double pairs = partner.species == species
                             ? static_cast<double>(n) * static_cast<double>(n - 1)
                             : static_cast<double>(n) * static_cast<double>(m);
          if (pairs <= 0.0) continue;
          const Choice& out_choice = env_.at(partner.species).choices[partner.choice];
          Reaction r;
          r.kind = Collision{species, i, partner.species, partner.choice, choice.prefix.channel};
          r.propensity = ch->second.rate * pairs;
          r.consumed.add(species);
          r.consumed.add(partner.species);
          r.produced = choice.continuation;
          r.produced += out_choice.continuation;
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

double ReactionTable::total_propensity(const Solution& solution) const {
  double total = 0.0;
  for (const auto& r : enumerate(solution)) total += r.propensity;
  return total;
}

std::vector<Reaction> enumerate_reactions(const Solution& solution, const Environment& env) {
  return ReactionTable(env).enumerate(solution);
}

Solution apply_reaction(const Solution& solution, const Reaction& reaction) {
  if (!solution.contains(reaction.consumed)) {
    throw ReactionNotEnabled("reaction " + reaction.id() + " is not enabled");
  }
  Solution next = solution;
  next -= reaction.consumed;
  next += reaction.produced;
  return next;
}

}  // namespace rnaicgf
