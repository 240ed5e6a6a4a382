#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include <Eigen/Dense>

#include "rnaicgf/analysis.hpp"

namespace rnaicgf {

double StateSpace::exit_rate(std::size_t s) const {
  double total = 0.0;
  for (const auto& t : transitions[s]) total += t.rate;
  return total;
}

StateSpace enumerate_state_space(const CgfProgram& program, std::size_t max_states) {
  if (max_states < 1) throw std::invalid_argument("max_states must be >= 1");
  const ReactionTable table(program.env);
  StateSpace space;
  std::map<Solution, std::size_t> index;
  std::deque<std::size_t> frontier;
  auto intern = [&](const Solution& s) {
    auto [it, inserted] = index.emplace(s, space.states.size());
    if (inserted) {
      if (space.states.size() >= max_states) throw StateSpaceOverflow(max_states);
      space.states.push_back(s);
      space.transitions.emplace_back();
      space.absorbing.push_back(false);
      frontier.push_back(it->second);
    }
    return it->second;
  };
  space.initial = intern(program.init);
  while (!frontier.empty()) {
    const std::size_t s = frontier.front();
    frontier.pop_front();
    const auto reactions = table.enumerate(space.states[s]);
    if (reactions.empty()) {
      space.absorbing[s] = true;
      continue;
    }
    std::map<std::size_t, double> out;
    for (const auto& r : reactions) {
      // copy: intern may reallocate space.states
      Solution next = apply_reaction(space.states[s], r);
      out[intern(next)] += r.propensity;
    }
    for (const auto& [target, rate] : out) space.transitions[s].push_back({target, rate});
  }
  return space;
}

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr double kIterativeTolerance = 1e-12;
constexpr std::size_t kDirectLimit = 2000;
constexpr std::size_t kMaxSweeps = 1000000;

void require_absorption_reachable(const StateSpace& space) {
  const std::size_t n = space.states.size();
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& t : space.transitions[s]) reverse[t.target].push_back(s);
  }
  std::vector<bool> reaches(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (space.absorbing[s]) {
      reaches[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t p : reverse[s]) {
      if (!reaches[p]) {
        reaches[p] = true;
        queue.push_back(p);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!reaches[s]) {
      throw SolveError("state " + std::to_string(s) + " cannot reach an absorbing state");
    }
  }
}

}  // namespace

AbsorptionResult absorption_probabilities(const StateSpace& space,
                                        const std::function<bool(const Solution&)>& target) {
  require_absorption_reachable(space);
  const std::size_t n = space.states.size();
  if (space.absorbing[space.initial]) {
    return {target(space.states[space.initial]) ? 1.0 : 0.0, 0.0, false};
  }
  // Transient states get dense indices; b collects one-step mass into target sinks.
  std::vector<std::ptrdiff_t> local(n, -1);
  std::vector<std::size_t> transient;
  for (std::size_t s = 0; s < n; ++s) {
    if (!space.absorbing[s]) {
      local[s] = static_cast<std::ptrdiff_t>(transient.size());
      transient.push_back(s);
    }
  }
  std::vector<bool> hit(n, false);
  for (std::size_t s = 0; s < n; ++s) hit[s] = space.absorbing[s] && target(space.states[s]);

  const std::size_t m = transient.size();
  struct Entry {
    std::size_t col;
    double prob;
  };
  std::vector<std::vector<Entry>> rows(m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t s = transient[i];
    const double total = space.exit_rate(s);
    for (const auto& t : space.transitions[s]) {
      const double p = t.rate / total;
      if (local[t.target] >= 0) {
        rows[i].push_back({static_cast<std::size_t>(local[t.target]), p});
      } else if (hit[t.target]) {
        b[static_cast<Eigen::Index>(i)] += p;
      }
    }
  }
  auto residual_of = [&](const Eigen::VectorXd& x) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double r = x[static_cast<Eigen::Index>(i)] - b[static_cast<Eigen::Index>(i)];
      for (const auto& e : rows[i]) r -= e.prob * x[static_cast<Eigen::Index>(e.col)];
      worst = std::max(worst, std::abs(r));
    }
    return worst;
  };

  Eigen::VectorXd x;
  bool iterative = m >= kDirectLimit;
  if (!iterative) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& e : rows[i]) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e.col)) -= e.prob;
      }
    }
    x = a.partialPivLu().solve(b);
  } else {
    x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    std::size_t sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      for (std::size_t i = 0; i < m; ++i) {
        double diag = 1.0;
        double acc = b[static_cast<Eigen::Index>(i)];
        for (const auto& e : rows[i]) {
          if (e.col == i) {
            diag -= e.prob;
          } else {
            acc += e.prob * x[static_cast<Eigen::Index>(e.col)];
          }
        }
        x[static_cast<Eigen::Index>(i)] = acc / diag;
      }
      if (sweep % 16 == 15 && residual_of(x) < kIterativeTolerance) break;
    }
    if (sweep == kMaxSweeps) throw SolveError("Gauss-Seidel did not converge");
  }
  const double residual = residual_of(x);
  if (!std::isfinite(residual) || residual >= kResidualTolerance) {
    throw SolveError("absorption solve residual " + std::to_string(residual) +
                     " exceeds tolerance");
  }
  return {x[local[space.initial]], residual, iterative};
}

}  // namespace rnaicgf
