#include <stdexcept>

#include "rnaicgf/analysis.hpp"

namespace rnaicgf {

double jump_probability_closed_form(Count l, Count h) {
  if (l == 0) return 1.0;
  const double lp1 = static_cast<double>(l) + 1.0;
  const double hp1 = static_cast<double>(h) + 1.0;
  const double success = static_cast<double>(l) / lp1;
  const double retry = static_cast<double>(h) / (lp1 * hp1);
  return success / (1.0 - retry);
}

double proposition_bound(Count l, Count h) {
  if (l < 1 || h < 1) throw std::invalid_argument("proposition_bound needs l >= 1 and h >= 1");
  return 1.0 - 1.0 / static_cast<double>(h);
}

TerminationBound termination_bound(Count h, Count d) {
  if (h < 1) throw std::invalid_argument("termination_bound needs h >= 1");
  double sum = 0.0;
  double product = 1.0;
  for (Count k = h; k <= h + d; ++k) {
    const double inv = 1.0 / static_cast<double>(k);
    sum += inv;
    product *= 1.0 - inv;
  }
  return TerminationBound{1.0 - sum, product};
}

double yield_chain_bound(Count h, const std::vector<Count>& yields) {
  if (h < 1) throw std::invalid_argument("yield_chain_bound needs h >= 1");
  Count level = h;
  double product = 1.0 - 1.0 / static_cast<double>(level);
  for (Count y : yields) {
    level += y;
    product *= 1.0 - 1.0 / static_cast<double>(level);
  }
  return product;
}

}  // namespace rnaicgf
