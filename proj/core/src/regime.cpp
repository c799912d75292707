#include <algorithm>
#include <cmath>
#include <numeric>

#include "polybarrier/barrier.hpp"
#include "polybarrier/error.hpp"

namespace polybarrier {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::vanishing: return "vanishing";
    case Regime::non_vanishing: return "non-vanishing";
    case Regime::indeterminate: break;
  }
  return "indeterminate";
}

RegimeResult regime_classification(const Schedule& sched, const RegimeParams& params) {
  const auto& rows = sched.rows();
  if (rows.size() < 4) throw DomainError("regime_classification: schedule needs at least 4 rows");
  const double s = params.mode == RegimeMode::gevrey ? params.s : 1.0;
  if (!(s >= 1.0)) throw DomainError("regime_classification: s must be >= 1");
  if (!(params.A > 0.0) || !(params.c > 0.0))
    throw DomainError("regime_classification: A and c must be > 0");

  RegimeResult out;
  for (const auto& r : rows) {
    if (r.m < 1) throw DomainError("regime_classification: rows need m >= 1");
    const double scale = std::pow(static_cast<double>(r.m) / r.L, 1.0 / s);
    out.x.push_back(std::log(r.B) / scale);
    out.residual.push_back(params.A * r.B * std::exp(-params.c * scale));
  }

  // Only growth matters: x_m <= 0 already means B_m does not grow.
  std::vector<double> xp(out.x.size());
  std::transform(out.x.begin(), out.x.end(), xp.begin(), [](double v) { return std::max(v, 0.0); });
  const std::size_t q = std::max<std::size_t>(1, xp.size() / 4);
  const double first = std::accumulate(xp.begin(), xp.begin() + q, 0.0) / q;
  const double last = std::accumulate(xp.end() - q, xp.end(), 0.0) / q;
  const double last_min = *std::min_element(xp.end() - q, xp.end());
  out.statistic = first > 0.0 ? last / first : 0.0;

  bool decreasing = true, non_decreasing = true;
  for (std::size_t i = 1; i < out.residual.size(); ++i) {
    decreasing = decreasing && out.residual[i] < out.residual[i - 1];
    non_decreasing = non_decreasing && out.residual[i] >= out.residual[i - 1];
  }
  if (last <= 0.5 * first && decreasing)
    out.regime = Regime::vanishing;
  else if (last_min > 0.0 && last > 0.5 * first && non_decreasing)
    out.regime = Regime::non_vanishing;
  return out;
}

}  // namespace polybarrier
