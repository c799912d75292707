#include "polybarrier/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "polybarrier/error.hpp"

namespace polybarrier {

std::vector<double> l1_ball_projection(std::span<const double> v, double B) {
  if (!(B > 0.0)) throw DomainError("l1_ball_projection: B must be positive");
  std::vector<double> w(v.begin(), v.end());
  double l1 = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("l1_ball_projection: non-finite entry");
    l1 += std::abs(x);
  }
  if (l1 <= B) return w;

  std::vector<double> u(v.size());
  std::transform(v.begin(), v.end(), u.begin(), [](double x) { return std::abs(x); });
  std::sort(u.begin(), u.end(), std::greater<>());
  // Largest index k with u_k - (sum_{i<=k} u_i - B) / k > 0.
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double t = (cumsum - B) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  double out = 0.0;
  for (double& x : w) {
    x = std::copysign(std::max(std::abs(x) - theta, 0.0), x);
    out += std::abs(x);
  }
  if (out > B) {
    const double scale = B / out;
    for (double& x : w) x *= scale;
  }
  return w;
}

void project_to_l2_ball(std::span<double> v, double r) {
  double s = 0.0;
  for (double x : v) s += x * x;
  const double n = std::sqrt(s);
  if (n > r) {
    for (double& x : v) x *= r / n;
  }
}

}  // namespace polybarrier
