#include "polybarrier/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polybarrier/error.hpp"

namespace polybarrier {

ChebyshevSeries::ChebyshevSeries(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("ChebyshevSeries: empty coefficient list");
}

double ChebyshevSeries::operator()(double x) const { return eval_clenshaw(*this, x); }

double clenshaw(std::span<const double> c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  const double x2 = 2.0 * x;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double t = c[k] + x2 * b1 - b2;
    b2 = b1;
    b1 = t;
  }
  return c[0] + x * b1 - b2;
}

double eval_clenshaw(const ChebyshevSeries& p, double x) {
  if (!(std::abs(x) <= 1.0)) {
    std::ostringstream os;
    os << "eval_clenshaw: x = " << x << " lies outside [-1, 1]";
    throw DomainError(os.str());
  }
  return clenshaw(p.coeffs(), x);
}

void chebyshev_t_values(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

std::vector<double> chebyshev_points(int n) {
  if (n < 0) throw DomainError("chebyshev_points: negative n");
  if (n == 0) return {0.0};
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    // -cos(j pi / n) written as sin(...) keeps the grid exactly antisymmetric.
    x[static_cast<std::size_t>(j)] = std::sin(std::numbers::pi * (2 * j - n) / (2.0 * n));
  }
  return x;
}

ChebyshevSeries cheb_interpolate(const RealFunction& f, int n) {
  if (n < 0) throw DomainError("cheb_interpolate: negative degree");
  const auto x = chebyshev_points(n);
  std::vector<double> fx(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    fx[j] = f(x[j]);
    if (!std::isfinite(fx[j])) {
      std::ostringstream os;
      os << "cheb_interpolate: non-finite sample f(" << x[j] << ") = " << fx[j];
      throw DomainError(os.str());
    }
  }
  if (n == 0) return ChebyshevSeries({fx[0]});

  // Ascending nodes are x_j = -cos(j pi / n), so T_k(x_j) = (-1)^k cos(k j pi / n).
  std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      // Reduce k*j mod 2n before taking the cosine to keep the argument small.
      const int kj = (k * j) % (2 * n);
      s += w * fx[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * kj / n);
    }
    s *= 2.0 / n;
    if (k % 2 == 1) s = -s;
    if (k == 0 || k == n) s *= 0.5;
    a[static_cast<std::size_t>(k)] = s;
  }
  return ChebyshevSeries(std::move(a));
}

}  // namespace polybarrier
