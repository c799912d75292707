#pragma once

#include <functional>
#include <span>
#include <vector>

namespace polybarrier {

using RealFunction = std::function<double(double)>;

/// Polynomial a_0 T_0 + ... + a_n T_n in the Chebyshev basis on [-1, 1].
class ChebyshevSeries {
 public:
  ChebyshevSeries() : coeffs_{0.0} {}
  explicit ChebyshevSeries(std::vector<double> coeffs);

  std::span<const double> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Clenshaw evaluation; throws DomainError for |x| > 1.
  double operator()(double x) const;

 private:
  std::vector<double> coeffs_;
};

/// Clenshaw recurrence for sum_k c_k T_k(x) without a domain check.
double clenshaw(std::span<const double> c, double x);

/// Evaluates p at x in [-1, 1].
double eval_clenshaw(const ChebyshevSeries& p, double x);

/// T_0(x) .. T_n(x) by the three-term recurrence.
void chebyshev_t_values(double x, std::span<double> out);

/// The n+1 Chebyshev points of the second kind cos(j pi / n), ascending.
/// n = 0 yields the single point 0.
std::vector<double> chebyshev_points(int n);

/// Degree-n interpolant of f at the n+1 second-kind Chebyshev points.
ChebyshevSeries cheb_interpolate(const RealFunction& f, int n);

}  // namespace polybarrier
