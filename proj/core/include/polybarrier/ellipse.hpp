#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace polybarrier {

using Complex = std::complex<double>;
using ComplexFunction = std::function<Complex(Complex)>;

/// The dilated Bernstein ellipse L * E_rho: image of |w| = rho under
/// w -> L (w + 1/w) / 2.
class BernsteinEllipse {
 public:
  explicit BernsteinEllipse(double rho, double dilation = 1.0);

  double rho() const { return rho_; }
  double dilation() const { return dilation_; }
  /// Semi-axes of the undilated ellipse E_rho.
  double semi_major() const { return 0.5 * (rho_ + 1.0 / rho_); }
  double semi_minor() const { return 0.5 * (rho_ - 1.0 / rho_); }

  /// True if z lies in the closed dilated ellipse, with relative slack.
  bool contains(Complex z, double slack = 1e-10) const;

 private:
  double rho_;
  double dilation_;
};

/// (w + 1/w) / 2.
Complex joukowski(Complex w);

/// L * joukowski(rho e^{i theta_j}), theta_j = 2 pi j / n_samples.
std::vector<Complex> ellipse_boundary(const BernsteinEllipse& e, int n_samples);

/// Sampled max |h| over the boundary of the dilated ellipse, which by the
/// maximum principle approaches sup over the closed ellipse from below.
/// Starts at n_samples, doubles until the relative change drops below 1e-8
/// (cap 2^16), then polishes the best samples by golden section in the angle.
/// Throws DomainError naming the boundary point if h is not finite there.
double ellipse_norm(const ComplexFunction& h, const BernsteinEllipse& e, int n_samples = 4096);

/// rho with semi_minor(rho) = safety * delta / L, i.e. b + sqrt(b^2 + 1).
double max_rho_for_strip(double delta, double L, double safety);

}  // namespace polybarrier
