#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polybarrier/ellipse.hpp"
#include "polybarrier/jet.hpp"

namespace polybarrier {

/// Where an activation extends holomorphically off the real axis.
class Analyticity {
 public:
  enum class Kind { entire, strip, none };

  static Analyticity entire() { return Analyticity(Kind::entire, 0.0); }
  static Analyticity strip(double half_width);
  static Analyticity none() { return Analyticity(Kind::none, 0.0); }

  Kind kind() const { return kind_; }
  /// Half-width delta of the strip |Im z| < delta (strip kind only).
  double half_width() const { return delta_; }

  /// True if the closed dilated ellipse lies inside the domain of holomorphy.
  bool covers(const BernsteinEllipse& e) const;

 private:
  Analyticity(Kind k, double d) : kind_(k), delta_(d) {}
  Kind kind_;
  double delta_;
};

/// sup_t |phi^{(n)}(t)| <= C R^n (n!)^s for all n.
struct GevreyBound {
  double C;
  double R;
  double s;
};

struct ActivationSpec {
  std::string name;
  std::function<double(double)> real;
  std::function<Complex(Complex)> complex;
  std::function<double(double)> slope;        // phi'
  std::function<Jet(const Jet&)> taylor;      // Taylor-mode evaluation
  Analyticity analyticity = Analyticity::none();
  std::optional<GevreyBound> gevrey;
  std::optional<double> sup_real;             // sup over R of |phi|
};

using ActivationPtr = std::shared_ptr<const ActivationSpec>;

/// Catalog lookup: exp, sin, gaussian, tanh, logistic, runge, bump.
/// Throws DomainError for an unknown name.
ActivationPtr activation(std::string_view name);

std::vector<std::string> activation_names();

/// phi(t), phi'(t), ..., phi^{(n)}(t) via Taylor-mode evaluation.
std::vector<double> activation_derivatives(const ActivationSpec& act, double t, int n);

/// Fits (C, R) for fixed s from grid maxima of |phi^{(k)}|, k <= max_order:
/// C = max |phi|, R = max_k (D_k / (C (k!)^s))^{1/k}, both inflated by
/// `margin` to cover sampling error. Valid by construction for k <= max_order.
GevreyBound fit_gevrey_bound(const ActivationSpec& act, double s, int max_order,
                             std::span<const double> sample_points, double margin = 1.02);

}  // namespace polybarrier
