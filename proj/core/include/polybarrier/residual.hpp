#pragma once

#include <variant>

#include "polybarrier/activation.hpp"

namespace polybarrier {

/// Constant in E_m(h) <= C(rho) M_rho(h) rho^{-m}: the Chebyshev-truncation
/// value 2 / (rho - 1).
double bernstein_constant(double rho);

/// Analytic mode with a fixed ellipse: M is M_{rho,L}(phi).
struct AnalyticEllipseParams {
  double rho;
  double M;
  double C_of_rho;

  void validate() const;
};

/// C(rho) B M rho^{-m}.
double analytic_residual(int m, double B, const AnalyticEllipseParams& rp);

/// Certified residual for an activation holomorphic on |Im z| < delta:
/// rho_m = max_rho_for_strip(delta, L, safety), M_m = sup |phi| on
/// L E_{rho_m}, result (2 / (rho_m - 1)) B M_m rho_m^{-m}. L below 1 is
/// raised to 1 (a smaller cap only shrinks the class).
double strip_residual(int m, double B, double L, double delta, double safety,
                      const ActivationSpec& act);

/// A B exp(-c (m / L)^{1/s}).
double gevrey_residual(int m, double B, double L, double s, double A, double c);

struct GevreyConstants {
  double A;
  double c;
};

/// Constructive (A, c) for Gevrey-(C, R, s) activations, from Jackson's
/// inequality E_m(h) <= (pi/2)^k ||h^{(k)}|| / (m (m-1) ... (m-k+1)) with the
/// network derivative bound C B (R L)^k (k!)^s and k ~ (m / (pi R L))^{1/s} / e:
///   A = C e^s,   c = (s / e) (pi R')^{-1/s},   R' = max(R, 2 / (e pi L)).
GevreyConstants gevrey_constants(const GevreyBound& g, double L);

// Per-row residual rules used by barrier reports.
struct EllipseMode {
  double rho = 2.0;
  double C_of_rho = 0.0;  // <= 0 selects bernstein_constant(rho)
};
struct StripMode {
  double safety = 0.5;
  double delta = 0.0;  // <= 0 uses the activation's strip; required for entire activations
};
struct GevreyMode {
  double A = 0.0;  // <= 0 selects gevrey_constants
  double c = 0.0;
};
using ResidualMode = std::variant<EllipseMode, StripMode, GevreyMode>;

/// Residual r_m for one schedule row. `argument_scale` multiplies L (the
/// sqrt(d) ridge range in dimension d).
double row_residual(const ResidualMode& mode, const ActivationSpec& act, int m, double B,
                    double L, double argument_scale = 1.0);

const char* mode_name(const ResidualMode& mode);

}  // namespace polybarrier
