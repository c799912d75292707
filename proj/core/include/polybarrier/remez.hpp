#pragma once

#include <vector>

#include "polybarrier/chebyshev.hpp"
#include "polybarrier/error.hpp"

namespace polybarrier {

struct RemezOptions {
  double tol = 1e-10;        // relative gap (max residual - levelled) / max residual
  int max_iterations = 100;
  int oversampling = 32;     // dense search grid has oversampling * (m + 1) intervals
};

/// Best uniform approximant together with its equioscillation certificate.
struct EquioscillationSolution {
  ChebyshevSeries polynomial;
  double error = 0.0;           // max |f - p| found on the search grid (upper end)
  double levelled_error = 0.0;  // |E| of the final reference system (lower end)
  std::vector<double> alternation_points;
  std::vector<int> alternation_signs;
  int iterations = 0;
};

/// Thrown when the exchange fails to close the gap within the iteration cap.
class RemezError : public NumericalError {
 public:
  RemezError(const std::string& what, std::vector<double> reference, double gap)
      : NumericalError(what), reference_(std::move(reference)), gap_(gap) {}

  const std::vector<double>& reference() const { return reference_; }
  double gap() const { return gap_; }

 private:
  std::vector<double> reference_;
  double gap_;
};

/// Second Remez algorithm for E_m(f) = min_{deg p <= m} ||f - p||_inf on
/// [-1, 1]. The true E_m(f) lies in [levelled_error, error]. When the error
/// sits at the rounding floor of f the iteration stops there and `error`
/// remains a valid upper bound.
EquioscillationSolution remez_best_approx(const RealFunction& f, int m,
                                          const RemezOptions& options);

inline EquioscillationSolution remez_best_approx(const RealFunction& f, int m,
                                                 double tol = 1e-10) {
  RemezOptions o;
  o.tol = tol;
  return remez_best_approx(f, m, o);
}

struct DecayPoint {
  int m;
  double error;
};

/// Geometric rate rho_hat = exp(-slope) of the least-squares line through
/// (m, log E_m); clamped below at 1.
double decay_rate_fit(const std::vector<DecayPoint>& errors);

}  // namespace polybarrier
