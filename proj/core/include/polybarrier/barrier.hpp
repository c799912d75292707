#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polybarrier/fit.hpp"
#include "polybarrier/network.hpp"
#include "polybarrier/remez.hpp"
#include "polybarrier/residual.hpp"

namespace polybarrier {

struct ScheduleRow {
  int m;
  double B;
  double L;
};

/// Rows (m, B_m, L_m) with m strictly increasing and B_m, L_m > 0.
class Schedule {
 public:
  explicit Schedule(std::vector<ScheduleRow> rows);
  const std::vector<ScheduleRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<ScheduleRow> rows_;
};

struct BarrierRow {
  int m = 0;
  double E_m_f = 0.0;      // best polynomial error of the target
  double net_error = 0.0;  // L-inf error of the fitted network (upper bound on the infimum)
  double residual = 0.0;   // r_m
  double slack = 0.0;      // net_error - (E_m_f - residual)
  double sharpness_ratio = 0.0;  // net_error / E_m_f, NaN when E_m_f == 0
  // E_m of the fitted network itself (an upper bound in dimension d >= 2),
  // certified against the same residual up to the Remez rounding floor.
  double network_poly_error = 0.0;
  bool network_certified = true;
  NetworkParams network;
};

struct BarrierReport {
  std::string mode;
  std::vector<BarrierRow> rows;

  /// Barrier inequality: every slack >= -tol.
  bool passes(double tol = 1e-9) const;
  /// E_m(g_m) <= r_m for every fitted network.
  bool network_bounds_hold() const;

  /// Header `m,E_m_f,net_error,residual,slack,sharpness_ratio`, preceded by a
  /// `# seed=...` comment line and the given extra comment lines.
  std::string to_csv(std::uint64_t seed, const std::vector<std::string>& comments = {}) const;
};

struct NetworkBoundRow {
  int m;
  double E_m;
  double bound;
  double margin;  // bound - E_m
  bool pass;
};

/// E_m(net) via Remez against C(rho) (sum |lambda|) M rho^{-m} for each m.
std::vector<NetworkBoundRow> verify_network_poly_bound(const NetworkParams& net,
                                                       const AnalyticEllipseParams& rp,
                                                       const std::vector<int>& degrees);

struct BarrierOptions {
  /// Multiplies every residual; 0 is the deliberately broken negative control.
  double residual_scale = 1.0;
};

using TargetFunction = RealFunction;

BarrierReport verify_barrier(const RealFunction& f, ActivationPtr act, const Schedule& sched,
                             const ResidualMode& mode, const FitConfig& cfg,
                             const BarrierOptions& opts = {});

enum class Regime { vanishing, non_vanishing, indeterminate };
const char* regime_name(Regime r);

enum class RegimeMode { analytic, strip, gevrey };

struct RegimeParams {
  RegimeMode mode = RegimeMode::analytic;
  double s = 1.0;               // Gevrey index (gevrey mode)
  double A = 1.0;
  double c = 0.6931471805599453;  // log 2
};

struct RegimeResult {
  Regime regime = Regime::indeterminate;
  double statistic = 0.0;  // last-quartile mean of x_m over first-quartile mean
  std::vector<double> x;         // log B_m / (m / L_m)^{1/s}
  std::vector<double> residual;  // A B_m exp(-c (m / L_m)^{1/s})
};

/// Classifies the growth regime of a schedule (length >= 4).
RegimeResult regime_classification(const Schedule& sched, const RegimeParams& params);

struct BarronCheck {
  double bound;
  double measured;
  bool pass;
};

/// bound = (barron_weighted_norm / L) sup |phi|; measured = grid sup of the
/// high-frequency part of the frequency split at L.
BarronCheck barron_remainder_check(const NetworkParams& net, double L, int n_grid);

/// Discrete minimax fit in the total-degree Chebyshev product basis.
struct MultiPolyFit {
  int dim = 0;
  int degree = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<double> coeffs;
  double lower_bound = 0.0;  // discrete minimax value on the tensor grid
  double check_error = 0.0;  // max |f - p| on a grid twice as fine per axis
  double evaluate(std::span<const double> x) const;
};

MultiPolyFit best_poly_multid(const PointFunction& f, int d, int m, int grid_per_axis);

struct MultidOptions {
  double safety = 0.5;
  double delta = 0.0;          // strip half-width override; required for entire activations
  int grid_per_axis = 0;       // 0 selects max(2m + 1, 25)
  double residual_scale = 1.0;
};

BarrierReport verify_barrier_multid(const PointFunction& f, ActivationPtr act,
                                    const Schedule& sched, int d, const FitConfig& cfg,
                                    const MultidOptions& opts = {});

}  // namespace polybarrier
