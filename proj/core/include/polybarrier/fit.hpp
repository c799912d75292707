#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polybarrier/chebyshev.hpp"
#include "polybarrier/network.hpp"

namespace polybarrier {

using PointFunction = std::function<double(std::span<const double>)>;

struct StepRule {
  double initial_step = 1.0;  // first spectral step length
  double backtrack = 0.5;     // line-search contraction factor
};

/// Grid sizes are points per axis; for dim = 1 they are the total counts.
struct FitConfig {
  int n_restarts = 16;
  int max_iters = 2000;
  int grid_size = 257;          // least-squares surrogate grid
  int report_grid_size = 1029;  // final L-infinity grid, >= 4 * grid_size
  std::uint64_t seed = 42;
  StepRule step_rule;
  int threads = 1;              // restarts run concurrently when > 1

  void validate() const;
  /// Smaller per-axis grids for dim >= 2.
  static FitConfig multid_defaults();
};

struct FitResult {
  NetworkParams network;
  double l_inf_error = 0.0;
  int restart = 0;
};

/// Tensor grid of second-kind Chebyshev points, flattened row-major
/// (point j occupies [j * dim, (j + 1) * dim)).
std::vector<double> tensor_chebyshev_grid(int dim, int per_axis);

/// Best width-m network under cs found by multi-start projected gradient on
/// the least-squares surrogate. lambda is projected onto the l1 ball and each
/// alpha_k onto the ball of radius L after every step. Restart r is seeded
/// with seed + r; the winner minimises (l_inf_error, r).
FitResult fit_l1_constrained(const PointFunction& f, int dim, int m, const ConstraintSet& cs,
                             const FitConfig& cfg, ActivationPtr act);

FitResult fit_l1_constrained(const RealFunction& f, int m, const ConstraintSet& cs,
                             const FitConfig& cfg, ActivationPtr act);

}  // namespace polybarrier
