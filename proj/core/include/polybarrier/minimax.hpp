#pragma once

#include <span>
#include <utility>
#include <vector>

#include "polybarrier/chebyshev.hpp"

namespace polybarrier {

/// Solution of the discrete Chebyshev problem min_c max_j |f_j - (Phi c)_j|.
struct DiscreteMinimaxSolution {
  std::vector<double> coeffs;
  double levelled = 0.0;  // optimal LP value
  double error = 0.0;     // max_j |f_j - (Phi c)_j| of the returned coefficients
  int iterations = 0;
};

/// Exact discrete minimax fit of f over the rows of `basis` (N x n, row-major:
/// basis[j * n + k] = phi_k(x_j)). Solved as the dual linear program by a
/// revised simplex (point-exchange) method; Bland's rule takes over when the
/// objective stalls. Throws DomainError if the basis has rank < n on the grid
/// or N < n + 1.
DiscreteMinimaxSolution discrete_minimax_basis(std::span<const double> basis, int n_basis,
                                               std::span<const double> f);

/// Degree-m discrete minimax polynomial of f on `grid`. The returned error is
/// a lower bound for E_m(f) on [-1, 1] when grid is a subset of [-1, 1].
std::pair<ChebyshevSeries, double> discrete_minimax(const RealFunction& f, int m,
                                                    std::span<const double> grid);

}  // namespace polybarrier
