#include "polybarrier/minimax.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "polybarrier/error.hpp"

namespace polybarrier {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

// Dual LP:  max sum_i w_i s_i f_{j_i}
//           s.t. sum_i w_i s_i phi(x_{j_i}) = 0,  sum_i w_i = 1,  w >= 0.
// A basis is a reference set of n + 1 signed points. The simplex multipliers
// of a basis are (p, t): the polynomial levelled on the reference and its
// levelled error. Pricing picks the grid point of largest |f - p|.
DiscreteMinimaxSolution discrete_minimax_basis(std::span<const double> basis, int n_basis,
                                               std::span<const double> f) {
  if (n_basis < 1) throw DomainError("discrete_minimax: empty basis");
  const auto n = static_cast<Eigen::Index>(n_basis);
  const auto npts = static_cast<Eigen::Index>(f.size());
  if (static_cast<Eigen::Index>(basis.size()) != npts * n)
    throw DomainError("discrete_minimax: basis size does not match grid");
  if (npts < n + 1) throw DomainError("discrete_minimax: fewer grid points than basis size + 1");

  const Eigen::Map<const RowMatrix> phi(basis.data(), npts, n);
  const Eigen::Map<const Eigen::VectorXd> fv(f.data(), npts);
  const double fscale = std::max(1.0, fv.cwiseAbs().maxCoeff());

  // Initial reference: n well-conditioned points by pivoted QR, plus one more.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < n) {
    std::ostringstream os;
    os << "discrete_minimax: basis has rank " << qr.rank() << " < " << n << " on the grid";
    throw DomainError(os.str());
  }
  const auto& perm = qr.colsPermutation().indices();
  std::vector<Eigen::Index> ref(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index i = 0; i <= n; ++i) ref[static_cast<std::size_t>(i)] = perm(i);

  // Signs from the null vector v of Phi_R^T: then w = |v| / ||v||_1 is feasible.
  std::vector<double> sign(ref.size(), 1.0);
  {
    Eigen::MatrixXd pr(n + 1, n);
    for (Eigen::Index i = 0; i <= n; ++i) pr.row(i) = phi.row(ref[static_cast<std::size_t>(i)]);
    Eigen::HouseholderQR<Eigen::MatrixXd> hqr(pr);
    const Eigen::MatrixXd q = hqr.householderQ();
    const Eigen::VectorXd v = q.col(n);
    for (Eigen::Index i = 0; i <= n; ++i) sign[static_cast<std::size_t>(i)] = v(i) >= 0.0 ? 1.0 : -1.0;
  }

  Eigen::MatrixXd bmat(n + 1, n + 1);
  Eigen::VectorXd cb(n + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd resid(npts);

  const int max_iter = 200 * static_cast<int>(n + 1) + 2000;
  const double opt_tol = 1e-14 * fscale;
  double best_obj = -std::numeric_limits<double>::infinity();
  int stall = 0;
  bool bland = false;

  for (int iter = 1; iter <= max_iter; ++iter) {
    for (Eigen::Index i = 0; i <= n; ++i) {
      const auto j = ref[static_cast<std::size_t>(i)];
      const double s = sign[static_cast<std::size_t>(i)];
      bmat.col(i).head(n) = s * phi.row(j).transpose();
      bmat(n, i) = 1.0;
      cb(i) = s * fv(j);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    Eigen::VectorXd w = lu.solve(rhs);
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    const Eigen::VectorXd p = y.head(n);
    const double t = y(n);

    resid = fv - phi * p;

    // Entering column.
    Eigen::Index enter = -1;
    double enter_val = 0.0;
    for (Eigen::Index j = 0; j < npts; ++j) {
      const double d = std::abs(resid(j)) - t;
      if (d <= opt_tol) continue;
      if (bland) {
        enter = j;
        enter_val = d;
        break;
      }
      if (d > enter_val) {
        enter = j;
        enter_val = d;
      }
    }
    if (enter < 0) {
      DiscreteMinimaxSolution sol;
      sol.coeffs.assign(p.data(), p.data() + n);
      sol.levelled = t;
      sol.error = resid.cwiseAbs().maxCoeff();
      sol.iterations = iter;
      return sol;
    }

    const double s_enter = resid(enter) >= 0.0 ? 1.0 : -1.0;
    Eigen::VectorXd a(n + 1);
    a.head(n) = s_enter * phi.row(enter).transpose();
    a(n) = 1.0;
    const Eigen::VectorXd u = lu.solve(a);

    // Ratio test.
    const double piv_tol = 1e-11 * std::max(1.0, u.cwiseAbs().maxCoeff());
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (u(i) <= piv_tol) continue;
      const double ratio = std::max(0.0, w(i)) / u(i);
      if (leave < 0 || ratio < best_ratio - 1e-15) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-15) {
        const bool prefer = bland ? ref[static_cast<std::size_t>(i)] < ref[static_cast<std::size_t>(leave)]
                                  : u(i) > u(leave);
        if (prefer) leave = i;
      }
    }
    if (leave < 0) throw NumericalError("discrete_minimax: unbounded pivot (numerical breakdown)");

    ref[static_cast<std::size_t>(leave)] = enter;
    sign[static_cast<std::size_t>(leave)] = s_enter;

    if (t > best_obj + 1e-15 * fscale) {
      best_obj = t;
      stall = 0;
    } else if (++stall > 50) {
      bland = true;
    }
  }
  throw NumericalError("discrete_minimax: simplex iteration cap reached");
}

std::pair<ChebyshevSeries, double> discrete_minimax(const RealFunction& f, int m,
                                                    std::span<const double> grid) {
  if (m < 0) throw DomainError("discrete_minimax: negative degree");
  const std::set<double> distinct(grid.begin(), grid.end());
  if (static_cast<int>(distinct.size()) < m + 2) {
    std::ostringstream os;
    os << "discrete_minimax: grid has " << distinct.size() << " distinct points, need at least "
       << m + 2;
    throw DomainError(os.str());
  }
  const std::vector<double> pts(distinct.begin(), distinct.end());
  const int n = m + 1;
  std::vector<double> basis(pts.size() * static_cast<std::size_t>(n));
  std::vector<double> fx(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (std::abs(pts[j]) > 1.0) throw DomainError("discrete_minimax: grid point outside [-1, 1]");
    chebyshev_t_values(pts[j], std::span<double>(basis).subspan(j * static_cast<std::size_t>(n),
                                                                 static_cast<std::size_t>(n)));
    fx[j] = f(pts[j]);
  }
  auto sol = discrete_minimax_basis(basis, n, fx);
  return {ChebyshevSeries(std::move(sol.coeffs)), sol.error};
}

}  // namespace polybarrier
