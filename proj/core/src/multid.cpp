#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polybarrier/barrier.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/minimax.hpp"

namespace polybarrier {

namespace {

void total_degree_exponents(int d, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int e : cur) used += e;
  for (int e = 0; e + used <= m; ++e) {
    cur.push_back(e);
    total_degree_exponents(d, m, cur, out);
    cur.pop_back();
  }
}

// Row of the product basis at x, using per-axis T values tvals[i * (m + 1) + k].
void basis_row(const std::vector<std::vector<int>>& exps, int m, std::span<const double> x,
               std::vector<double>& tvals, std::span<double> row) {
  const auto n1 = static_cast<std::size_t>(m + 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    chebyshev_t_values(x[i], std::span<double>(tvals).subspan(i * n1, n1));
  for (std::size_t b = 0; b < exps.size(); ++b) {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= tvals[i * n1 + static_cast<std::size_t>(exps[b][i])];
    row[b] = v;
  }
}

}  // namespace

double MultiPolyFit::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim) throw DomainError("MultiPolyFit: point dimension mismatch");
  std::vector<double> tvals(x.size() * static_cast<std::size_t>(degree + 1));
  std::vector<double> row(exponents.size());
  basis_row(exponents, degree, x, tvals, row);
  double s = 0.0;
  for (std::size_t b = 0; b < row.size(); ++b) s += coeffs[b] * row[b];
  return s;
}

MultiPolyFit best_poly_multid(const PointFunction& f, int d, int m, int grid_per_axis) {
  if (d < 2 || d > 3) throw DomainError("best_poly_multid: dimension must be 2 or 3");
  if (m < 0 || m > 10) throw DomainError("best_poly_multid: total degree must lie in [0, 10]");
  if (grid_per_axis < 2 * m + 1) {
    std::ostringstream os;
    os << "best_poly_multid: grid_per_axis " << grid_per_axis << " < 2m + 1 = " << 2 * m + 1;
    throw DomainError(os.str());
  }
  MultiPolyFit fit;
  fit.dim = d;
  fit.degree = m;
  std::vector<int> cur;
  total_degree_exponents(d, m, cur, fit.exponents);
  const std::size_t nb = fit.exponents.size();
  const auto du = static_cast<std::size_t>(d);

  const std::vector<double> grid = tensor_chebyshev_grid(d, grid_per_axis);
  const std::size_t npts = grid.size() / du;
  if (nb + 1 > npts) {
    std::ostringstream os;
    os << "best_poly_multid: basis size " << nb << " exceeds grid size " << npts;
    throw DomainError(os.str());
  }
  std::vector<double> basis(npts * nb), fx(npts);
  std::vector<double> tvals(du * static_cast<std::size_t>(m + 1));
  for (std::size_t j = 0; j < npts; ++j) {
    const auto x = std::span<const double>(grid).subspan(j * du, du);
    basis_row(fit.exponents, m, x, tvals, std::span<double>(basis).subspan(j * nb, nb));
    fx[j] = f(x);
    if (!std::isfinite(fx[j])) throw DomainError("best_poly_multid: target is not finite on the grid");
  }
  auto sol = discrete_minimax_basis(basis, static_cast<int>(nb), fx);
  fit.coeffs = std::move(sol.coeffs);
  fit.lower_bound = sol.levelled;

  const std::vector<double> fine = tensor_chebyshev_grid(d, 2 * grid_per_axis - 1);
  std::vector<double> row(nb);
  for (std::size_t j = 0; j < fine.size() / du; ++j) {
    const auto x = std::span<const double>(fine).subspan(j * du, du);
    basis_row(fit.exponents, m, x, tvals, row);
    double p = 0.0;
    for (std::size_t b = 0; b < nb; ++b) p += fit.coeffs[b] * row[b];
    fit.check_error = std::max(fit.check_error, std::abs(f(x) - p));
  }
  return fit;
}

namespace {

// Ridge bound: phi(<a, x>) = phi(s t) with t = <a, x> / s in [-1, 1] and
// s = ||a||_1, so E_m^{(d)}(g) <= sum_k |lambda_k| E_m(phi(s_k .)).
double ridge_poly_error(const NetworkParams& net, int m) {
  double total = 0.0;
  const ActivationSpec& act = *net.activation;
  for (std::size_t k = 0; k < net.width(); ++k) {
    if (net.lambdas[k] == 0.0) continue;
    double s = 0.0;
    for (double a : net.alpha(k)) s += std::abs(a);
    if (s == 0.0) continue;
    const RealFunction h = [&act, s](double t) { return act.real(s * t); };
    total += std::abs(net.lambdas[k]) * remez_best_approx(h, m).error;
  }
  return total;
}

}  // namespace

BarrierReport verify_barrier_multid(const PointFunction& f, ActivationPtr act,
                                    const Schedule& sched, int d, const FitConfig& cfg,
                                    const MultidOptions& opts) {
  if (!act) throw DomainError("verify_barrier_multid: missing activation");
  if (d < 2 || d > 3) throw DomainError("verify_barrier_multid: dimension must be 2 or 3");
  if (act->analyticity.kind() == Analyticity::Kind::none)
    throw DomainError("verify_barrier_multid: activation '" + act->name + "' is not analytic");
  cfg.validate();
  const StripMode mode{opts.safety, opts.delta};
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  BarrierReport rep;
  rep.mode = "strip";
  for (const auto& row : sched.rows()) {
    const int grid = opts.grid_per_axis > 0 ? opts.grid_per_axis : std::max(2 * row.m + 1, 25);
    BarrierRow r;
    r.m = row.m;
    r.E_m_f = best_poly_multid(f, d, row.m, grid).lower_bound;
    r.residual = opts.residual_scale * row_residual(mode, *act, row.m, row.B, row.L, sqrt_d);
    if (row.m >= 1) {
      FitResult fit = fit_l1_constrained(f, d, row.m, ConstraintSet{row.B, row.L}, cfg, act);
      r.net_error = fit.l_inf_error;
      r.network = std::move(fit.network);
    } else {
      r.network = zero_network(act, d);
      const auto pts = tensor_chebyshev_grid(d, cfg.report_grid_size);
      for (std::size_t j = 0; j < pts.size(); j += static_cast<std::size_t>(d))
        r.net_error = std::max(
            r.net_error, std::abs(f(std::span<const double>(pts).subspan(j, static_cast<std::size_t>(d)))));
    }
    r.slack = r.net_error - (r.E_m_f - r.residual);
    r.sharpness_ratio =
        r.E_m_f > 0.0 ? r.net_error / r.E_m_f : std::numeric_limits<double>::quiet_NaN();
    r.network_poly_error = ridge_poly_error(r.network, row.m);
    r.network_certified = r.network_poly_error <=
                          r.residual + 1e3 * std::numeric_limits<double>::epsilon() *
                                           std::max(1.0, r.network.l1_norm());
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace polybarrier
