#include "polybarrier/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polybarrier/error.hpp"

namespace polybarrier {

namespace {

// Rounding floor of a Remez error for a function of magnitude fscale.
double remez_floor(double fscale) {
  return 1e3 * std::numeric_limits<double>::epsilon() * std::max(fscale, 1.0);
}

double sup_on_grid(const RealFunction& f, int n) {
  double s = 0.0;
  for (double x : chebyshev_points(n)) s = std::max(s, std::abs(f(x)));
  return s;
}

double network_poly_error(const NetworkParams& net, int m) {
  if (net.width() == 0) return 0.0;
  const RealFunction g = [&net](double x) { return eval_real(net, x); };
  return remez_best_approx(g, m).error;
}

}  // namespace

Schedule::Schedule(std::vector<ScheduleRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DomainError("schedule: no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    std::ostringstream os;
    os << "schedule row " << i << " (m = " << r.m << "): ";
    if (r.m < 0) throw DomainError(os.str() + "negative m");
    if (!(r.B > 0.0) || !std::isfinite(r.B)) throw DomainError(os.str() + "B must be finite and > 0");
    if (!(r.L > 0.0) || !std::isfinite(r.L)) throw DomainError(os.str() + "L must be finite and > 0");
    if (i > 0 && r.m <= rows_[i - 1].m) throw DomainError(os.str() + "m must be strictly increasing");
  }
}

std::vector<NetworkBoundRow> verify_network_poly_bound(const NetworkParams& net,
                                                       const AnalyticEllipseParams& rp,
                                                       const std::vector<int>& degrees) {
  net.validate();
  rp.validate();
  const double B = net.l1_norm();
  const RealFunction g = [&net](double x) { return eval_real(net, x); };
  const double floor = remez_floor(net.width() == 0 ? 0.0 : sup_on_grid(g, 257));
  std::vector<NetworkBoundRow> out;
  out.reserve(degrees.size());
  for (int m : degrees) {
    const double E = network_poly_error(net, m);
    const double bound = analytic_residual(m, B, rp);
    out.push_back({m, E, bound, bound - E, E <= bound + floor});
  }
  return out;
}

BarrierReport verify_barrier(const RealFunction& f, ActivationPtr act, const Schedule& sched,
                             const ResidualMode& mode, const FitConfig& cfg,
                             const BarrierOptions& opts) {
  if (!act) throw DomainError("verify_barrier: missing activation");
  cfg.validate();
  BarrierReport rep;
  rep.mode = mode_name(mode);
  for (const auto& row : sched.rows()) {
    BarrierRow r;
    r.m = row.m;
    r.E_m_f = remez_best_approx(f, row.m).error;
    r.residual = opts.residual_scale * row_residual(mode, *act, row.m, row.B, row.L);
    if (row.m >= 1) {
      FitResult fit = fit_l1_constrained(f, row.m, ConstraintSet{row.B, row.L}, cfg, act);
      r.net_error = fit.l_inf_error;
      r.network = std::move(fit.network);
    } else {
      r.network = zero_network(act);
      r.net_error = sup_on_grid(f, cfg.report_grid_size);
    }
    r.slack = r.net_error - (r.E_m_f - r.residual);
    r.sharpness_ratio =
        r.E_m_f > 0.0 ? r.net_error / r.E_m_f : std::numeric_limits<double>::quiet_NaN();
    r.network_poly_error = network_poly_error(r.network, row.m);
    const NetworkParams& net = r.network;
    const double scale =
        net.width() == 0 ? 0.0 : sup_on_grid([&net](double x) { return eval_real(net, x); }, 257);
    r.network_certified = r.network_poly_error <= r.residual + remez_floor(scale);
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

bool BarrierReport::passes(double tol) const {
  return std::all_of(rows.begin(), rows.end(), [tol](const BarrierRow& r) { return r.slack >= -tol; });
}

bool BarrierReport::network_bounds_hold() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BarrierRow& r) { return r.network_certified; });
}

}  // namespace polybarrier
