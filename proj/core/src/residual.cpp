#include "polybarrier/residual.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polybarrier/error.hpp"

namespace polybarrier {

double bernstein_constant(double rho) {
  if (!(rho > 1.0)) throw DomainError("bernstein_constant: rho must be > 1");
  return 2.0 / (rho - 1.0);
}

void AnalyticEllipseParams::validate() const {
  if (!(rho > 1.0)) throw DomainError("AnalyticEllipseParams: rho must be > 1");
  if (!(M >= 0.0)) throw DomainError("AnalyticEllipseParams: M must be >= 0");
  if (!(C_of_rho >= 0.0)) throw DomainError("AnalyticEllipseParams: C(rho) must be >= 0");
}

double analytic_residual(int m, double B, const AnalyticEllipseParams& rp) {
  rp.validate();
  if (m < 0) throw DomainError("analytic_residual: negative degree");
  return rp.C_of_rho * B * rp.M * std::pow(rp.rho, -m);
}

double strip_residual(int m, double B, double L, double delta, double safety,
                      const ActivationSpec& act) {
  if (m < 0) throw DomainError("strip_residual: negative degree");
  const double L_eff = std::max(L, 1.0);
  const double rho = max_rho_for_strip(delta, L_eff, safety);
  const BernsteinEllipse e(rho, L_eff);
  if (act.analyticity.kind() == Analyticity::Kind::none)
    throw DomainError("strip_residual: activation '" + act.name + "' is not analytic");
  if (!act.analyticity.covers(e)) {
    std::ostringstream os;
    os << "strip_residual: strip half-width " << delta << " exceeds the holomorphy strip of '"
       << act.name << "'";
    throw DomainError(os.str());
  }
  const double M = ellipse_norm(act.complex, e);
  return bernstein_constant(rho) * B * M * std::pow(rho, -m);
}

double gevrey_residual(int m, double B, double L, double s, double A, double c) {
  if (!(s >= 1.0)) throw DomainError("gevrey_residual: s must be >= 1");
  if (!(A >= 0.0) || !(c >= 0.0)) throw DomainError("gevrey_residual: A and c must be >= 0");
  if (!(L > 0.0)) throw DomainError("gevrey_residual: L must be positive");
  return A * B * std::exp(-c * std::pow(static_cast<double>(m) / L, 1.0 / s));
}

GevreyConstants gevrey_constants(const GevreyBound& g, double L) {
  const double r = std::max(g.R, 2.0 / (std::numbers::e * std::numbers::pi * L));
  return {g.C * std::exp(g.s), (g.s / std::numbers::e) * std::pow(std::numbers::pi * r, -1.0 / g.s)};
}

double row_residual(const ResidualMode& mode, const ActivationSpec& act, int m, double B,
                    double L, double argument_scale) {
  const double L_arg = L * argument_scale;
  if (const auto* e = std::get_if<EllipseMode>(&mode)) {
    const BernsteinEllipse ell(e->rho, std::max(L_arg, 1.0));
    if (!act.analyticity.covers(ell)) {
      std::ostringstream os;
      os << "ellipse mode: activation '" << act.name << "' is not holomorphic on L E_rho (rho "
         << e->rho << ", L " << ell.dilation() << ")";
      throw DomainError(os.str());
    }
    const double C = e->C_of_rho > 0.0 ? e->C_of_rho : bernstein_constant(e->rho);
    return analytic_residual(m, B, {e->rho, ellipse_norm(act.complex, ell), C});
  }
  if (const auto* s = std::get_if<StripMode>(&mode)) {
    double delta = s->delta;
    if (!(delta > 0.0)) {
      if (act.analyticity.kind() != Analyticity::Kind::strip)
        throw DomainError("strip mode: activation '" + act.name +
                          "' has no strip half-width; set delta explicitly");
      delta = act.analyticity.half_width();
    }
    return strip_residual(m, B, L_arg, delta, s->safety, act);
  }
  const auto& gm = std::get<GevreyMode>(mode);
  if (!act.gevrey) throw DomainError("gevrey mode: activation '" + act.name + "' has no Gevrey metadata");
  GevreyConstants k = gevrey_constants(*act.gevrey, L_arg);
  if (gm.A > 0.0) k.A = gm.A;
  if (gm.c > 0.0) k.c = gm.c;
  return gevrey_residual(m, B, L_arg, act.gevrey->s, k.A, k.c);
}

const char* mode_name(const ResidualMode& mode) {
  if (std::holds_alternative<EllipseMode>(mode)) return "analytic_ellipse";
  if (std::holds_alternative<StripMode>(mode)) return "strip";
  return "gevrey";
}

}  // namespace polybarrier
