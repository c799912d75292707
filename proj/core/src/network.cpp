#include "polybarrier/network.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "polybarrier/error.hpp"
#include "polybarrier/format.hpp"

namespace polybarrier {

double NetworkParams::l1_norm() const {
  double s = 0.0;
  for (double l : lambdas) s += std::abs(l);
  return s;
}

double NetworkParams::alpha_norm(std::size_t k) const {
  double s = 0.0;
  for (double a : alpha(k)) s += a * a;
  return std::sqrt(s);
}

double NetworkParams::max_alpha_norm() const {
  double m = 0.0;
  for (std::size_t k = 0; k < width(); ++k) m = std::max(m, alpha_norm(k));
  return m;
}

void NetworkParams::validate() const {
  if (!activation) throw DomainError("NetworkParams: no activation");
  if (dim < 1 || dim > 3) throw DomainError("NetworkParams: dim must be 1, 2 or 3");
  if (alphas.size() != lambdas.size() * static_cast<std::size_t>(dim))
    throw DomainError("NetworkParams: lambdas and alphas have different widths");
  for (double v : lambdas)
    if (!std::isfinite(v)) throw DomainError("NetworkParams: non-finite lambda");
  for (double v : alphas)
    if (!std::isfinite(v)) throw DomainError("NetworkParams: non-finite alpha");
}

NetworkParams zero_network(ActivationPtr act, int dim) {
  NetworkParams n;
  n.activation = std::move(act);
  n.dim = dim;
  return n;
}

void ConstraintSet::validate() const {
  if (!(B > 0.0) || !std::isfinite(B)) throw DomainError("ConstraintSet: B must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("ConstraintSet: L must be positive");
}

bool ConstraintSet::satisfied_by(const NetworkParams& net) const {
  return net.l1_norm() <= B * (1.0 + 1e-12) && net.max_alpha_norm() <= L * (1.0 + 1e-12);
}

double eval_real(const NetworkParams& net, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(net.dim))
    throw DomainError("eval_real: point dimension does not match network");
  for (double xi : x)
    if (!(std::abs(xi) <= 1.0 + 1e-12)) throw DomainError("eval_real: point outside the cube");
  double g = 0.0;
  for (std::size_t k = 0; k < net.width(); ++k) {
    double t = 0.0;
    const auto a = net.alpha(k);
    for (std::size_t i = 0; i < x.size(); ++i) t += a[i] * x[i];
    g += net.lambdas[k] * net.activation->real(t);
  }
  return g;
}

double eval_real(const NetworkParams& net, double x) {
  return eval_real(net, std::span<const double>(&x, 1));
}

namespace {

void check_complex_preconditions(const NetworkParams& net, const BernsteinEllipse& e) {
  if (net.dim != 1) throw DomainError("eval_complex: only dim = 1 networks extend to E_rho");
  for (std::size_t k = 0; k < net.width(); ++k) {
    if (std::abs(net.alphas[k]) > e.dilation() * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "eval_complex: |alpha_" << k << "| = " << std::abs(net.alphas[k])
         << " exceeds the ellipse dilation " << e.dilation();
      throw DomainError(os.str());
    }
  }
  if (net.width() > 0 && !net.activation->analyticity.covers(e)) {
    std::ostringstream os;
    os << "eval_complex: activation '" << net.activation->name
       << "' is not holomorphic on the dilated ellipse (rho " << e.rho() << ", L "
       << e.dilation() << ", semi-minor " << e.dilation() * e.semi_minor() << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

std::complex<double> eval_complex(const NetworkParams& net, std::complex<double> z,
                                  const BernsteinEllipse& e) {
  check_complex_preconditions(net, e);
  const BernsteinEllipse undilated(e.rho());
  if (!undilated.contains(z)) throw DomainError("eval_complex: z lies outside E_rho");
  std::complex<double> g(0.0, 0.0);
  for (std::size_t k = 0; k < net.width(); ++k)
    g += net.lambdas[k] * net.activation->complex(net.alphas[k] * z);
  return g;
}

double holo_sup_bound(const NetworkParams& net, const BernsteinEllipse& e) {
  check_complex_preconditions(net, e);
  const double l1 = net.l1_norm();
  if (l1 == 0.0) return 0.0;
  return l1 * ellipse_norm(net.activation->complex, e);
}

double barron_weighted_norm(const NetworkParams& net) {
  double s = 0.0;
  for (std::size_t k = 0; k < net.width(); ++k) s += std::abs(net.lambdas[k]) * net.alpha_norm(k);
  return s;
}

std::pair<NetworkParams, NetworkParams> frequency_split(const NetworkParams& net, double L) {
  if (!(L > 0.0)) throw DomainError("frequency_split: L must be positive");
  NetworkParams low = zero_network(net.activation, net.dim);
  NetworkParams high = zero_network(net.activation, net.dim);
  for (std::size_t k = 0; k < net.width(); ++k) {
    NetworkParams& part = net.alpha_norm(k) <= L ? low : high;
    part.lambdas.push_back(net.lambdas[k]);
    const auto a = net.alpha(k);
    part.alphas.insert(part.alphas.end(), a.begin(), a.end());
  }
  return {std::move(low), std::move(high)};
}

double gevrey_derivative_bound(const ConstraintSet& cs, const ActivationSpec& act, int n) {
  if (!act.gevrey) throw DomainError("gevrey_derivative_bound: activation '" + act.name +
                                     "' has no Gevrey metadata");
  if (n < 0) throw DomainError("gevrey_derivative_bound: negative order");
  const auto& g = *act.gevrey;
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return g.C * cs.B * std::pow(g.R * cs.L, n) * std::pow(factorial, g.s);
}

void write_network(std::ostream& os, const NetworkParams& net, const ConstraintSet& cs) {
  net.validate();
  os << net.dim << ' ' << net.width() << ' ' << net.activation->name << ' '
     << format_double(cs.B) << ' ' << format_double(cs.L) << '\n';
  for (std::size_t k = 0; k < net.width(); ++k) {
    os << format_double(net.lambdas[k]);
    for (double a : net.alpha(k)) os << ' ' << format_double(a);
    os << '\n';
  }
}

std::pair<NetworkParams, ConstraintSet> read_network(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("read_network: missing header line");
  std::istringstream header(line);
  int dim = 0;
  long long m = -1;
  std::string act;
  std::string bs;
  std::string ls;
  if (!(header >> dim >> m >> act >> bs >> ls) || m < 0)
    throw DomainError("read_network: malformed header '" + line + "'");
  NetworkParams net = zero_network(activation(act), dim);
  ConstraintSet cs{parse_double(bs), parse_double(ls)};
  for (long long k = 0; k < m; ++k) {
    if (!std::getline(is, line)) throw DomainError("read_network: truncated record");
    std::istringstream row(line);
    std::string tok;
    std::vector<double> vals;
    while (row >> tok) vals.push_back(parse_double(tok));
    if (vals.size() != static_cast<std::size_t>(dim) + 1)
      throw DomainError("read_network: row " + std::to_string(k + 1) + " has wrong arity");
    net.lambdas.push_back(vals[0]);
    net.alphas.insert(net.alphas.end(), vals.begin() + 1, vals.end());
  }
  net.validate();
  return {std::move(net), cs};
}

}  // namespace polybarrier
