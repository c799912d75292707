#include "polybarrier/activation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "polybarrier/error.hpp"

namespace polybarrier {

Analyticity Analyticity::strip(double half_width) {
  if (!(half_width > 0.0)) throw DomainError("Analyticity::strip: half-width must be positive");
  return Analyticity(Kind::strip, half_width);
}

bool Analyticity::covers(const BernsteinEllipse& e) const {
  switch (kind_) {
    case Kind::entire:
      return true;
    case Kind::strip:
      return e.dilation() * e.semi_minor() < delta_;
    case Kind::none:
      return false;
  }
  return false;
}

namespace {

// Generic formulas shared by the double, complex and Jet instantiations.
using std::exp;
using std::sin;

template <class T>
T exponential(const T& t) { return exp(t); }

template <class T>
T gaussian(const T& t) { return exp(-(t * t)); }

template <class T>
T tanh_formula(const T& t) { return 1.0 - 2.0 / (exp(2.0 * t) + 1.0); }

template <class T>
T logistic(const T& t) { return 1.0 / (1.0 + exp(-t)); }

template <class T>
T runge(const T& t) { return 1.0 / (1.0 + t * t); }

double bump_real(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double logistic_real(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

std::vector<double> gevrey_sample_grid(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return x;
}

constexpr int kGevreyFitOrder = 8;

ActivationPtr finish(ActivationSpec spec, std::optional<double> s, double lo, double hi) {
  if (s) {
    const auto grid = gevrey_sample_grid(lo, hi, 4001);
    spec.gevrey = fit_gevrey_bound(spec, *s, kGevreyFitOrder, grid);
  }
  return std::make_shared<const ActivationSpec>(std::move(spec));
}

using Catalog = std::map<std::string, ActivationPtr, std::less<>>;

void add(Catalog& cat, ActivationSpec spec, std::optional<double> s, double lo, double hi) {
  std::string name = spec.name;
  cat.emplace(std::move(name), finish(std::move(spec), s, lo, hi));
}

Catalog build_catalog() {
  Catalog cat;

  {
    ActivationSpec a;
    a.name = "exp";
    a.real = [](double t) { return std::exp(t); };
    a.complex = [](Complex z) { return std::exp(z); };
    a.slope = [](double t) { return std::exp(t); };
    a.taylor = [](const Jet& t) { return exponential(t); };
    a.analyticity = Analyticity::entire();
    add(cat, std::move(a), std::nullopt, 0, 0);
  }
  {
    ActivationSpec a;
    a.name = "sin";
    a.real = [](double t) { return std::sin(t); };
    a.complex = [](Complex z) { return std::sin(z); };
    a.slope = [](double t) { return std::cos(t); };
    a.taylor = [](const Jet& t) { return sin(t); };
    a.analyticity = Analyticity::entire();
    a.sup_real = 1.0;
    add(cat, std::move(a), 1.0, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  }
  {
    ActivationSpec a;
    a.name = "gaussian";
    a.real = [](double t) { return gaussian(t); };
    a.complex = [](Complex z) { return gaussian(z); };
    a.slope = [](double t) { return -2.0 * t * std::exp(-t * t); };
    a.taylor = [](const Jet& t) { return gaussian(t); };
    a.analyticity = Analyticity::entire();
    a.sup_real = 1.0;
    add(cat, std::move(a), 1.0, -8.0, 8.0);
  }
  {
    ActivationSpec a;
    a.name = "tanh";
    a.real = [](double t) { return std::tanh(t); };
    a.complex = [](Complex z) { return std::tanh(z); };
    a.slope = [](double t) {
      const double th = std::tanh(t);
      return 1.0 - th * th;
    };
    a.taylor = [](const Jet& t) { return tanh_formula(t); };
    a.analyticity = Analyticity::strip(std::numbers::pi / 2.0);
    a.sup_real = 1.0;
    add(cat, std::move(a), 1.0, -12.0, 12.0);
  }
  {
    ActivationSpec a;
    a.name = "logistic";
    a.real = logistic_real;
    a.complex = [](Complex z) { return logistic(z); };
    a.slope = [](double t) {
      const double s = logistic_real(t);
      return s * (1.0 - s);
    };
    a.taylor = [](const Jet& t) { return logistic(t); };
    a.analyticity = Analyticity::strip(std::numbers::pi);
    a.sup_real = 1.0;
    add(cat, std::move(a), 1.0, -20.0, 20.0);
  }
  {
    ActivationSpec a;
    a.name = "runge";
    a.real = [](double t) { return runge(t); };
    a.complex = [](Complex z) { return runge(z); };
    a.slope = [](double t) {
      const double d = 1.0 + t * t;
      return -2.0 * t / (d * d);
    };
    a.taylor = [](const Jet& t) { return runge(t); };
    a.analyticity = Analyticity::strip(1.0);
    a.sup_real = 1.0;
    add(cat, std::move(a), 1.0, -10.0, 10.0);
  }
  {
    ActivationSpec a;
    a.name = "bump";
    a.real = bump_real;
    // Not holomorphic across |t| = 1; the complex form only agrees on the real axis.
    a.complex = [](Complex z) -> Complex {
      if (std::abs(z.real()) >= 1.0) return {0.0, 0.0};
      return std::exp(-1.0 / (1.0 - z * z));
    };
    a.slope = [](double t) {
      if (std::abs(t) >= 1.0) return 0.0;
      const double d = 1.0 - t * t;
      return bump_real(t) * (-2.0 * t / (d * d));
    };
    a.taylor = [](const Jet& t) {
      if (std::abs(t.value()) >= 1.0) return Jet(0.0, t.order());
      return exp(-1.0 / (1.0 - t * t));
    };
    a.analyticity = Analyticity::none();
    a.sup_real = std::exp(-1.0);
    add(cat, std::move(a), 2.0, -0.9995, 0.9995);
  }
  return cat;
}

const Catalog& catalog() {
  static const auto cat = build_catalog();
  return cat;
}

}  // namespace

ActivationPtr activation(std::string_view name) {
  const auto& cat = catalog();
  const auto it = cat.find(name);
  if (it == cat.end()) {
    std::string msg = "unknown activation '" + std::string(name) + "' (known:";
    for (const auto& [k, v] : cat) msg += " " + k;
    throw DomainError(msg + ")");
  }
  return it->second;
}

std::vector<std::string> activation_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : catalog()) names.push_back(k);
  return names;
}

std::vector<double> activation_derivatives(const ActivationSpec& act, double t, int n) {
  if (n < 0) throw DomainError("activation_derivatives: negative order");
  const Jet j = act.taylor(Jet::variable(t, n));
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(k)] = j.derivative(k);
  return d;
}

GevreyBound fit_gevrey_bound(const ActivationSpec& act, double s, int max_order,
                             std::span<const double> sample_points, double margin) {
  if (!(s >= 1.0)) throw DomainError("fit_gevrey_bound: s must be >= 1");
  if (max_order < 1) throw DomainError("fit_gevrey_bound: max_order must be >= 1");
  std::vector<double> sup(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (double t : sample_points) {
    const auto d = activation_derivatives(act, t, max_order);
    for (std::size_t k = 0; k < d.size(); ++k) sup[k] = std::max(sup[k], std::abs(d[k]));
  }
  if (!(sup[0] > 0.0)) throw DomainError("fit_gevrey_bound: activation vanishes on the samples");
  const double C = sup[0] * margin;
  double R = 0.0;
  double factorial = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    factorial *= k;
    R = std::max(R, std::pow(sup[static_cast<std::size_t>(k)] / (C * std::pow(factorial, s)),
                             1.0 / k));
  }
  return {C, R * margin, s};
}

}  // namespace polybarrier
