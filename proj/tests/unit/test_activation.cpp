#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "oracles.hpp"
#include "polybarrier/activation.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/jet.hpp"

using namespace polybarrier;

namespace {

// Extended-precision reference implementations of the catalog entries.
const std::map<std::string, std::function<long double(long double)>>& reference_activations() {
  static const std::map<std::string, std::function<long double(long double)>> m = {
      {"exp", [](long double t) { return std::exp(t); }},
      {"sin", [](long double t) { return std::sin(t); }},
      {"gaussian", [](long double t) { return std::exp(-t * t); }},
      {"tanh", [](long double t) { return std::tanh(t); }},
      {"logistic", [](long double t) { return 1.0L / (1.0L + std::exp(-t)); }},
      {"runge", [](long double t) { return 1.0L / (1.0L + t * t); }},
      {"bump", oracle::bump},
  };
  return m;
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("arithmetic and elementary functions match closed-form derivatives") {
    const double t0 = 0.3;
    const Jet t = Jet::variable(t0, 6);
    const Jet g = sin(3.0 * t) * exp(t);  // derivatives via Im((1 + 3i)^k e^{(1+3i) t})
    for (int k = 0; k <= 6; ++k) {
      const std::complex<double> w(1.0, 3.0);
      const double expect = (std::pow(w, k) * std::exp(w * t0)).imag();
      CHECK(g.derivative(k) == doctest::Approx(expect).epsilon(1e-12));
    }
    const Jet q = 1.0 / (1.0 + t * t);  // derivative of order 1: -2t / (1 + t^2)^2
    CHECK(q.derivative(1) == doctest::Approx(-2.0 * t0 / std::pow(1.0 + t0 * t0, 2)).epsilon(1e-14));
    const Jet c = cos(t) - 2.0;
    CHECK(c.derivative(2) == doctest::Approx(-std::cos(t0)).epsilon(1e-14));
    CHECK((t / t).derivative(3) == doctest::Approx(0.0));
  }

  TEST_CASE("activation derivatives agree with finite differences") {
    for (const auto& [name, ref] : reference_activations()) {
      const auto act = activation(name);
      for (double t : {-0.7, 0.0, 0.4, 0.95}) {
        const auto d = activation_derivatives(*act, t, 4);
        for (int n = 0; n <= 4; ++n) {
          CAPTURE(name);
          CAPTURE(t);
          CAPTURE(n);
          const long double fd = oracle::fd_derivative(ref, t, n, 2e-3L);
          CHECK(std::abs(d[static_cast<std::size_t>(n)] - static_cast<double>(fd)) <=
                1e-6 * std::max(1.0, std::abs(d[static_cast<std::size_t>(n)])));
        }
      }
    }
  }
}

TEST_SUITE("activation") {
  TEST_CASE("catalog contents") {
    const auto names = activation_names();
    for (const char* n : {"exp", "sin", "gaussian", "tanh", "logistic", "runge", "bump"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK(activation("tanh")->analyticity.kind() == Analyticity::Kind::strip);
    CHECK(activation("tanh")->analyticity.half_width() == doctest::Approx(std::numbers::pi / 2));
    CHECK(activation("logistic")->analyticity.half_width() == doctest::Approx(std::numbers::pi));
    CHECK(activation("runge")->analyticity.half_width() == doctest::Approx(1.0));
    CHECK(activation("exp")->analyticity.kind() == Analyticity::Kind::entire);
    CHECK(activation("bump")->analyticity.kind() == Analyticity::Kind::none);
    CHECK(activation("bump")->gevrey->s == 2.0);
    CHECK_FALSE(activation("exp")->sup_real.has_value());
    CHECK_THROWS_AS(activation("relu"), DomainError);
  }

  TEST_CASE("complex evaluation matches real evaluation on the axis") {
    for (const auto& name : activation_names()) {
      const auto act = activation(name);
      for (int i = 0; i <= 200; ++i) {
        const double t = -3.0 + 6.0 * i / 200.0;
        CHECK(std::abs(act->complex({t, 0.0}).real() - act->real(t)) <= 1e-12 * std::max(1.0, std::abs(act->real(t))));
        CHECK(std::abs(act->complex({t, 0.0}).imag()) <= 1e-12);
      }
    }
  }

  TEST_CASE("complex evaluation is finite inside the strip") {
    for (const auto& name : activation_names()) {
      const auto act = activation(name);
      if (act->analyticity.kind() != Analyticity::Kind::strip) continue;
      const double d = act->analyticity.half_width();
      for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
          const Complex z(-10.0 + 20.0 * i / 40.0, (-1.0 + 2.0 * j / 40.0) * 0.999 * d);
          const Complex v = act->complex(z);
          CHECK(std::isfinite(v.real()));
          CHECK(std::isfinite(v.imag()));
        }
    }
  }

  TEST_CASE("Gevrey metadata dominates finite-difference derivative maxima within 1.05") {
    for (const auto& [name, ref] : reference_activations()) {
      const auto act = activation(name);
      if (!act->gevrey) continue;
      const auto g = *act->gevrey;
      const double span = name == "bump" ? 1.0 : 25.0;
      for (int n = 0; n <= 4; ++n) {
        long double sup = 0.0L;
        for (int i = 0; i <= 4000; ++i) {
          const long double t = -span + 2.0L * span * i / 4000.0L;
          sup = std::max(sup, std::abs(oracle::fd_derivative(ref, t, n, 2e-3L)));
        }
        double fact = 1.0;
        for (int k = 2; k <= n; ++k) fact *= k;
        CAPTURE(name);
        CAPTURE(n);
        CHECK(static_cast<double>(sup) <= 1.05 * g.C * std::pow(g.R, n) * std::pow(fact, g.s));
      }
    }
  }

  TEST_CASE("fit_gevrey_bound recovers an exact Gevrey-1 triple for sin") {
    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * i / 2000.0);
    const auto g = fit_gevrey_bound(*activation("sin"), 1.0, 6, grid, 1.0);
    CHECK(g.C == doctest::Approx(1.0).epsilon(1e-9));
    // sup |sin^{(k)}| = 1, so R = max_k (1 / k!)^{1/k} = 1 at k = 1.
    CHECK(g.R == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("strip coverage of dilated ellipses") {
    const auto tanh = activation("tanh");
    CHECK(tanh->analyticity.covers(BernsteinEllipse(2.0, 1.0)));
    CHECK_FALSE(tanh->analyticity.covers(BernsteinEllipse(2.0, 3.0)));
    CHECK(activation("exp")->analyticity.covers(BernsteinEllipse(50.0, 10.0)));
    CHECK_FALSE(activation("bump")->analyticity.covers(BernsteinEllipse(1.01)));
  }
}
