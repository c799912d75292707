#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polybarrier/minimax.hpp"
#include "polybarrier/remez.hpp"

using namespace polybarrier;

namespace {
double abs_fn(double x) { return std::abs(x); }
double runge_fn(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

std::vector<double> uniform_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  return g;
}
}  // namespace

TEST_SUITE("remez") {
  TEST_CASE("x with m = 0 has error 1 and best constant 0") {
    const auto s = remez_best_approx([](double x) { return x; }, 0);
    CHECK(s.error == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.polynomial.coeffs()[0]) < 1e-12);
  }

  TEST_CASE("|x| with m = 2 is x^2 + 1/8 with error 1/8") {
    // Independent certificate: |x| - x^2 - 1/8 takes the values -1/8, +1/8,
    // -1/8, +1/8, -1/8 at -1, -1/2, 0, 1/2, 1, and the divided-difference
    // levelled error on that reference is exactly 1/8.
    const std::vector<double> ref = {-1.0, -0.5, 0.0, 0.5, 1.0};
    CHECK(std::abs(oracle::levelled_error(std::span(ref).subspan(0, 4), abs_fn)) ==
          doctest::Approx(0.125).epsilon(1e-15));
    const auto s = remez_best_approx(abs_fn, 2);
    CHECK(s.error == doctest::Approx(0.125).epsilon(1e-10));
    // x^2 + 1/8 = (T_0 + T_2) / 2 + 1/8.
    CHECK(s.polynomial.coeffs()[0] == doctest::Approx(0.625).epsilon(1e-9));
    CHECK(std::abs(s.polynomial.coeffs()[1]) < 1e-9);
    CHECK(s.polynomial.coeffs()[2] == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("polynomials of degree <= m are reproduced") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = rng.integer(0, 8);
      std::vector<double> c(static_cast<std::size_t>(d) + 1);
      for (auto& v : c) v = rng.uniform(-2.0, 2.0);
      const ChebyshevSeries p(c);
      const int m = d + rng.integer(0, 3);
      const auto s = remez_best_approx([&](double x) { return p(x); }, m);
      double norm = 0.0;
      for (double x : chebyshev_points(200)) norm = std::max(norm, std::abs(p(x)));
      CHECK(s.error <= 1e-10 * std::max(norm, 1.0));
    }
  }

  TEST_CASE("equioscillation certificate") {
    for (auto [f, m] : std::vector<std::pair<double (*)(double), int>>{
             {abs_fn, 2}, {abs_fn, 7}, {abs_fn, 10}, {runge_fn, 12}, {runge_fn, 9}}) {
      const auto s = remez_best_approx(f, m);
      REQUIRE(s.alternation_points.size() == static_cast<std::size_t>(m) + 2);
      for (std::size_t i = 0; i < s.alternation_points.size(); ++i) {
        const double x = s.alternation_points[i];
        CHECK(x >= -1.0);
        CHECK(x <= 1.0);
        if (i > 0) {
          CHECK(x > s.alternation_points[i - 1]);
          CHECK(s.alternation_signs[i] == -s.alternation_signs[i - 1]);
        }
        const double r = f(x) - s.polynomial(x);
        CHECK(r * s.alternation_signs[i] > 0.0);
        CHECK(std::abs(std::abs(r) - s.error) <= 1e-9 * s.error);
      }
      CHECK(s.levelled_error <= s.error);
    }
  }

  TEST_CASE("errors are monotone in m") {
    for (auto f : {abs_fn, runge_fn}) {
      double prev = 1e300;
      for (int m = 0; m <= 30; ++m) {
        const double e = remez_best_approx(f, m).error;
        CHECK(e <= prev * (1.0 + 1e-9));
        prev = e;
      }
    }
  }

  TEST_CASE("agrees with discrete minimax on a 10001-point grid") {
    const auto grid = uniform_grid(10001);
    const std::vector<std::pair<RealFunction, const char*>> fs = {
        {abs_fn, "abs"}, {runge_fn, "runge"}, {[](double x) { return std::exp(x); }, "exp"}};
    for (const auto& [f, name] : fs) {
      for (int m : {1, 2, 4, 6, 9}) {
        CAPTURE(name);
        CAPTURE(m);
        const double remez = remez_best_approx(f, m).error;
        const double disc = discrete_minimax(f, m, grid).second;
        CHECK(disc <= remez + 1e-12);
        CHECK(std::abs(remez - disc) < 1e-6);
      }
    }
  }

  TEST_CASE("scaling covariance E_m(c f) = |c| E_m(f)") {
    for (double c : {-3.0, 0.25, 10.0}) {
      for (int m : {3, 6}) {
        const double base = remez_best_approx(runge_fn, m).error;
        const double scaled = remez_best_approx([c](double x) { return c * runge_fn(x); }, m).error;
        CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("m E_m(|x|) lies in [0.25, 0.35] for even m in [10, 60]") {
    for (int m = 10; m <= 60; m += 2) {
      CAPTURE(m);
      const double e = remez_best_approx(abs_fn, m).error;
      CHECK(m * e >= 0.25);
      CHECK(m * e <= 0.35);
    }
  }

  TEST_CASE("negative degree and bad options are rejected") {
    CHECK_THROWS_AS(remez_best_approx(abs_fn, -1), DomainError);
    CHECK_THROWS_AS(remez_best_approx(abs_fn, 2, 0.0), DomainError);
    RemezOptions o;
    o.max_iterations = 1;
    o.tol = 1e-15;
    CHECK_THROWS_AS(remez_best_approx(runge_fn, 20, o), RemezError);
  }

  TEST_CASE("non-convergence carries the reference and gap") {
    RemezOptions o;
    o.max_iterations = 1;
    o.tol = 1e-15;
    try {
      (void)remez_best_approx(runge_fn, 20, o);
      FAIL("expected RemezError");
    } catch (const RemezError& e) {
      CHECK(e.reference().size() == 22);
      CHECK(e.gap() > 0.0);
    }
  }
}

TEST_SUITE("decay_rate") {
  TEST_CASE("2^{-m} gives exactly 2") {
    std::vector<DecayPoint> pts;
    for (int m = 1; m <= 10; ++m) pts.push_back({m, std::ldexp(1.0, -m)});
    CHECK(decay_rate_fit(pts) == doctest::Approx(2.0).epsilon(1e-13));
  }

  TEST_CASE("constant errors give 1") {
    std::vector<DecayPoint> pts = {{1, 0.3}, {2, 0.3}, {5, 0.3}};
    CHECK(decay_rate_fit(pts) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("runge errors reproduce the pole ellipse parameter within 2%") {
    std::vector<DecayPoint> pts;
    for (int m = 4; m <= 40; ++m) pts.push_back({m, remez_best_approx(runge_fn, m).error});
    // Pole at i/5: rho = |w| with joukowski(w) = i/5, i.e. 1/5 + sqrt(1/25 + 1).
    const double rho = 0.2 + std::sqrt(0.04 + 1.0);
    CHECK(rho == doctest::Approx((1.0 + std::sqrt(26.0)) / 5.0).epsilon(1e-15));
    CHECK(std::abs(decay_rate_fit(pts) / rho - 1.0) < 0.02);
  }

  TEST_CASE("too few positive entries are rejected") {
    CHECK_THROWS_AS(decay_rate_fit({{1, 0.5}, {2, 0.0}, {3, 0.1}}), DomainError);
    CHECK_THROWS_AS(decay_rate_fit({}), DomainError);
  }
}
