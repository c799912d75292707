#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polybarrier/barrier.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/minimax.hpp"

using namespace polybarrier;

TEST_SUITE("multid") {
  TEST_CASE("x*y is represented exactly at total degree 2") {
    const auto fit = best_poly_multid([](std::span<const double> x) { return x[0] * x[1]; }, 2, 2, 9);
    CHECK(fit.check_error <= 1e-10);
    CHECK(fit.lower_bound <= 1e-10);
    CHECK(fit.exponents.size() == 6);
    const std::vector<double> p = {0.3, -0.7};
    CHECK(fit.evaluate(p) == doctest::Approx(-0.21).epsilon(1e-10));
  }

  TEST_CASE("x-only target matches the univariate discrete minimax") {
    auto g = [](double x) { return std::exp(std::sin(2.0 * x)); };
    for (int m : {1, 3, 5}) {
      const int grid = 2 * m + 7;
      const auto fit = best_poly_multid([&](std::span<const double> x) { return g(x[0]); }, 2, m, grid);
      const auto pts = chebyshev_points(grid - 1);
      const double uni = discrete_minimax(g, m, pts).second;
      CHECK(std::abs(fit.lower_bound - uni) <= 1e-8);
    }
  }

  TEST_CASE("|x| + |y| at total degree 2 lies in [0.125, 0.25]") {
    auto f = [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x[1]); };
    const auto fit = best_poly_multid(f, 2, 2, 25);
    // Separable construction (x^2 + 1/8) + (y^2 + 1/8) has error 1/4.
    double sep = 0.0;
    for (int i = 0; i <= 200; ++i)
      for (int j = 0; j <= 200; ++j) {
        const double x = -1.0 + i / 100.0, y = -1.0 + j / 100.0;
        sep = std::max(sep, std::abs(std::abs(x) + std::abs(y) - (x * x + 0.125) - (y * y + 0.125)));
      }
    CHECK(sep == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.lower_bound >= 0.125 - 1e-9);
    CHECK(fit.lower_bound <= 0.25 + 1e-12);
    CHECK(fit.check_error >= fit.lower_bound - 1e-12);
  }

  TEST_CASE("preconditions") {
    auto f = [](std::span<const double> x) { return x[0]; };
    CHECK_THROWS_AS(best_poly_multid(f, 1, 2, 9), DomainError);
    CHECK_THROWS_AS(best_poly_multid(f, 4, 2, 9), DomainError);
    CHECK_THROWS_AS(best_poly_multid(f, 2, 11, 30), DomainError);
    CHECK_THROWS_AS(best_poly_multid(f, 2, 4, 8), DomainError);
  }

  TEST_CASE("polynomial target passes the d = 2 barrier trivially") {
    FitConfig c = FitConfig::multid_defaults();
    c.n_restarts = 2;
    c.max_iters = 200;
    c.grid_size = 17;
    c.report_grid_size = 68;
    const auto rep = verify_barrier_multid([](std::span<const double> x) { return x[0] * x[1] - x[1]; },
                                           activation("tanh"), Schedule({{2, 1.0, 1.0}, {3, 1.0, 1.0}}), 2, c);
    for (const auto& r : rep.rows) CHECK(r.E_m_f < 1e-10);
    CHECK(rep.passes());
    CHECK(rep.network_bounds_hold());
  }

  TEST_CASE("residual uses the sqrt(d) ridge range") {
    FitConfig c = FitConfig::multid_defaults();
    c.n_restarts = 1;
    c.max_iters = 50;
    c.grid_size = 9;
    c.report_grid_size = 36;
    const auto tanh = activation("tanh");
    const auto rep = verify_barrier_multid([](std::span<const double> x) { return std::abs(x[0]); }, tanh,
                                           Schedule({{2, 1.0, 1.0}}), 3, c);
    CHECK(rep.rows[0].residual ==
          doctest::Approx(strip_residual(2, 1.0, std::sqrt(3.0), std::numbers::pi / 2, 0.5, *tanh)).epsilon(1e-12));
    CHECK_THROWS_AS(verify_barrier_multid([](std::span<const double>) { return 0.0; }, activation("bump"),
                                          Schedule({{2, 1.0, 1.0}}), 2, c),
                    DomainError);
  }
}
