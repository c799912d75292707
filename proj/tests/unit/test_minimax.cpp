#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/minimax.hpp"

using namespace polybarrier;

namespace {
std::vector<double> uniform_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  return g;
}
}  // namespace

TEST_SUITE("minimax") {
  TEST_CASE("|x| with m = 2 on 5001 uniform points lies in [0.1249, 0.125]") {
    const auto [p, err] = discrete_minimax([](double x) { return std::abs(x); }, 2, uniform_grid(5001));
    CHECK(err >= 0.1249);
    CHECK(err <= 0.125 + 1e-12);
    // The grid contains the continuous alternation set, so the value is exact.
    CHECK(err == doctest::Approx(0.125).epsilon(1e-12));
  }

  TEST_CASE("polynomials have zero discrete error") {
    const auto [p, err] =
        discrete_minimax([](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; }, 3, uniform_grid(101));
    CHECK(err < 1e-13);
  }

  TEST_CASE("x with m = 0 on {-1, 0, 1} gives error 1 and p = 0") {
    const std::vector<double> g = {-1.0, 0.0, 1.0};
    const auto [p, err] = discrete_minimax([](double x) { return x; }, 0, g);
    CHECK(err == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p.coeffs()[0]) < 1e-14);
  }

  TEST_CASE("matches the brute-force maximum over all references") {
    oracle::Rng rng(5);
    const std::vector<RealFunction> fs = {
        [](double x) { return std::abs(x); }, [](double x) { return std::exp(2.0 * x); },
        [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, [](double x) { return std::sin(5.0 * x); }};
    for (const auto& f : fs) {
      for (int m = 0; m <= 3; ++m) {
        std::vector<double> g;
        for (int i = 0; i < 14; ++i) g.push_back(rng.uniform(-1.0, 1.0));
        std::sort(g.begin(), g.end());
        const double brute = oracle::discrete_minimax_bruteforce(g, m, f);
        const double lp = discrete_minimax(f, m, g).second;
        CHECK(lp == doctest::Approx(brute).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("degenerate grids are rejected") {
    const std::vector<double> g = {0.1, 0.1, 0.2, 0.2};
    CHECK_THROWS_AS(discrete_minimax([](double x) { return x; }, 1, g), DomainError);
    const std::vector<double> outside = {-2.0, 0.0, 0.5, 1.0};
    CHECK_THROWS_AS(discrete_minimax([](double x) { return x; }, 1, outside), DomainError);
  }

  TEST_CASE("general basis: monomials on a 2-d grid reproduce x*y") {
    std::vector<double> basis, f;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        const double x = -1.0 + i / 3.0, y = -1.0 + j / 3.0;
        for (double b : {1.0, x, y, x * y}) basis.push_back(b);
        f.push_back(x * y);
      }
    const auto sol = discrete_minimax_basis(basis, 4, f);
    CHECK(sol.error < 1e-13);
    CHECK(sol.coeffs[3] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("rank-deficient basis is rejected") {
    std::vector<double> basis, f;
    for (int i = 0; i < 10; ++i) {
      const double x = -1.0 + i / 4.5;
      basis.insert(basis.end(), {1.0, x, 2.0 * x});
      f.push_back(std::abs(x));
    }
    CHECK_THROWS_AS(discrete_minimax_basis(basis, 3, f), DomainError);
  }
}
