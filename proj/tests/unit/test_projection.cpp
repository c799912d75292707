#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/projection.hpp"

using namespace polybarrier;

namespace {
double l1(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double s, double x) { return s + std::abs(x); });
}
}  // namespace

TEST_SUITE("projection") {
  TEST_CASE("interior points are unchanged") {
    const std::vector<double> v = {0.2, -0.3};
    CHECK(l1_ball_projection(v, 1.0) == v);
  }

  TEST_CASE("boundary examples match the brute-force oracle") {
    for (const auto& v : {std::vector<double>{3.0, 0.0}, std::vector<double>{2.0, 1.0}}) {
      const auto p = l1_ball_projection(v, 1.0);
      const auto q = oracle::l1_projection_bruteforce(v, 1.0);
      CHECK(p[0] == doctest::Approx(1.0));
      CHECK(std::abs(p[1]) < 1e-15);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(p[i] - q[i]) < 1e-12);
    }
  }

  TEST_CASE("1000 random vectors agree with the oracle within 1e-8") {
    oracle::Rng rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = rng.integer(1, 6);
      std::vector<double> v(static_cast<std::size_t>(n));
      for (auto& x : v) x = rng.uniform(-3.0, 3.0);
      if (trial % 10 == 0) v[0] = v.size() > 1 ? v[1] : v[0];  // ties
      const double B = rng.uniform(0.05, 4.0);
      const auto p = l1_ball_projection(v, B);
      const auto q = oracle::l1_projection_bruteforce(v, B);
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(p[i] - q[i]) <= 1e-8);
        CHECK(p[i] * v[i] >= 0.0);
      }
      CHECK(l1(p) <= B + 1e-12);
    }
  }

  TEST_CASE("errors") {
    const std::vector<double> v = {1.0};
    CHECK_THROWS_AS(l1_ball_projection(v, 0.0), DomainError);
    CHECK_THROWS_AS(l1_ball_projection(v, -1.0), DomainError);
    const std::vector<double> bad = {1.0, NAN};
    CHECK_THROWS_AS(l1_ball_projection(bad, 1.0), DomainError);
  }

  TEST_CASE("l2-ball projection") {
    std::vector<double> v = {3.0, 4.0};
    project_to_l2_ball(v, 1.0);
    CHECK(v[0] == doctest::Approx(0.6));
    CHECK(v[1] == doctest::Approx(0.8));
    std::vector<double> w = {0.1, 0.1};
    project_to_l2_ball(w, 1.0);
    CHECK(w[0] == 0.1);
  }
}
