#include <doctest.h>

#include <cmath>

#include "polybarrier/error.hpp"
#include "polybarrier/fit.hpp"
#include "polybarrier/remez.hpp"
#include "polybarrier/residual.hpp"

using namespace polybarrier;

namespace {
FitConfig quick() {
  FitConfig c;
  c.n_restarts = 4;
  c.max_iters = 500;
  c.grid_size = 129;
  c.report_grid_size = 517;
  return c;
}
}  // namespace

TEST_SUITE("fit") {
  TEST_CASE("realizable target is recovered") {
    for (const char* name : {"tanh", "sin", "logistic"}) {
      const auto act = activation(name);
      const auto r = fit_l1_constrained([act](double x) { return act->real(x); }, 1, {1.0, 1.0}, quick(), act);
      CAPTURE(name);
      CHECK(r.l_inf_error <= 1e-6);
      CHECK(ConstraintSet{1.0, 1.0}.satisfied_by(r.network));
    }
  }

  TEST_CASE("zero target is fitted exactly") {
    const auto r = fit_l1_constrained([](double) { return 0.0; }, 3, {1.0, 1.0}, quick(), activation("tanh"));
    CHECK(r.l_inf_error <= 1e-9);
  }

  TEST_CASE("|x| with tanh at width 6 respects the barrier") {
    const auto act = activation("tanh");
    const auto r = fit_l1_constrained([](double x) { return std::abs(x); }, 6, {1.0, 1.0}, FitConfig{}, act);
    const double E6 = remez_best_approx([](double x) { return std::abs(x); }, 6).error;
    const double M = ellipse_norm(act->complex, BernsteinEllipse(2.0, 1.0));
    const double r6 = analytic_residual(6, 1.0, {2.0, M, bernstein_constant(2.0)});
    CHECK(r.l_inf_error >= E6 - r6);
  }

  TEST_CASE("constraints hold after every run") {
    for (const char* name : {"tanh", "gaussian", "bump"}) {
      for (double B : {0.3, 2.0})
        for (double L : {0.5, 4.0}) {
          const ConstraintSet cs{B, L};
          const auto r = fit_l1_constrained([](double x) { return std::sin(3.0 * x) + x * x; }, 4, cs, quick(),
                                            activation(name));
          CHECK(cs.satisfied_by(r.network));
        }
    }
  }

  TEST_CASE("error is non-increasing as the budget doubles") {
    const auto act = activation("tanh");
    auto f = [](double x) { return 3.0 * std::tanh(x); };
    double prev = 1e300;
    for (double B : {0.5, 1.0, 2.0, 4.0}) {
      const double e = fit_l1_constrained(f, 3, {B, 1.0}, quick(), act).l_inf_error;
      CHECK(e <= prev + 1e-12);
      prev = e;
    }
  }

  TEST_CASE("results are deterministic and independent of the thread count") {
    auto f = [](double x) { return std::abs(x - 0.2); };
    FitConfig a = quick(), b = quick();
    b.threads = 4;
    const auto ra = fit_l1_constrained(f, 5, {2.0, 3.0}, a, activation("logistic"));
    const auto rb = fit_l1_constrained(f, 5, {2.0, 3.0}, b, activation("logistic"));
    const auto rc = fit_l1_constrained(f, 5, {2.0, 3.0}, a, activation("logistic"));
    CHECK(ra.l_inf_error == rb.l_inf_error);
    CHECK(ra.network.lambdas == rb.network.lambdas);
    CHECK(ra.network.alphas == rc.network.alphas);
    CHECK(ra.restart == rb.restart);
  }

  TEST_CASE("two-dimensional fit keeps ||alpha_k|| <= L") {
    FitConfig c = FitConfig::multid_defaults();
    c.n_restarts = 2;
    c.max_iters = 200;
    const ConstraintSet cs{1.5, 0.8};
    const auto r = fit_l1_constrained([](std::span<const double> x) { return x[0] * x[1]; }, 2, 4, cs, c,
                                      activation("tanh"));
    CHECK(r.network.dim == 2);
    CHECK(cs.satisfied_by(r.network));
  }

  TEST_CASE("configuration validation") {
    FitConfig c;
    c.report_grid_size = 4 * c.grid_size - 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = FitConfig{};
    c.n_restarts = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK_THROWS_AS(fit_l1_constrained([](double) { return 0.0; }, 0, {1.0, 1.0}, FitConfig{}, activation("tanh")),
                    DomainError);
  }

  TEST_CASE("tensor grid layout") {
    const auto g = tensor_chebyshev_grid(2, 3);
    REQUIRE(g.size() == 18);
    CHECK(g[0] == -1.0);
    CHECK(g[1] == -1.0);
    CHECK(g[2] == -1.0);
    CHECK(g[3] == 0.0);
    CHECK(g[16] == 1.0);
    CHECK(g[17] == 1.0);
  }
}
