#include <doctest.h>

#include "config.hpp"
#include "experiment.hpp"

using namespace polybarrier;
using namespace polybarrier::cli;

TEST_SUITE("config") {
  TEST_CASE("sections, keys, comments and repeated rows") {
    const auto cfg = Config::parse(
        "# comment\n"
        "[target]\n"
        "name = abs   # trailing comment\n"
        "\n"
        "[schedule]\n"
        "  row = 2 1 1\n"
        "row = 4 1 1\n"
        "; other comment\n");
    CHECK(cfg.get_string("target", "name") == "abs");
    CHECK(cfg.all("schedule", "row").size() == 2);
    CHECK(make_schedule(cfg).rows()[1].m == 4);
    CHECK(cfg.get_double("fit", "tol", 0.5) == 0.5);
  }

  TEST_CASE("syntax errors report line and column") {
    auto expect = [](const std::string& text, int line, int col) {
      try {
        (void)Config::parse(text);
        FAIL("expected ConfigError");
      } catch (const ConfigError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == col);
      }
    };
    expect("[target\n", 1, 8);
    expect("[a]\nkey value\n", 2, 5);
    expect("key = 1\n", 1, 1);
    expect("[a]\nx = 1\nx = 2\n", 3, 1);
    expect("[a]\n[a]\n", 2, 1);
    expect("[a]\n  = 3\n", 2, 3);
    expect("[a]\nx =\n", 2, 4);
  }

  TEST_CASE("typed values point at the offending token") {
    const auto cfg = Config::parse("[remez]\nm_max = 2 x\ntol = abc\nm_min = 1.5\n");
    try {
      (void)cfg.get_doubles("remez", "m_max");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 11);
    }
    CHECK_THROWS_AS(cfg.get_double("remez", "tol"), ConfigError);
    CHECK_THROWS_AS(cfg.get_int("remez", "m_min"), ConfigError);
    CHECK_THROWS_AS(cfg.get_string("remez", "missing"), ConfigError);
  }

  TEST_CASE("unknown sections and keys") {
    const auto cfg = Config::parse("[target]\nname = abs\n[bogus]\nx = 1\n");
    CHECK_THROWS_AS(cfg.check_known({{"target", {"name"}}}), ConfigError);
    CHECK_NOTHROW(cfg.check_known({{"target", {"name"}}, {"bogus", {"x"}}}));
  }

  TEST_CASE("overrides") {
    auto cfg = Config::parse("[target]\nname = abs\n");
    cfg.set("target.name=runge");
    cfg.set("remez.m_max=5");
    CHECK(cfg.get_string("target", "name") == "runge");
    CHECK(cfg.get_int("remez", "m_max") == 5);
    CHECK_THROWS_AS(cfg.set("nodot=1"), ConfigError);
    CHECK_THROWS_AS(cfg.set("a.b"), ConfigError);
  }

  TEST_CASE("schedule generators") {
    auto sched = [](const std::string& body) { return make_schedule(Config::parse("[schedule]\n" + body)); };
    const auto a = sched("m = 2:8:2\nB = poly 2 1\nL = exp 1 0.5\n");
    REQUIRE(a.size() == 4);
    CHECK(a.rows()[1].m == 4);
    CHECK(a.rows()[1].B == 8.0);
    CHECK(a.rows()[1].L == doctest::Approx(std::exp(2.0)));
    const auto b = sched("m = 1 4 9\nB = exp 1 1 0.5\n");
    CHECK(b.rows()[2].B == doctest::Approx(std::exp(3.0)));
    CHECK(b.rows()[2].L == 1.0);
    CHECK_THROWS_AS(sched("m = 3:1\n"), ConfigError);
    CHECK_THROWS_AS(sched("m = 1:4\nB = linear 2\n"), ConfigError);
    CHECK_THROWS_AS(sched("m = 1:4\nB = const 0\n"), ConfigError);
    CHECK_THROWS_AS(sched("m = 1:4\nrow = 1 1 1\n"), ConfigError);
    CHECK_THROWS_AS(sched("B = const 1\n"), ConfigError);
    CHECK_THROWS_AS(sched("m = 1 1\n"), ConfigError);
  }

  TEST_CASE("targets") {
    auto target = [](const std::string& body) { return make_target(Config::parse("[target]\n" + body)); };
    CHECK(target("name = abs\n")(-0.5) == 0.5);
    CHECK(target("name = runge\n")(0.2) == doctest::Approx(0.5));
    CHECK(target("name = ck_spline\nk = 2\n")(0.5) == doctest::Approx(0.125));
    CHECK(target("name = ck_spline\nk = 2\n")(-0.5) == 0.0);
    CHECK(target("name = realizable\nactivation = sin\n")(0.3) == doctest::Approx(std::sin(0.3)));
    CHECK(target("name = poly\ncoeffs = 1 0 2\n")(0.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(target("name = nope\n"), ConfigError);
    CHECK_THROWS_AS(target("name = realizable\nactivation = relu\n"), ConfigError);
    const auto cfg = Config::parse("[target]\nname = abs_sum\n");
    const std::vector<double> p = {-0.5, 0.25};
    CHECK(make_target_multid(cfg, 2)(p) == 0.75);
  }

  TEST_CASE("modes") {
    CHECK(std::holds_alternative<StripMode>(make_mode(Config{})));
    CHECK(std::get<EllipseMode>(make_mode(Config::parse("[mode]\nkind = ellipse\nrho = 3\n"))).rho == 3.0);
    CHECK_THROWS_AS(make_mode(Config::parse("[mode]\nkind = ellipse\nrho = 1\n")), ConfigError);
    CHECK_THROWS_AS(make_mode(Config::parse("[mode]\nkind = magic\n")), ConfigError);
  }
}
