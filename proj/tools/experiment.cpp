#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "polybarrier/error.hpp"
#include "polybarrier/format.hpp"

namespace polybarrier::cli {

namespace {

ConfigError at(const ConfigValue* v, const std::string& msg) {
  return v ? ConfigError(msg, v->line, v->column) : ConfigError(msg);
}

double poly_eval(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

struct Rule {
  enum class Kind { constant, poly, exp } kind;
  double c;
  double a;
  double p;
  double operator()(int m) const {
    switch (kind) {
      case Kind::constant: return c;
      case Kind::poly: return c * std::pow(m, a);
      case Kind::exp: return c * std::exp(a * std::pow(m, p));
    }
    return c;
  }
};

Rule parse_rule(const ConfigValue& v) {
  const auto words = split_words(v.text);
  auto num = [&](std::size_t i) {
    ConfigValue w{words[i], v.line, v.column};
    const double x = parse_number(w);
    if (!std::isfinite(x)) throw at(&v, "rule parameters must be finite");
    return x;
  };
  if (words.empty()) throw at(&v, "empty rule");
  if (words[0] == "const" && words.size() == 2) return {Rule::Kind::constant, num(1), 0.0, 1.0};
  if (words[0] == "poly" && words.size() == 3) return {Rule::Kind::poly, num(1), num(2), 1.0};
  if (words[0] == "exp" && (words.size() == 3 || words.size() == 4))
    return {Rule::Kind::exp, num(1), num(2), words.size() == 4 ? num(3) : 1.0};
  throw at(&v, "rule '" + v.text + "' is not one of: const c | poly c a | exp c a [p]");
}

std::vector<int> parse_degrees(const ConfigValue& v) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    const double d = parse_number(ConfigValue{s, v.line, v.column});
    if (d != std::floor(d) || d < 0 || d > 1e6) throw at(&v, "degree '" + s + "' is not a non-negative integer");
    return static_cast<int>(d);
  };
  if (v.text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(v.text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw at(&v, "range must be start:stop[:step]");
    const int a = to_int(parts[0]), b = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
    if (step < 1 || b < a) throw at(&v, "range needs start <= stop and step >= 1");
    for (int m = a; m <= b; m += step) out.push_back(m);
  } else {
    for (const auto& w : split_words(v.text)) out.push_back(to_int(w));
  }
  return out;
}

}  // namespace

ActivationPtr make_activation(const Config& cfg) {
  const auto* v = cfg.find("network", "activation");
  try {
    return activation(v ? v->text : "tanh");
  } catch (const DomainError& e) {
    throw at(v, e.what());
  }
}

int network_dim(const Config& cfg) {
  const long long d = cfg.get_int("network", "dim", 1);
  if (d < 1 || d > 3) throw at(cfg.find("network", "dim"), "dim must be 1, 2 or 3");
  return static_cast<int>(d);
}

std::string target_label(const Config& cfg) {
  std::string name = cfg.get_string("target", "name", "abs");
  if (name == "ck_spline") name += "(k=" + cfg.get_string("target", "k", "1") + ")";
  if (name == "realizable") name += "(" + cfg.get_string("target", "activation", "tanh") + ")";
  if (name == "poly") name += "(" + cfg.get_string("target", "coeffs", "") + ")";
  return name;
}

RealFunction make_target(const Config& cfg) {
  const auto* v = cfg.find("target", "name");
  const std::string name = v ? v->text : "abs";
  if (name == "abs") return [](double x) { return std::abs(x); };
  if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  if (name == "ck_spline") {
    const long long k = cfg.get_int("target", "k", 1);
    if (k < 0 || k > 50) throw at(cfg.find("target", "k"), "k must lie in [0, 50]");
    return [k](double x) { return x > 0.0 ? std::pow(x, static_cast<double>(k + 1)) : 0.0; };
  }
  if (name == "realizable") {
    const auto* av = cfg.find("target", "activation");
    ActivationPtr act;
    try {
      act = activation(av ? av->text : cfg.get_string("network", "activation", "tanh"));
    } catch (const DomainError& e) {
      throw at(av, e.what());
    }
    return [act](double x) { return act->real(x); };
  }
  if (name == "poly") {
    const auto* cv = cfg.find("target", "coeffs");
    if (!cv) throw ConfigError("target 'poly' needs coeffs = c0 c1 ...");
    auto c = parse_numbers(*cv);
    return [c](double x) { return poly_eval(c, x); };
  }
  throw at(v, "unknown target '" + name + "' (known: abs runge ck_spline realizable poly)");
}

PointFunction make_target_multid(const Config& cfg, int dim) {
  const std::string name = cfg.get_string("target", "name", "abs_sum");
  if (name == "abs_sum")
    return [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    };
  if (name == "abs_x") return [](std::span<const double> x) { return std::abs(x[0]); };
  if (name == "product")
    return [](std::span<const double> x) {
      double s = 1.0;
      for (double v : x) s *= v;
      return s;
    };
  (void)dim;
  RealFunction f = make_target(cfg);
  return [f](std::span<const double> x) { return f(x[0]); };
}

Schedule make_schedule(const Config& cfg) {
  std::vector<ScheduleRow> rows;
  const auto explicit_rows = cfg.all("schedule", "row");
  if (!explicit_rows.empty()) {
    for (const char* k : {"m", "B", "L"})
      if (const auto* v = cfg.find("schedule", k))
        throw at(v, "explicit rows cannot be combined with generator key '" + std::string(k) + "'");
    for (const auto& v : explicit_rows) {
      const auto xs = parse_numbers(v);
      if (xs.size() != 3 || xs[0] != std::floor(xs[0]) || xs[0] < 0)
        throw at(&v, "row must be 'm B L' with integer m >= 0");
      rows.push_back({static_cast<int>(xs[0]), xs[1], xs[2]});
    }
  } else {
    const auto* mv = cfg.find("schedule", "m");
    if (!mv) throw ConfigError("[schedule] needs 'm' (with B and L rules) or 'row' lines");
    const auto degrees = parse_degrees(*mv);
    const ConfigValue one{"const 1", 0, 0};
    const auto* bv = cfg.find("schedule", "B");
    const auto* lv = cfg.find("schedule", "L");
    const Rule B = parse_rule(bv ? *bv : one);
    const Rule L = parse_rule(lv ? *lv : one);
    for (int m : degrees) rows.push_back({m, B(m), L(m)});
  }
  try {
    return Schedule(std::move(rows));
  } catch (const DomainError& e) {
    const auto* v = cfg.find("schedule", "m");
    throw at(v ? v : (explicit_rows.empty() ? nullptr : &explicit_rows.front()), e.what());
  }
}

ResidualMode make_mode(const Config& cfg) {
  const auto* kv = cfg.find("mode", "kind");
  const std::string kind = kv ? kv->text : "strip";
  if (kind == "ellipse") {
    EllipseMode m;
    m.rho = cfg.get_double("mode", "rho", 2.0);
    m.C_of_rho = cfg.get_double("mode", "C_of_rho", 0.0);
    if (!(m.rho > 1.0)) throw at(cfg.find("mode", "rho"), "rho must be > 1");
    return m;
  }
  if (kind == "strip") {
    StripMode m;
    m.safety = cfg.get_double("mode", "safety", 0.5);
    m.delta = cfg.get_double("mode", "delta", 0.0);
    if (!(m.safety > 0.0 && m.safety <= 1.0)) throw at(cfg.find("mode", "safety"), "safety must lie in (0, 1]");
    return m;
  }
  if (kind == "gevrey") {
    GevreyMode m;
    m.A = cfg.get_double("mode", "A", 0.0);
    m.c = cfg.get_double("mode", "c", 0.0);
    return m;
  }
  throw at(kv, "unknown mode '" + kind + "' (known: ellipse strip gevrey)");
}

std::string mode_comment(const ResidualMode& mode, const ActivationSpec& act, const Schedule& s) {
  std::ostringstream os;
  os << "mode=" << mode_name(mode);
  if (const auto* e = std::get_if<EllipseMode>(&mode)) {
    os << " rho=" << format_double(e->rho) << " C_of_rho="
       << format_double(e->C_of_rho > 0.0 ? e->C_of_rho : bernstein_constant(e->rho));
  } else if (const auto* st = std::get_if<StripMode>(&mode)) {
    os << " safety=" << format_double(st->safety);
    if (st->delta > 0.0) os << " delta=" << format_double(st->delta);
    os << " (constructive constants)";
  } else {
    const auto& g = std::get<GevreyMode>(mode);
    if (act.gevrey) {
      const auto k = gevrey_constants(*act.gevrey, s.rows().front().L);
      os << " s=" << format_double(act.gevrey->s)
         << " A=" << format_double(g.A > 0.0 ? g.A : k.A)
         << " c=" << (g.c > 0.0 ? format_double(g.c) : std::string("per-row"))
         << " (constructive constants, one admissible choice)";
    }
  }
  return os.str();
}

FitConfig make_fit_config(const Config& cfg, int dim, std::uint64_t seed) {
  FitConfig f = dim == 1 ? FitConfig{} : FitConfig::multid_defaults();
  f.n_restarts = static_cast<int>(cfg.get_int("fit", "restarts", f.n_restarts));
  f.max_iters = static_cast<int>(cfg.get_int("fit", "max_iters", f.max_iters));
  f.grid_size = static_cast<int>(cfg.get_int("fit", "grid_size", f.grid_size));
  if (cfg.has("fit", "grid_size")) f.report_grid_size = 4 * f.grid_size + 1;
  f.report_grid_size = static_cast<int>(cfg.get_int("fit", "report_grid_size", f.report_grid_size));
  // Results do not depend on the thread count.
  const auto hw = static_cast<long long>(std::max(1u, std::thread::hardware_concurrency()));
  f.threads = static_cast<int>(cfg.get_int("fit", "threads", hw));
  f.step_rule.initial_step = cfg.get_double("fit", "initial_step", f.step_rule.initial_step);
  f.step_rule.backtrack = cfg.get_double("fit", "backtrack", f.step_rule.backtrack);
  f.seed = seed;
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[fit] ") + e.what());
  }
  return f;
}

}  // namespace polybarrier::cli
