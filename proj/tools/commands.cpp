#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "experiment.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/format.hpp"
#include "polybarrier/minimax.hpp"
#include "svg.hpp"

namespace polybarrier::cli {

namespace {

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"target", {"name", "k", "activation", "coeffs"}},
      {"network", {"activation", "dim"}},
      {"schedule", {"m", "B", "L", "row"}},
      {"mode", {"kind", "rho", "C_of_rho", "safety", "delta", "A", "c"}},
      {"fit", {"restarts", "max_iters", "grid_size", "report_grid_size", "threads", "initial_step",
               "backtrack"}},
      {"remez", {"m_min", "m_max", "tol", "max_iterations"}},
      {"ellipse", {"rho", "L", "samples"}},
      {"regime", {"mode", "s", "A", "c"}},
      {"barron", {"network", "L", "n_grid", "count", "width", "B", "L_max"}},
      {"multid", {"grid_per_axis", "safety", "delta"}},
  };
  return keys;
}

class Output {
 public:
  explicit Output(const GlobalOptions& o) : opts_(o) {
    std::filesystem::create_directories(o.out_dir);
  }
  bool svg() const { return opts_.format == "csv+svg"; }
  std::string write(const std::string& file, const std::string& content) const {
    const auto path = std::filesystem::path(opts_.out_dir) / file;
    std::ofstream os(path, std::ios::binary);
    os << content;
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return path.string();
  }

 private:
  const GlobalOptions& opts_;
};

std::string header(const GlobalOptions& o, const std::vector<std::string>& comments) {
  std::string s = "# seed=" + std::to_string(o.seed) + "\n";
  for (const auto& c : comments) s += "# " + c + "\n";
  return s;
}

std::mt19937_64::result_type next(std::mt19937_64& g) { return g(); }
double uniform(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(next(g) >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int cmd_remez(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  const RealFunction f = make_target(cfg);
  const long long m_min = cfg.get_int("remez", "m_min", 0);
  const long long m_max = cfg.get_int("remez", "m_max", 20);
  RemezOptions ro;
  ro.tol = cfg.get_double("remez", "tol", ro.tol);
  ro.max_iterations = static_cast<int>(cfg.get_int("remez", "max_iterations", ro.max_iterations));
  if (m_min < 0 || m_max < m_min || m_max > 2000)
    throw ConfigError("[remez] needs 0 <= m_min <= m_max <= 2000");
  std::ostringstream csv;
  csv << header(o, {"target=" + target_label(cfg)}) << "m,E_m,rho_hat\n";
  std::vector<DecayPoint> pts;
  Series e{"E_m(f)", {}, {}};
  for (long long m = m_min; m <= m_max; ++m) {
    const auto sol = remez_best_approx(f, static_cast<int>(m), ro);
    pts.push_back({static_cast<int>(m), sol.error});
    double rho_hat = std::numeric_limits<double>::quiet_NaN();
    try {
      rho_hat = decay_rate_fit(pts);
    } catch (const DomainError&) {
    }
    csv << m << ',' << format_double(sol.error) << ',' << format_double(rho_hat) << '\n';
    e.x.push_back(static_cast<double>(m));
    e.y.push_back(sol.error);
  }
  Output w(o);
  out << "wrote " << w.write("remez.csv", csv.str()) << '\n';
  if (w.svg())
    out << "wrote "
        << w.write("remez.svg", svg_plot("Best polynomial approximation error, " + target_label(cfg),
                                         "degree m", "E_m(f)", {e}, true))
        << '\n';
  return kOk;
}

int cmd_ellipse_norm(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  const ActivationPtr act = make_activation(cfg);
  const auto rhos = cfg.has("ellipse", "rho") ? cfg.get_doubles("ellipse", "rho") : std::vector<double>{2.0};
  const double L = cfg.get_double("ellipse", "L", 1.0);
  const int samples = static_cast<int>(cfg.get_int("ellipse", "samples", 4096));
  std::ostringstream csv;
  csv << header(o, {"activation=" + act->name}) << "rho,L,M\n";
  for (double rho : rhos) {
    const BernsteinEllipse e(rho, L);
    if (!act->analyticity.covers(e))
      throw DomainError("activation '" + act->name + "' is not holomorphic on L E_rho for rho = " +
                        format_double(rho) + ", L = " + format_double(L));
    csv << format_double(rho) << ',' << format_double(L) << ','
        << format_double(ellipse_norm(act->complex, e, samples)) << '\n';
  }
  out << "wrote " << Output(o).write("ellipse_norm.csv", csv.str()) << '\n';
  return kOk;
}

int cmd_fit(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  const ActivationPtr act = make_activation(cfg);
  const int dim = network_dim(cfg);
  const Schedule sched = make_schedule(cfg);
  const FitConfig fc = make_fit_config(cfg, dim, o.seed);
  const PointFunction f = make_target_multid(cfg, dim);
  Output w(o);
  std::ostringstream csv;
  csv << header(o, {"target=" + target_label(cfg) + " activation=" + act->name +
                    " dim=" + std::to_string(dim)})
      << "m,B,L,l_inf_error,restart\n";
  for (const auto& row : sched.rows()) {
    if (row.m < 1) throw ConfigError("fit needs widths m >= 1");
    const ConstraintSet cs{row.B, row.L};
    const FitResult r = fit_l1_constrained(f, dim, row.m, cs, fc, act);
    if (!cs.satisfied_by(r.network)) throw NumericalError("fitted network violates its constraints");
    csv << row.m << ',' << format_double(row.B) << ',' << format_double(row.L) << ','
        << format_double(r.l_inf_error) << ',' << r.restart << '\n';
    std::ostringstream net;
    write_network(net, r.network, cs);
    w.write("network_m" + std::to_string(row.m) + ".txt", net.str());
  }
  out << "wrote " << w.write("fit.csv", csv.str()) << '\n';
  return kOk;
}

int finish_barrier(const BarrierReport& rep, const std::string& stem, const std::string& title,
                   const std::vector<std::string>& comments, const GlobalOptions& o,
                   std::ostream& out) {
  Output w(o);
  out << "wrote " << w.write(stem + ".csv", rep.to_csv(o.seed, comments)) << '\n';
  if (w.svg()) {
    Series e{"E_m(f)", {}, {}}, n{"net error", {}, {}}, r{"residual r_m", {}, {}};
    for (const auto& row : rep.rows) {
      e.x.push_back(row.m);
      e.y.push_back(row.E_m_f);
      n.x.push_back(row.m);
      n.y.push_back(row.net_error);
      r.x.push_back(row.m);
      r.y.push_back(row.residual);
    }
    out << "wrote " << w.write(stem + ".svg", svg_plot(title, "m", "error", {e, n, r}, true)) << '\n';
  }
  bool ok = true;
  for (const auto& row : rep.rows) {
    if (row.slack < -1e-9) {
      out << "violation: m=" << row.m << " slack=" << format_double(row.slack) << '\n';
      ok = false;
    }
    if (!row.network_certified) {
      out << "violation: m=" << row.m << " E_m(network)=" << format_double(row.network_poly_error)
          << " exceeds residual " << format_double(row.residual) << '\n';
      ok = false;
    }
  }
  out << (ok ? "barrier: all rows certified" : "barrier: certificate violated") << '\n';
  return ok ? kOk : kCertificateViolation;
}

int cmd_barrier(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  if (network_dim(cfg) != 1) throw ConfigError("barrier is one-dimensional; use multid-barrier for dim 2 or 3");
  const ActivationPtr act = make_activation(cfg);
  const Schedule sched = make_schedule(cfg);
  const ResidualMode mode = make_mode(cfg);
  const FitConfig fc = make_fit_config(cfg, 1, o.seed);
  BarrierOptions bo;
  if (o.break_constant) bo.residual_scale = 0.0;
  const BarrierReport rep = verify_barrier(make_target(cfg), act, sched, mode, fc, bo);
  std::vector<std::string> comments = {
      "target=" + target_label(cfg) + " activation=" + act->name,
      mode_comment(mode, *act, sched),
      "sharpness_ratio is a finite-schedule proxy for the asymptotic tightness",
  };
  if (o.break_constant) comments.push_back("negative control: residual constant set to 0");
  return finish_barrier(rep, "barrier", "Barrier report, " + target_label(cfg) + " / " + act->name,
                        comments, o, out);
}

int cmd_multid_barrier(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  const int dim = static_cast<int>(cfg.get_int("network", "dim", 2));
  if (dim < 2 || dim > 3) throw ConfigError("multid-barrier needs [network] dim = 2 or 3");
  const ActivationPtr act = make_activation(cfg);
  const Schedule sched = make_schedule(cfg);
  const FitConfig fc = make_fit_config(cfg, dim, o.seed);
  MultidOptions mo;
  mo.safety = cfg.get_double("multid", "safety", mo.safety);
  mo.delta = cfg.get_double("multid", "delta", mo.delta);
  mo.grid_per_axis = static_cast<int>(cfg.get_int("multid", "grid_per_axis", 0));
  if (o.break_constant) mo.residual_scale = 0.0;
  const BarrierReport rep = verify_barrier_multid(make_target_multid(cfg, dim), act, sched, dim, fc, mo);
  std::vector<std::string> comments = {
      "target=" + cfg.get_string("target", "name", "abs_sum") + " activation=" + act->name +
          " dim=" + std::to_string(dim),
      "mode=strip safety=" + format_double(mo.safety) +
          " ridge range L*sqrt(d) (constructive constants); E_m_f is a grid lower bound",
      "sharpness_ratio is a finite-schedule proxy for the asymptotic tightness",
  };
  if (o.break_constant) comments.push_back("negative control: residual constant set to 0");
  return finish_barrier(rep, "multid_barrier", "Barrier report, d = " + std::to_string(dim), comments, o,
                        out);
}

int cmd_regime(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  const Schedule sched = make_schedule(cfg);
  RegimeParams p;
  const auto* mv = cfg.find("regime", "mode");
  const std::string mode = mv ? mv->text : "analytic";
  if (mode == "analytic") p.mode = RegimeMode::analytic;
  else if (mode == "strip") p.mode = RegimeMode::strip;
  else if (mode == "gevrey") p.mode = RegimeMode::gevrey;
  else throw mv ? ConfigError("unknown regime mode '" + mode + "' (known: analytic strip gevrey)", mv->line, mv->column)
                : ConfigError("unknown regime mode");
  p.s = cfg.get_double("regime", "s", p.s);
  p.A = cfg.get_double("regime", "A", p.A);
  p.c = cfg.get_double("regime", "c", p.c);
  const RegimeResult r = regime_classification(sched, p);
  const std::string line = std::string(regime_name(r.regime)) + " statistic=" + format_double(r.statistic);
  std::ostringstream csv;
  csv << header(o, {"regime=" + line, "mode=" + mode}) << "m,B,L,x,residual\n";
  Series xs{"x_m", {}, {}};
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const auto& row = sched.rows()[i];
    csv << row.m << ',' << format_double(row.B) << ',' << format_double(row.L) << ','
        << format_double(r.x[i]) << ',' << format_double(r.residual[i]) << '\n';
    xs.x.push_back(row.m);
    xs.y.push_back(r.x[i]);
  }
  Output w(o);
  out << line << '\n';
  out << "wrote " << w.write("regime.csv", csv.str()) << '\n';
  if (w.svg())
    out << "wrote " << w.write("regime.svg", svg_plot("Growth statistic x_m (" + line + ")", "m", "x_m", {xs}, false))
        << '\n';
  return kOk;
}

int cmd_barron_check(const Config& cfg, const GlobalOptions& o, std::ostream& out) {
  std::vector<NetworkParams> nets;
  if (const auto* nv = cfg.find("barron", "network")) {
    std::ifstream in(nv->text);
    if (!in) throw ConfigError("cannot open network file '" + nv->text + "'", nv->line, nv->column);
    nets.push_back(read_network(in).first);
  } else {
    const ActivationPtr act = make_activation(cfg);
    const int dim = network_dim(cfg);
    const long long count = cfg.get_int("barron", "count", 100);
    const long long width = cfg.get_int("barron", "width", 8);
    const double B = cfg.get_double("barron", "B", 1.0);
    const double L_max = cfg.get_double("barron", "L_max", 3.0);
    if (count < 1 || width < 1 || !(B > 0.0) || !(L_max > 0.0))
      throw ConfigError("[barron] needs count, width >= 1 and B, L_max > 0");
    std::mt19937_64 gen(o.seed);
    for (long long i = 0; i < count; ++i) {
      NetworkParams net{{}, {}, act, dim};
      double l1 = 0.0;
      for (long long k = 0; k < width; ++k) {
        net.lambdas.push_back(uniform(gen, -1.0, 1.0));
        l1 += std::abs(net.lambdas.back());
        for (int j = 0; j < dim; ++j) net.alphas.push_back(uniform(gen, -L_max, L_max) / std::sqrt(dim));
      }
      const double scale = B * uniform(gen, 0.5, 1.0) / l1;
      for (double& l : net.lambdas) l *= scale;
      nets.push_back(std::move(net));
    }
  }
  const bool median = cfg.get_string("barron", "L", "median") == "median";
  const int n_grid = static_cast<int>(cfg.get_int("barron", "n_grid", nets.front().dim == 1 ? 1001 : 41));
  std::ostringstream csv;
  csv << header(o, {"activation=" + nets.front().activation->name}) << "index,L,bound,measured,pass\n";
  bool ok = true;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    double L;
    if (median) {
      std::vector<double> norms;
      for (std::size_t k = 0; k < nets[i].width(); ++k) norms.push_back(nets[i].alpha_norm(k));
      if (norms.empty()) norms.push_back(1.0);
      std::sort(norms.begin(), norms.end());
      L = norms[norms.size() / 2];
      if (!(L > 0.0)) L = 1.0;
    } else {
      L = cfg.get_double("barron", "L");
    }
    const BarronCheck c = barron_remainder_check(nets[i], L, n_grid);
    ok = ok && c.pass;
    csv << i << ',' << format_double(L) << ',' << format_double(c.bound) << ','
        << format_double(c.measured) << ',' << (c.pass ? 1 : 0) << '\n';
  }
  out << "wrote " << Output(o).write("barron.csv", csv.str()) << '\n';
  out << (ok ? "barron-check: all networks pass" : "barron-check: remainder bound violated") << '\n';
  return ok ? kOk : kCertificateViolation;
}

using Handler = std::function<int(const Config&, const GlobalOptions&, std::ostream&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"remez", cmd_remez},           {"ellipse-norm", cmd_ellipse_norm},
      {"fit", cmd_fit},               {"barrier", cmd_barrier},
      {"regime", cmd_regime},         {"barron-check", cmd_barron_check},
      {"multid-barrier", cmd_multid_barrier},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"remez",  "ellipse-norm", "fit",           "barrier",
                                                 "regime", "barron-check", "multid-barrier"};
  return names;
}

int execute(const std::string& name, const Config& cfg, const GlobalOptions& opts, std::ostream& out) {
  const auto it = handlers().find(name);
  if (it == handlers().end()) throw ConfigError("unknown command '" + name + "'");
  if (opts.format != "csv" && opts.format != "csv+svg")
    throw ConfigError("--format must be csv or csv+svg");
  cfg.check_known(known_keys());
  return it->second(cfg, opts, out);
}

int run_command(const std::string& name, const GlobalOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    Config cfg = opts.config_path.empty() ? Config{} : Config::load(opts.config_path);
    for (const auto& s : opts.overrides) cfg.set(s);
    return execute(name, cfg, opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace polybarrier::cli
