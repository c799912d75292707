#include "polybarrier/fit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <thread>

#include "polybarrier/error.hpp"
#include "polybarrier/projection.hpp"

namespace polybarrier {

void FitConfig::validate() const {
  if (n_restarts < 1) throw DomainError("FitConfig: n_restarts must be >= 1");
  if (max_iters < 0) throw DomainError("FitConfig: max_iters must be >= 0");
  if (grid_size < 2) throw DomainError("FitConfig: grid_size must be >= 2");
  if (report_grid_size < 4 * grid_size)
    throw DomainError("FitConfig: report_grid_size must be >= 4 * grid_size");
  if (!(step_rule.initial_step > 0.0)) throw DomainError("FitConfig: initial step must be > 0");
  if (!(step_rule.backtrack > 0.0 && step_rule.backtrack < 1.0))
    throw DomainError("FitConfig: backtracking factor must lie in (0, 1)");
}

FitConfig FitConfig::multid_defaults() {
  FitConfig c;
  c.grid_size = 33;
  c.report_grid_size = 132;
  return c;
}

std::vector<double> tensor_chebyshev_grid(int dim, int per_axis) {
  if (dim < 1) throw DomainError("tensor_chebyshev_grid: dim < 1");
  if (per_axis < 1) throw DomainError("tensor_chebyshev_grid: per_axis < 1");
  const auto axis = chebyshev_points(per_axis - 1);
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= axis.size();
  std::vector<double> pts(total * static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < total; ++j) {
    std::size_t idx = j;
    for (int i = dim - 1; i >= 0; --i) {
      pts[j * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)] = axis[idx % axis.size()];
      idx /= axis.size();
    }
  }
  return pts;
}

namespace {

// Deterministic uniform variates independent of the standard library's
// distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

class LeastSquares {
 public:
  LeastSquares(std::span<const double> pts, std::span<const double> target, int dim, int m,
               const ActivationSpec& act)
      : pts_(pts), target_(target), dim_(dim), m_(m), act_(act),
        npts_(target.size()), phi_(static_cast<std::size_t>(m) * npts_),
        dphi_(static_cast<std::size_t>(m) * npts_), resid_(npts_) {}

  std::size_t size() const { return static_cast<std::size_t>(m_) * (1 + dim_); }

  double value(const std::vector<double>& theta) {
    std::fill(resid_.begin(), resid_.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      const double lam = theta[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < npts_; ++j) resid_[j] += lam * act_.real(ridge(theta, k, j));
    }
    double s = 0.0;
    for (std::size_t j = 0; j < npts_; ++j) {
      const double r = resid_[j] - target_[j];
      s += r * r;
    }
    return 0.5 * s / static_cast<double>(npts_);
  }

  double value_and_gradient(const std::vector<double>& theta, std::vector<double>& grad) {
    std::fill(resid_.begin(), resid_.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      const double lam = theta[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < npts_; ++j) {
        const double t = ridge(theta, k, j);
        const std::size_t idx = static_cast<std::size_t>(k) * npts_ + j;
        phi_[idx] = act_.real(t);
        dphi_[idx] = act_.slope(t);
        resid_[j] += lam * phi_[idx];
      }
    }
    double s = 0.0;
    for (std::size_t j = 0; j < npts_; ++j) {
      resid_[j] -= target_[j];
      s += resid_[j] * resid_[j];
    }
    const double inv_n = 1.0 / static_cast<double>(npts_);
    grad.assign(size(), 0.0);
    for (int k = 0; k < m_; ++k) {
      const double lam = theta[static_cast<std::size_t>(k)];
      double gl = 0.0;
      for (std::size_t j = 0; j < npts_; ++j) {
        const std::size_t idx = static_cast<std::size_t>(k) * npts_ + j;
        gl += resid_[j] * phi_[idx];
        const double w = resid_[j] * lam * dphi_[idx];
        for (int i = 0; i < dim_; ++i)
          grad[alpha_index(k, i)] += w * pts_[j * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i)];
      }
      grad[static_cast<std::size_t>(k)] = gl * inv_n;
      for (int i = 0; i < dim_; ++i) grad[alpha_index(k, i)] *= inv_n;
    }
    return 0.5 * s * inv_n;
  }

  std::size_t alpha_index(int k, int i) const {
    return static_cast<std::size_t>(m_) + static_cast<std::size_t>(k) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(i);
  }

 private:
  double ridge(const std::vector<double>& theta, int k, std::size_t j) const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i)
      t += theta[alpha_index(k, i)] * pts_[j * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i)];
    return t;
  }

  std::span<const double> pts_;
  std::span<const double> target_;
  int dim_;
  int m_;
  const ActivationSpec& act_;
  std::size_t npts_;
  std::vector<double> phi_;
  std::vector<double> dphi_;
  std::vector<double> resid_;
};

void project(std::vector<double>& theta, int m, int dim, const ConstraintSet& cs) {
  const auto lam = l1_ball_projection(std::span<const double>(theta.data(), static_cast<std::size_t>(m)), cs.B);
  std::copy(lam.begin(), lam.end(), theta.begin());
  for (int k = 0; k < m; ++k)
    project_to_l2_ball(std::span<double>(theta.data() + m + static_cast<std::ptrdiff_t>(k) * dim,
                                         static_cast<std::size_t>(dim)),
                       cs.L);
}

struct RestartOutcome {
  std::vector<double> theta;
  double l_inf = std::numeric_limits<double>::infinity();
};

// Spectral projected gradient with a nonmonotone Armijo backtracking search.
std::vector<double> spg(LeastSquares& ls, std::vector<double> theta, int m, int dim,
                        const ConstraintSet& cs, const FitConfig& cfg) {
  constexpr double kSigmaMin = 1e-10;
  constexpr double kSigmaMax = 1e10;
  constexpr std::size_t kMemory = 10;
  constexpr double kArmijo = 1e-4;

  const std::size_t n = theta.size();
  std::vector<double> grad;
  std::vector<double> grad_new;
  std::vector<double> trial(n);
  std::vector<double> dir(n);
  double f = ls.value_and_gradient(theta, grad);
  double sigma = std::clamp(cfg.step_rule.initial_step, kSigmaMin, kSigmaMax);
  std::deque<double> history{f};

  for (int it = 0; it < cfg.max_iters; ++it) {
    // Stationarity: || P(theta - grad) - theta ||_inf.
    for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] - grad[i];
    project(trial, m, dim, cs);
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) pg = std::max(pg, std::abs(trial[i] - theta[i]));
    if (pg <= 1e-13 || f <= 1e-30) break;

    for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] - sigma * grad[i];
    project(trial, m, dim, cs);
    double gtd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = trial[i] - theta[i];
      gtd += grad[i] * dir[i];
    }
    if (gtd >= 0.0) break;

    const double fmax = *std::max_element(history.begin(), history.end());
    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    while (step > 1e-16) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] + step * dir[i];
      f_new = ls.value(trial);
      if (f_new <= fmax + kArmijo * step * gtd) {
        accepted = true;
        break;
      }
      step *= cfg.step_rule.backtrack;
    }
    if (!accepted) break;

    // Convex combination of feasible points; re-project to absorb rounding.
    project(trial, m, dim, cs);
    f_new = ls.value_and_gradient(trial, grad_new);
    double sty = 0.0;
    double sts = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = trial[i] - theta[i];
      const double y = grad_new[i] - grad[i];
      sty += s * y;
      sts += s * s;
    }
    sigma = sty > 0.0 ? std::clamp(sts / sty, kSigmaMin, kSigmaMax) : kSigmaMax;
    theta.swap(trial);
    grad.swap(grad_new);
    f = f_new;
    history.push_back(f);
    if (history.size() > kMemory) history.pop_front();
    if (sts == 0.0) break;
  }
  return theta;
}

NetworkParams to_network(const std::vector<double>& theta, int m, int dim, ActivationPtr act) {
  NetworkParams net = zero_network(std::move(act), dim);
  net.lambdas.assign(theta.begin(), theta.begin() + m);
  net.alphas.assign(theta.begin() + m, theta.end());
  return net;
}

double l_inf_error(const NetworkParams& net, const PointFunction& f, std::span<const double> pts,
                   int dim) {
  const std::size_t npts = pts.size() / static_cast<std::size_t>(dim);
  double worst = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    const auto x = pts.subspan(j * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    worst = std::max(worst, std::abs(f(x) - eval_real(net, x)));
  }
  return worst;
}

}  // namespace

FitResult fit_l1_constrained(const PointFunction& f, int dim, int m, const ConstraintSet& cs,
                             const FitConfig& cfg, ActivationPtr act) {
  if (m < 1) throw DomainError("fit_l1_constrained: width must be >= 1");
  if (dim < 1 || dim > 3) throw DomainError("fit_l1_constrained: dim must be 1, 2 or 3");
  if (!act) throw DomainError("fit_l1_constrained: no activation");
  cs.validate();
  cfg.validate();

  const auto pts = tensor_chebyshev_grid(dim, cfg.grid_size);
  const auto report_pts = tensor_chebyshev_grid(dim, cfg.report_grid_size);
  const std::size_t npts = pts.size() / static_cast<std::size_t>(dim);
  std::vector<double> target(npts);
  for (std::size_t j = 0; j < npts; ++j)
    target[j] = f(std::span<const double>(pts).subspan(j * static_cast<std::size_t>(dim),
                                                       static_cast<std::size_t>(dim)));

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.n_restarts));
  auto run = [&](int r) {
    SplitMix64 rng(cfg.seed + static_cast<std::uint64_t>(r));
    std::vector<double> theta(static_cast<std::size_t>(m) * (1 + static_cast<std::size_t>(dim)));
    for (int k = 0; k < m; ++k) theta[static_cast<std::size_t>(k)] = rng.uniform(-cs.B / m, cs.B / m);
    for (std::size_t i = static_cast<std::size_t>(m); i < theta.size(); ++i)
      theta[i] = rng.uniform(-cs.L, cs.L);
    project(theta, m, dim, cs);
    LeastSquares ls(pts, target, dim, m, *act);
    theta = spg(ls, std::move(theta), m, dim, cs, cfg);
    project(theta, m, dim, cs);
    auto& out = outcomes[static_cast<std::size_t>(r)];
    out.l_inf = l_inf_error(to_network(theta, m, dim, act), f, report_pts, dim);
    out.theta = std::move(theta);
  };

  const int threads = std::max(1, std::min(cfg.threads, cfg.n_restarts));
  if (threads == 1) {
    for (int r = 0; r < cfg.n_restarts; ++r) run(r);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int r = t; r < cfg.n_restarts; r += threads) run(r);
      });
  }

  int best = 0;
  for (int r = 1; r < cfg.n_restarts; ++r)
    if (outcomes[static_cast<std::size_t>(r)].l_inf < outcomes[static_cast<std::size_t>(best)].l_inf)
      best = r;
  FitResult res;
  res.network = to_network(outcomes[static_cast<std::size_t>(best)].theta, m, dim, std::move(act));
  res.l_inf_error = outcomes[static_cast<std::size_t>(best)].l_inf;
  res.restart = best;
  return res;
}

FitResult fit_l1_constrained(const RealFunction& f, int m, const ConstraintSet& cs,
                             const FitConfig& cfg, ActivationPtr act) {
  return fit_l1_constrained([&f](std::span<const double> x) { return f(x[0]); }, 1, m, cs, cfg,
                            std::move(act));
}

}  // namespace polybarrier
