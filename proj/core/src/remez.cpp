#include "polybarrier/remez.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace polybarrier {

namespace {

struct Extremum {
  double x;
  double r;
};

struct LevelledSystem {
  std::vector<double> coeffs;
  double levelled;
};

// sum_k a_k T_k(x_i) + (-1)^i E = f(x_i) on the m + 2 reference points.
LevelledSystem solve_reference(const std::vector<double>& ref, const std::vector<double>& fref,
                               int m) {
  const int n = m + 2;
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  std::vector<double> t(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i < n; ++i) {
    chebyshev_t_values(ref[static_cast<std::size_t>(i)], t);
    for (int k = 0; k <= m; ++k) a(i, k) = t[static_cast<std::size_t>(k)];
    a(i, m + 1) = (i % 2 == 0) ? 1.0 : -1.0;
    b(i) = fref[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd sol = a.partialPivLu().solve(b);
  LevelledSystem out;
  out.coeffs.assign(sol.data(), sol.data() + m + 1);
  out.levelled = sol(m + 1);
  return out;
}

// Golden-section maximisation of sign * r on [lo, hi].
Extremum refine(const RealFunction& f, std::span<const double> coeffs, double lo, double hi,
                double sign) {
  constexpr double kInvPhi = 0.6180339887498949;
  auto score = [&](double x) { return sign * (f(x) - clenshaw(coeffs, x)); };
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = score(c);
  double fd = score(d);
  for (int it = 0; it < 80 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = score(d);
    }
  }
  return fc >= fd ? Extremum{c, sign * fc} : Extremum{d, sign * fd};
}

// Classical one-point exchange: x enters the reference so that the sign
// pattern sign0 * (-1)^i, with x carrying sign sx, keeps alternating.
bool single_exchange(std::vector<double>& ref, double x, int sx, int sign0) {
  auto sign_at = [sign0](std::size_t i) { return i % 2 == 0 ? sign0 : -sign0; };
  if (std::find(ref.begin(), ref.end(), x) != ref.end()) return false;
  const auto pos = static_cast<std::size_t>(std::upper_bound(ref.begin(), ref.end(), x) - ref.begin());
  if (pos == 0) {
    if (sign_at(0) == sx) {
      ref.front() = x;
    } else {
      ref.pop_back();
      ref.insert(ref.begin(), x);
    }
  } else if (pos == ref.size()) {
    if (sign_at(ref.size() - 1) == sx) {
      ref.back() = x;
    } else {
      ref.erase(ref.begin());
      ref.push_back(x);
    }
  } else {
    ref[sign_at(pos - 1) == sx ? pos - 1 : pos] = x;
  }
  return true;
}

}  // namespace

EquioscillationSolution remez_best_approx(const RealFunction& f, int m,
                                          const RemezOptions& options) {
  if (m < 0) throw DomainError("remez_best_approx: negative degree");
  if (!(options.tol > 0.0)) throw DomainError("remez_best_approx: tol must be positive");
  if (options.oversampling < 2) throw DomainError("remez_best_approx: oversampling < 2");

  const int n_ref = m + 2;
  const auto grid = chebyshev_points(options.oversampling * (m + 1));
  std::vector<double> fgrid(grid.size());
  double fscale = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    fgrid[j] = f(grid[j]);
    if (!std::isfinite(fgrid[j])) {
      std::ostringstream os;
      os << "remez_best_approx: non-finite f(" << grid[j] << ")";
      throw DomainError(os.str());
    }
    fscale = std::max(fscale, std::abs(fgrid[j]));
  }
  const double noise_floor = 1e3 * std::numeric_limits<double>::epsilon() * fscale;

  // Extrema of T_{m+1}.
  std::vector<double> ref(static_cast<std::size_t>(n_ref));
  for (int i = 0; i < n_ref; ++i)
    ref[static_cast<std::size_t>(i)] = -std::cos(std::numbers::pi * i / (m + 1));
  std::vector<double> fref(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) fref[i] = f(ref[i]);

  double last_gap = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const LevelledSystem sys = solve_reference(ref, fref, m);
    const double lev = std::abs(sys.levelled);
    std::span<const double> coeffs(sys.coeffs);

    std::vector<double> r(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) r[j] = fgrid[j] - clenshaw(coeffs, grid[j]);

    // Candidate extrema: local maxima of |r| on the grid (refined), plus the
    // current reference whose residuals alternate with magnitude |E|.
    std::vector<Extremum> cand;
    cand.reserve(grid.size() / 4 + ref.size());
    double max_abs = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double s = r[j] >= 0.0 ? 1.0 : -1.0;
      const double v = s * r[j];
      const bool left_ok = j == 0 || v >= s * r[j - 1];
      const bool right_ok = j + 1 == grid.size() || v >= s * r[j + 1];
      if (!left_ok || !right_ok) continue;
      Extremum e{grid[j], r[j]};
      const double lo = j == 0 ? grid[j] : grid[j - 1];
      const double hi = j + 1 == grid.size() ? grid[j] : grid[j + 1];
      if (hi > lo) {
        const Extremum refined = refine(f, coeffs, lo, hi, s);
        if (s * refined.r > v) e = refined;
      }
      max_abs = std::max(max_abs, std::abs(e.r));
      if (std::abs(e.r) >= lev) cand.push_back(e);
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double ri = fref[i] - clenshaw(coeffs, ref[i]);
      cand.push_back({ref[i], ri});
      max_abs = std::max(max_abs, std::abs(ri));
    }
    std::sort(cand.begin(), cand.end(), [](const Extremum& a, const Extremum& b) {
      return a.x < b.x;
    });

    // Collapse runs of equal sign to their largest member.
    std::vector<Extremum> alt;
    for (const auto& e : cand) {
      if (!alt.empty() && std::signbit(alt.back().r) == std::signbit(e.r)) {
        if (std::abs(e.r) > std::abs(alt.back().r)) alt.back() = e;
      } else {
        alt.push_back(e);
      }
    }
    while (static_cast<int>(alt.size()) > n_ref) {
      if (std::abs(alt.front().r) < std::abs(alt.back().r)) alt.erase(alt.begin());
      else alt.pop_back();
    }

    const double gap = max_abs - lev;
    last_gap = gap;
    const bool converged = gap <= options.tol * max_abs || gap <= noise_floor;
    const bool exchange_ok = static_cast<int>(alt.size()) == n_ref;

    if (!converged && !exchange_ok) {
      // Degenerate reference (typically E = 0 on a symmetric reference):
      // fall back to exchanging the single global maximiser.
      const auto top = std::max_element(cand.begin(), cand.end(), [](const Extremum& a, const Extremum& b) {
        return std::abs(a.r) < std::abs(b.r);
      });
      if (!single_exchange(ref, top->x, top->r >= 0.0 ? 1 : -1, sys.levelled >= 0.0 ? 1 : -1)) {
        throw RemezError("remez_best_approx: exchange produced fewer than m+2 alternation points",
                         ref, gap);
      }
      for (std::size_t i = 0; i < ref.size(); ++i) fref[i] = f(ref[i]);
      continue;
    }
    if (converged) {
      EquioscillationSolution sol;
      sol.polynomial = ChebyshevSeries(sys.coeffs);
      sol.error = max_abs;
      sol.levelled_error = lev;
      sol.iterations = iter;
      if (exchange_ok) {
        for (const auto& e : alt) {
          sol.alternation_points.push_back(e.x);
          sol.alternation_signs.push_back(e.r >= 0.0 ? 1 : -1);
        }
      } else {
        const int s0 = sys.levelled >= 0.0 ? 1 : -1;
        for (std::size_t i = 0; i < ref.size(); ++i) {
          sol.alternation_points.push_back(ref[i]);
          sol.alternation_signs.push_back(i % 2 == 0 ? s0 : -s0);
        }
      }
      return sol;
    }

    for (std::size_t i = 0; i < alt.size(); ++i) {
      ref[i] = alt[i].x;
      fref[i] = f(ref[i]);
    }
  }
  std::ostringstream os;
  os << "remez_best_approx: no convergence after " << options.max_iterations
     << " iterations (degree " << m << ", gap " << last_gap << ")";
  throw RemezError(os.str(), ref, last_gap);
}

double decay_rate_fit(const std::vector<DecayPoint>& errors) {
  std::vector<DecayPoint> pts;
  for (const auto& p : errors)
    if (p.error > 0.0 && std::isfinite(p.error)) pts.push_back(p);
  if (pts.size() < 3) throw DomainError("decay_rate_fit: need at least 3 positive errors");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : pts) {
    mx += p.m;
    my += std::log(p.error);
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& p : pts) {
    sxy += (p.m - mx) * (std::log(p.error) - my);
    sxx += (p.m - mx) * (p.m - mx);
  }
  if (sxx == 0.0) throw DomainError("decay_rate_fit: all degrees coincide");
  return std::max(1.0, std::exp(-sxy / sxx));
}

}  // namespace polybarrier
