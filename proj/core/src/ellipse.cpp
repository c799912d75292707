#include "polybarrier/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polybarrier/error.hpp"

namespace polybarrier {

BernsteinEllipse::BernsteinEllipse(double rho, double dilation) : rho_(rho), dilation_(dilation) {
  if (!(rho > 1.0) || !std::isfinite(rho)) throw DomainError("BernsteinEllipse: rho must be > 1");
  if (!(dilation >= 1.0) || !std::isfinite(dilation))
    throw DomainError("BernsteinEllipse: dilation must be >= 1");
}

bool BernsteinEllipse::contains(Complex z, double slack) const {
  const double a = dilation_ * semi_major();
  const double b = dilation_ * semi_minor();
  const double q = (z.real() / a) * (z.real() / a) + (z.imag() / b) * (z.imag() / b);
  return q <= 1.0 + slack;
}

Complex joukowski(Complex w) {
  if (w == Complex(0.0, 0.0)) throw DomainError("joukowski: w = 0");
  return 0.5 * (w + 1.0 / w);
}

namespace {

Complex boundary_point(const BernsteinEllipse& e, double theta) {
  // Closed form of L * joukowski(rho e^{i theta}).
  return e.dilation() * Complex(e.semi_major() * std::cos(theta), e.semi_minor() * std::sin(theta));
}

double checked_abs(const ComplexFunction& h, Complex z) {
  const Complex v = h(z);
  const double a = std::abs(v);
  if (!std::isfinite(a)) {
    std::ostringstream os;
    os << "ellipse_norm: non-finite value at boundary point z = " << z.real()
       << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    throw DomainError(os.str());
  }
  return a;
}

struct Sampled {
  double max_value;
  std::vector<double> values;
};

Sampled sample(const ComplexFunction& h, const BernsteinEllipse& e, int n) {
  Sampled s{0.0, std::vector<double>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n;
    s.values[static_cast<std::size_t>(j)] = checked_abs(h, boundary_point(e, theta));
    s.max_value = std::max(s.max_value, s.values[static_cast<std::size_t>(j)]);
  }
  return s;
}

}  // namespace

std::vector<Complex> ellipse_boundary(const BernsteinEllipse& e, int n_samples) {
  if (n_samples < 8) throw DomainError("ellipse_boundary: need at least 8 samples");
  std::vector<Complex> z(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_samples;
    z[static_cast<std::size_t>(j)] = e.dilation() * joukowski(e.rho() * std::polar(1.0, theta));
  }
  return z;
}

double ellipse_norm(const ComplexFunction& h, const BernsteinEllipse& e, int n_samples) {
  if (n_samples < 8) throw DomainError("ellipse_norm: need at least 8 samples");
  constexpr int kMaxSamples = 1 << 16;
  int n = n_samples;
  Sampled s = sample(h, e, n);
  while (n < kMaxSamples) {
    Sampled finer = sample(h, e, 2 * n);
    const double change = std::abs(finer.max_value - s.max_value);
    n *= 2;
    s = std::move(finer);
    if (change <= 1e-8 * std::max(s.max_value, 1e-300)) break;
  }

  // Polish the largest few local maxima in theta.
  std::vector<int> peaks;
  for (int j = 0; j < n; ++j) {
    const double v = s.values[static_cast<std::size_t>(j)];
    const double l = s.values[static_cast<std::size_t>((j + n - 1) % n)];
    const double r = s.values[static_cast<std::size_t>((j + 1) % n)];
    if (v >= l && v >= r) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return s.values[static_cast<std::size_t>(a)] > s.values[static_cast<std::size_t>(b)];
  });
  if (peaks.size() > 4) peaks.resize(4);

  double best = s.max_value;
  const double dtheta = 2.0 * std::numbers::pi / n;
  constexpr double kInvPhi = 0.6180339887498949;
  for (int j : peaks) {
    const double centre = dtheta * j;
    double a = centre - dtheta;
    double b = centre + dtheta;
    auto score = [&](double th) { return checked_abs(h, boundary_point(e, th)); };
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = score(c);
    double fd = score(d);
    for (int it = 0; it < 60; ++it) {
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
    best = std::max({best, fc, fd});
  }
  return best;
}

double max_rho_for_strip(double delta, double L, double safety) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("max_rho_for_strip: delta <= 0");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("max_rho_for_strip: L <= 0");
  if (!(safety > 0.0 && safety <= 1.0)) throw DomainError("max_rho_for_strip: safety not in (0, 1]");
  const double b = safety * delta / L;
  return b + std::hypot(b, 1.0);
}

}  // namespace polybarrier
