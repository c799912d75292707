#include "polybarrier/jet.hpp"

#include <cmath>

#include "polybarrier/error.hpp"

namespace polybarrier {

Jet::Jet(double value, int order) {
  if (order < 0) throw DomainError("Jet: negative order");
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
  c_[0] = value;
}

Jet Jet::variable(double t0, int order) {
  Jet j(t0, order);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative(int k) const {
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return coefficient(k) * factorial;
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  std::vector<double> r(c_.size(), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) r[k] += c_[j] * o.c_[k - j];
  c_ = std::move(r);
  return *this;
}

// q = a / b  <=>  a = q b, solved term by term.
Jet& Jet::operator/=(const Jet& o) {
  std::vector<double> q(c_.size(), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    double s = c_[k];
    for (std::size_t j = 1; j <= k; ++j) s -= o.c_[j] * q[k - j];
    q[k] = s / o.c_[0];
  }
  c_ = std::move(q);
  return *this;
}

Jet& Jet::operator+=(double a) {
  c_[0] += a;
  return *this;
}

Jet& Jet::operator-=(double a) {
  c_[0] -= a;
  return *this;
}

Jet& Jet::operator*=(double a) {
  for (auto& v : c_) v *= a;
  return *this;
}

Jet& Jet::operator/=(double a) {
  for (auto& v : c_) v /= a;
  return *this;
}

Jet operator-(Jet a) {
  for (auto& v : a.c_) v = -v;
  return a;
}

Jet operator-(double a, const Jet& b) { return -b + a; }

Jet operator/(double a, const Jet& b) {
  Jet num(a, b.order());
  return num /= b;
}

// e = exp(u): k e_k = sum_{j=1}^k j u_j e_{k-j}.
Jet exp(const Jet& u) {
  Jet e(std::exp(u.c_[0]), u.order());
  for (std::size_t k = 1; k < u.c_.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += static_cast<double>(j) * u.c_[j] * e.c_[k - j];
    e.c_[k] = s / static_cast<double>(k);
  }
  return e;
}

void Jet::sin_cos(const std::vector<double>& u, std::vector<double>& s,
                  std::vector<double>& c) {
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (std::size_t k = 1; k < u.size(); ++k) {
    double ss = 0.0;
    double cs = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      ss += static_cast<double>(j) * u[j] * c[k - j];
      cs -= static_cast<double>(j) * u[j] * s[k - j];
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = cs / static_cast<double>(k);
  }
}

Jet sin(const Jet& u) {
  Jet s(0.0, u.order());
  Jet c(0.0, u.order());
  Jet::sin_cos(u.c_, s.c_, c.c_);
  return s;
}

Jet cos(const Jet& u) {
  Jet s(0.0, u.order());
  Jet c(0.0, u.order());
  Jet::sin_cos(u.c_, s.c_, c.c_);
  return c;
}

}  // namespace polybarrier
