#pragma once

#include <vector>

namespace polybarrier {

/// Truncated Taylor series c_0 + c_1 h + ... + c_n h^n of a function around a
/// point, with c_k = f^{(k)}(t0) / k!. Arithmetic propagates the expansion
/// exactly up to rounding, so composing catalog formulas on a Jet yields all
/// derivatives through order n without finite differences.
class Jet {
 public:
  Jet(double value, int order);

  /// The independent variable t expanded at t0.
  static Jet variable(double t0, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double coefficient(int k) const { return c_[static_cast<std::size_t>(k)]; }
  /// f^{(k)}(t0).
  double derivative(int k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double a);
  Jet& operator-=(double a);
  Jet& operator*=(double a);
  Jet& operator/=(double a);

  friend Jet operator-(Jet a);
  friend Jet exp(const Jet& u);
  friend Jet sin(const Jet& u);
  friend Jet cos(const Jet& u);

 private:
  static void sin_cos(const std::vector<double>& u, std::vector<double>& s,
                      std::vector<double>& c);

  std::vector<double> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator-(Jet a, double b) { return a -= b; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator/(Jet a, double b) { return a /= b; }
inline Jet operator+(double a, Jet b) { return b += a; }
inline Jet operator*(double a, Jet b) { return b *= a; }
Jet operator-(double a, const Jet& b);
Jet operator/(double a, const Jet& b);

}  // namespace polybarrier
