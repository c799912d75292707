#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "polybarrier/activation.hpp"
#include "polybarrier/ellipse.hpp"

namespace polybarrier {

/// g(x) = sum_k lambda_k phi(<alpha_k, x>) on [-1, 1]^dim, no biases.
/// width() == 0 is the zero network.
struct NetworkParams {
  std::vector<double> lambdas;
  std::vector<double> alphas;  // width() x dim, row-major
  ActivationPtr activation;
  int dim = 1;

  std::size_t width() const { return lambdas.size(); }
  std::span<const double> alpha(std::size_t k) const {
    return std::span<const double>(alphas).subspan(k * static_cast<std::size_t>(dim),
                                                   static_cast<std::size_t>(dim));
  }
  double l1_norm() const;
  double alpha_norm(std::size_t k) const;
  double max_alpha_norm() const;

  /// Throws DomainError on mismatched sizes, bad dim, missing activation or
  /// non-finite entries.
  void validate() const;
};

NetworkParams zero_network(ActivationPtr act, int dim = 1);

/// sum |lambda_k| <= B and max ||alpha_k|| <= L (relative slack 1e-12).
struct ConstraintSet {
  double B = 1.0;
  double L = 1.0;

  void validate() const;
  bool satisfied_by(const NetworkParams& net) const;
};

double eval_real(const NetworkParams& net, std::span<const double> x);
double eval_real(const NetworkParams& net, double x);

/// Holomorphic extension at z in the closed E_rho (dim 1 only). Requires
/// |alpha_k| <= e.dilation() and the activation's domain to cover L E_rho.
std::complex<double> eval_complex(const NetworkParams& net, std::complex<double> z,
                                  const BernsteinEllipse& e);

/// (sum |lambda_k|) * M_{rho,L}(phi): dominates |g| on E_rho.
double holo_sup_bound(const NetworkParams& net, const BernsteinEllipse& e);

/// sum |lambda_k| ||alpha_k||.
double barron_weighted_norm(const NetworkParams& net);

/// Terms with ||alpha_k|| <= L, and the remainder.
std::pair<NetworkParams, NetworkParams> frequency_split(const NetworkParams& net, double L);

/// C B (R L)^n (n!)^s from the activation's Gevrey metadata.
double gevrey_derivative_bound(const ConstraintSet& cs, const ActivationSpec& act, int n);

/// Plain-text record: header `dim m activation B L`, then m lines
/// `lambda alpha_1 .. alpha_d`, all with 17 significant digits.
void write_network(std::ostream& os, const NetworkParams& net, const ConstraintSet& cs);
std::pair<NetworkParams, ConstraintSet> read_network(std::istream& is);

}  // namespace polybarrier
