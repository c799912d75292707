#pragma once

#include <string>

#include "config.hpp"
#include "polybarrier/barrier.hpp"

namespace polybarrier::cli {

/// 1-d target: abs, runge, ck_spline (k), realizable (activation), poly
/// (monomial coefficients, constant term first).
RealFunction make_target(const Config& cfg);
/// d-dimensional target: abs_sum, abs_x, product, or any 1-d target applied
/// to the first coordinate.
PointFunction make_target_multid(const Config& cfg, int dim);
std::string target_label(const Config& cfg);

/// [schedule]: either repeated `row = m B L` lines, or `m` (list or
/// start:stop[:step]) with `B` and `L` rules `const c`, `poly c a`
/// (c m^a) or `exp c a [p]` (c exp(a m^p)).
Schedule make_schedule(const Config& cfg);

/// [mode] kind = ellipse | strip | gevrey with the matching constants.
ResidualMode make_mode(const Config& cfg);
std::string mode_comment(const ResidualMode& mode, const ActivationSpec& act, const Schedule& s);

/// [fit] overrides on top of the per-dimension defaults; seed comes from the
/// global flag.
FitConfig make_fit_config(const Config& cfg, int dim, std::uint64_t seed);

ActivationPtr make_activation(const Config& cfg);
int network_dim(const Config& cfg);

}  // namespace polybarrier::cli
