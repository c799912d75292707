#include <algorithm>
#include <cmath>
#include <sstream>

#include "polybarrier/barrier.hpp"
#include "polybarrier/error.hpp"
#include "polybarrier/format.hpp"

namespace polybarrier {

std::string BarrierReport::to_csv(std::uint64_t seed, const std::vector<std::string>& comments) const {
  std::ostringstream os;
  os << "# seed=" << seed << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "m,E_m_f,net_error,residual,slack,sharpness_ratio\n";
  for (const auto& r : rows) {
    os << r.m << ',' << format_double(r.E_m_f) << ',' << format_double(r.net_error) << ','
       << format_double(r.residual) << ',' << format_double(r.slack) << ','
       << format_double(r.sharpness_ratio) << '\n';
  }
  return os.str();
}

BarronCheck barron_remainder_check(const NetworkParams& net, double L, int n_grid) {
  net.validate();
  if (!(L > 0.0)) throw DomainError("barron_remainder_check: L must be positive");
  if (n_grid < 2) throw DomainError("barron_remainder_check: need at least 2 grid points per axis");
  if (!net.activation->sup_real)
    throw DomainError("barron_remainder_check: activation '" + net.activation->name +
                      "' is unbounded on the real line; use a bounded activation");
  const double bound = barron_weighted_norm(net) / L * *net.activation->sup_real;
  const NetworkParams high = frequency_split(net, L).second;
  double measured = 0.0;
  if (high.width() > 0) {
    const std::vector<double> grid = tensor_chebyshev_grid(net.dim, n_grid);
    const auto d = static_cast<std::size_t>(net.dim);
    for (std::size_t j = 0; j < grid.size(); j += d)
      measured = std::max(measured,
                          std::abs(eval_real(high, std::span<const double>(grid).subspan(j, d))));
  }
  return {bound, measured, measured <= bound + 1e-9};
}

}  // namespace polybarrier
