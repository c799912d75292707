#pragma once

#include <string>
#include <string_view>

namespace polybarrier {

/// Decimal with 17 significant digits ("%.17g"); non-finite values print as
/// nan / inf / -inf.
std::string format_double(double v);

/// Strict inverse of format_double; throws DomainError on trailing garbage.
double parse_double(std::string_view s);

}  // namespace polybarrier
