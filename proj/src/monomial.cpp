#include "modgb/monomial.hpp"

// Monomial operations are header-inline; this TU anchors the module in the
// library and keeps a compile-time check on the packed layout.

namespace modgb {

static_assert(sizeof(std::array<std::uint16_t, 16>) == 32,
              "packed exponent block must be four 64-bit words");

}  // namespace modgb
