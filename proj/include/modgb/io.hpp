#pragma once

#include <iosfwd>
#include <string>

#include "modgb/ideal.hpp"

namespace modgb {

/// Ideal file format: first content line `vars: x, y, z`, then one generator
/// per line; `#` starts a comment, blank lines are skipped.
IdealSpec parse_ideal(std::istream& in);
IdealSpec parse_ideal_text(const std::string& text);

/// One polynomial: integer or a/b coefficients, `*` between factors,
/// `^` powers, `+`/`-`.
RatPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                         std::size_t line_no = 1);

std::string format_polynomial(const RatPoly& f, const std::vector<std::string>& vars);
std::string format_polynomial(const IntPoly& f, const std::vector<std::string>& vars);

void print_basis(std::ostream& os, const std::vector<RatPoly>& basis,
                 const std::vector<std::string>& vars);
void print_basis(std::ostream& os, const std::vector<IntPoly>& basis,
                 const std::vector<std::string>& vars);

}  // namespace modgb
