#pragma once

#include <string>
#include <vector>

#include "modgb/poly.hpp"

namespace modgb {

/// Input system: the variable list fixes the ring (first name is the most
/// significant variable); generators are rational polynomials over it.
struct IdealSpec {
    std::vector<std::string> vars;
    std::vector<RatPoly> generators;
};

/// Primitive integer forms of the generators, in order. Throws on a
/// generator that normalizes to zero.
std::vector<IntPoly> normalized_generators(const IdealSpec& ideal);

}  // namespace modgb
