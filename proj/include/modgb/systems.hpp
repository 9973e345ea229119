#pragma once

#include "modgb/ideal.hpp"

namespace modgb {

/// Cyclic-n: variables x0..x(n-1); the k-th generator (k = 1..n-1) sums the
/// products of k cyclically consecutive variables, the last one is the full
/// product minus 1. Valid for 2 <= n <= 9.
IdealSpec cyclic(unsigned n);

/// Katsura-n: variables u0..un, so n+1 of them (some suites shift the index
/// by one). With u(-m) = u(m) and u(m) = 0 for |m| > n, the generators are
/// sum_k u_k u_(m-k) - u_m for m = 0..n-1 plus sum_k u_k - 1.
/// Valid for 1 <= n <= 12.
IdealSpec katsura(unsigned n);

/// The six random dense polynomials in x,y,z,t,u,v used as a benchmark.
IdealSpec alea6();

/// alea6 term-for-term as listed, before normalization (the fifth generator
/// carries the duplicate term 39xtu + 44xtu).
std::vector<std::vector<Term<mpq_class>>> alea6_terms();

}  // namespace modgb
