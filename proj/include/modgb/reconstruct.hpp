#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "modgb/poly.hpp"

namespace modgb {

/// Unique residue mod m1*m2 congruent to r1 mod m1 and r2 mod m2.
/// Throws NonCoprimeModuli unless gcd(m1, m2) = 1.
std::pair<mpz_class, mpz_class> crt_pair(const mpz_class& r1, const mpz_class& m1,
                                         const mpz_class& r2, const mpz_class& m2);

/// Rational (Farey) reconstruction of a residue mod m with the symmetric
/// bound B = floor(sqrt((m-1)/2)): the extended Euclidean remainder sequence
/// is stopped at the first remainder <= B, giving n/d with |n| <= B,
/// 0 < d <= B, n = a*d (mod m), gcd(n, d) = 1. nullopt signals "need more
/// primes", never a wrong answer.
std::optional<mpq_class> farey(const mpz_class& a, const mpz_class& m);

/// n/d mod p; nullopt when p divides d.
std::optional<std::uint32_t> rational_mod(const mpq_class& q, const PrimeField& field);

/// CRT-combines a mod-p polynomial into a residue accumulator on the union
/// support; monomials missing on either side combine with residue 0.
void crt_merge_support(std::vector<Monomial>& support, std::vector<mpz_class>& residues,
                       const ModPoly& elem, const mpz_class& old_modulus,
                       const PrimeField& field);

/// Farey-lifts an accumulated support/residue pair; exact zeros are pruned.
std::optional<RatPoly> lift_poly(const std::vector<Monomial>& support,
                                 const std::vector<mpz_class>& residues, const mpz_class& modulus);

/// True iff f maps coefficient-for-coefficient onto g mod p (monomials
/// missing on one side must map to 0 on the other).
bool rational_maps_onto(const RatPoly& f, const ModPoly& g, const PrimeField& field);

struct RationalCandidate {
    std::vector<RatPoly> basis;      // monic, descending leads
    std::vector<IntPoly> primitive;  // integer-cleared, content 1, positive lead
    mpz_class modulus;               // product of primes it was lifted from
};

/// CRT accumulator for one leading-monomial signature. Residues are kept per
/// element on the union support seen so far, aligned with `supports`.
struct ReconstructionBranch {
    std::vector<Monomial> leads;
    std::vector<std::vector<Monomial>> supports;   // descending per element
    std::vector<std::vector<mpz_class>> residues;  // canonical in [0, modulus)
    mpz_class modulus = 1;
    std::uint32_t prime_count = 0;

    // candidate lifted from this branch's modulus; maintained by the driver
    std::optional<RationalCandidate> last_candidate;
};

struct AbsorbResult {
    std::size_t branch;
    bool created;
};

/// Folds a reduced monic mod-p basis into the branch whose signature matches
/// (same leads; per element, one support must contain the other — a monomial
/// missing on one side is a vanished coefficient and combines with residue
/// 0, keeping the union support). Otherwise a fresh branch is appended.
/// A branch trailing the leader by 3 or more primes is dropped.
AbsorbResult absorb(std::vector<ReconstructionBranch>& branches,
                    const std::vector<ModPoly>& basis, const PrimeField& field);

/// Farey-lifts every residue; nullopt when any coefficient is out of reach
/// of the current modulus.
std::optional<RationalCandidate> lift_candidate(const ReconstructionBranch& branch);

/// Fast stabilization test: `candidate` was lifted without the newest prime;
/// it has stabilized iff it maps coefficient-for-coefficient onto the newest
/// mod-p basis.
bool stabilized(const RationalCandidate& candidate, const std::vector<ModPoly>& last_basis,
                const PrimeField& field);

}  // namespace modgb
