#pragma once

#include "modgb/f4gb.hpp"
#include "modgb/ideal.hpp"
#include "modgb/verify.hpp"

namespace modgb {

/// Knobs of the modular run. epsilon = 0 means a certified result and
/// requires a deterministic check mode; any basis with at most
/// small_basis_threshold elements gets the deterministic check regardless.
struct RunConfig {
    double epsilon = 1e-7;
    CheckMode check_mode = CheckMode::probabilistic;
    int prime_bits = 29;     // working prime class: 24, 29 or 31
    int learning_bits = 31;  // class of the learning prime
    int workers = 1;
    std::size_t small_basis_threshold = 50;
    int verbosity = 0;

    void validate() const;
};

struct PrimeEvent {
    enum class Kind { learning, replay, plain };
    std::uint32_t prime = 0;
    Kind kind = Kind::plain;
    std::uint64_t pairs_reduced = 0;
    std::uint64_t pairs_skipped = 0;
    std::size_t branch = 0;
    bool new_branch = false;
};

struct RunStatistics {
    std::uint32_t learning_prime = 0;
    std::uint32_t primes_skipped = 0;  // primes dividing a generator lead
    std::uint32_t replay_fallbacks = 0;
    std::size_t branches_created = 0;
    std::vector<PrimeEvent> events;
    GBStats learning_stats;

    std::vector<std::uint32_t> primes_used() const {
        std::vector<std::uint32_t> out;
        out.reserve(events.size());
        for (const auto& e : events) out.push_back(e.prime);
        return out;
    }
};

struct GBRunResult {
    std::vector<RatPoly> basis;      // monic, descending leads
    std::vector<IntPoly> primitive;  // integer-cleared positive-lead form
    CheckReport report;
    RunStatistics stats;
};

/// The modular algorithm: a recorded learning run on the first prime, then
/// batches of `workers` replay runs absorbed into CRT branches in prime
/// order, Farey lifting with the fast stabilization test, and the checking
/// step once the candidate stabilizes.
GBRunResult modular_gbasis(const IdealSpec& ideal, const RunConfig& config);

}  // namespace modgb
