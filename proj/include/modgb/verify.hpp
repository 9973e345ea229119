#pragma once

#include <optional>
#include <vector>

#include "modgb/reconstruct.hpp"

namespace modgb {

enum class CheckMode { probabilistic, det_integer, det_modular };

struct CheckReport {
    enum class Status { certified, probably_correct, rejected };

    CheckMode mode = CheckMode::probabilistic;
    Status status = Status::certified;
    /// probabilistic mode: 1 / product of check primes; 0 for deterministic
    mpq_class error_bound = 0;
    std::vector<std::uint32_t> primes_used;

    // rejection witness: a generator index, or a candidate pair (i, j),
    // optionally with the prime that exposed it
    std::optional<std::size_t> failed_generator;
    std::optional<std::pair<std::size_t, std::size_t>> failed_pair;
    std::optional<std::uint32_t> failed_prime;

    bool accepted() const { return status != Status::rejected; }
};

struct VerifyOptions {
    double epsilon = 1e-7;  // probabilistic target; the achieved bound is <= this
    int threads = 1;
    bool allow_shortcut = true;  // det-modular coefficient-bound shortcut
};

/// Checking-step half one: every generator reduces to zero against the
/// candidate, in the arithmetic the mode prescribes.
CheckReport check_inclusion(const std::vector<IntPoly>& generators,
                            const RationalCandidate& candidate, CheckMode mode,
                            const VerifyOptions& opts = {});

/// S-polys of the candidate reduce to zero modulo check primes drawn
/// descending below 2^29 (skipping primes dividing a candidate leading
/// coefficient) until the inverse product drops below epsilon.
CheckReport check_gb_probabilistic(const RationalCandidate& candidate, double epsilon,
                                   const VerifyOptions& opts = {});

/// Every s-poly fraction-free-reduces to exactly zero over Z.
CheckReport check_gb_deterministic_integer(const RationalCandidate& candidate,
                                           const VerifyOptions& opts = {});

/// S-polys reduce to zero modulo successive primes while the quotients are
/// CRT+Farey reconstructed; once they stabilize the 0-reduction identity is
/// certified either by the coefficient-bound shortcut (enough primes) or by
/// direct expansion over Q, with an exact integer reduction as the fallback
/// verdict for primes that disturb reconstruction.
CheckReport check_gb_deterministic_modular(const RationalCandidate& candidate,
                                           const VerifyOptions& opts = {});

/// Arnold's theorem needs both halves: inclusion of the generators and the
/// s-poly check. Composed here so callers cannot run half a certification.
CheckReport certify(const std::vector<IntPoly>& generators, const RationalCandidate& candidate,
                    CheckMode mode, const VerifyOptions& opts = {});

}  // namespace modgb
