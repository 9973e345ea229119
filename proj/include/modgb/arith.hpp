#pragma once

#include <cassert>
#include <cstdint>
#include <span>

#include "modgb/errors.hpp"

namespace modgb {

enum class PrimeDirection { below, above };

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

/// Nearest prime strictly below/above `bound`.
std::uint64_t prime_near(std::uint64_t bound, PrimeDirection dir);

/// Arithmetic in Z/pZ for a word-size prime, 2 < p < 2^31. Elements are
/// canonical representatives in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        const std::uint32_t s = a + b;  // p < 2^31, no wrap
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    std::uint32_t reduce_i64(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

/// Descending sequence of primes strictly below a starting bound; used for
/// the working-prime and check-prime supplies.
class PrimeSequence {
public:
    explicit PrimeSequence(std::uint64_t top) : cursor_(top) {}

    std::uint32_t next() {
        if (cursor_ <= 3) throw PrimeSupplyExhausted("prime sequence ran dry");
        cursor_ = prime_near(cursor_, PrimeDirection::below);
        return static_cast<std::uint32_t>(cursor_);
    }

private:
    std::uint64_t cursor_;
};

/// Named prime size classes: learning/31, working/29, compact/24.
inline std::uint64_t prime_class_top(int bits) {
    switch (bits) {
        case 24: return 1ull << 24;
        case 29: return 1ull << 29;
        case 31: return 1ull << 31;
        default: throw Error("prime class must be one of 24, 29, 31 bits");
    }
}

// ---------------------------------------------------------------------------
// Delayed-reduction accumulators.
//
// Dense row reduction adds products of canonical elements and reduces mod p
// as late as the width class allows. Subtractions enter as (p - c) * x, so
// every addend is nonnegative.
// ---------------------------------------------------------------------------

/// 128-bit accumulator for 29..31-bit primes: each addend is below 2^62, so
/// at least 2^64 addends fit without overflow.
struct Wide128Accumulator {
    using Value = unsigned __int128;
    static constexpr std::uint64_t addend_budget = ~0ull;

    static void add_product(Value& acc, std::uint32_t a, std::uint32_t b) {
        acc += static_cast<std::uint64_t>(a) * b;
    }
    static std::uint32_t reduce(Value acc, std::uint32_t p) {
        return static_cast<std::uint32_t>(acc % p);
    }
    static void normalize(Value& acc, std::uint32_t p) { acc %= p; }
};

/// 63-bit signed accumulator for 24-bit primes: addends stay below 2^48, so
/// 2^15 of them fit (2^15 * 2^48 < 2^63). Callers must call normalize before
/// the budget runs out.
struct Signed63Accumulator {
    using Value = std::int64_t;
    static constexpr std::uint64_t addend_budget = 1ull << 15;

    static void add_product(Value& acc, std::uint32_t a, std::uint32_t b) {
        acc += static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * b);
    }
    static std::uint32_t reduce(Value acc, std::uint32_t p) {
        return static_cast<std::uint32_t>(acc % p);
    }
    static void normalize(Value& acc, std::uint32_t p) { acc %= p; }
};

/// Dot product with delayed reduction; the reference the accumulator
/// property tests compare against is a reduce-every-step loop.
template <class Acc>
std::uint32_t delayed_dot(std::span<const std::uint32_t> u,
                          std::span<const std::uint32_t> v,
                          const PrimeField& field) {
    assert(u.size() == v.size());
    typename Acc::Value acc = 0;
    std::uint64_t pending = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        Acc::add_product(acc, u[i], v[i]);
        if (++pending == Acc::addend_budget) {
            Acc::normalize(acc, field.modulus());
            pending = 0;
        }
    }
    return Acc::reduce(acc, field.modulus());
}

}  // namespace modgb
