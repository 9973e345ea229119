#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <ostream>
#include <span>

#include "modgb/errors.hpp"

namespace modgb {

/// Monomial with packed 16-bit exponents.
///
/// Slot 0 caches the total degree; slots 1..nvars hold the partial degrees of
/// x1..xn (variable index 0 maps to slot 1, which is the most significant
/// variable in the reverse-lex tie-break). Slots past nvars stay zero so
/// comparisons can read the full 16-slot block unconditionally. At most 15
/// variables; any degree above 65535 is a hard error, never a wraparound.
class Monomial {
public:
    static constexpr unsigned max_vars = 15;
    static constexpr unsigned max_degree = 0xffff;

    Monomial() : slots_{}, nvars_(0) {}

    static Monomial unit(unsigned nvars) {
        if (nvars > max_vars) throw TooManyVariables("more than 15 variables");
        Monomial m;
        m.nvars_ = static_cast<std::uint8_t>(nvars);
        return m;
    }

    static Monomial pack(std::span<const unsigned> exponents) {
        if (exponents.size() > max_vars) throw TooManyVariables("more than 15 variables");
        Monomial m;
        m.nvars_ = static_cast<std::uint8_t>(exponents.size());
        std::uint32_t total = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] > max_degree) throw DegreeOverflow("exponent exceeds 16 bits");
            total += exponents[i];
            m.slots_[i + 1] = static_cast<std::uint16_t>(exponents[i]);
        }
        if (total > max_degree) throw DegreeOverflow("total degree exceeds 16 bits");
        m.slots_[0] = static_cast<std::uint16_t>(total);
        return m;
    }

    static Monomial pack(std::initializer_list<unsigned> exponents) {
        return pack(std::span<const unsigned>(exponents.begin(), exponents.size()));
    }

    /// x_var^e in an nvars-variable ring, var is 0-based.
    static Monomial variable(unsigned var, unsigned nvars, unsigned e = 1) {
        if (nvars > max_vars) throw TooManyVariables("more than 15 variables");
        assert(var < nvars);
        if (e > max_degree) throw DegreeOverflow("exponent exceeds 16 bits");
        Monomial m;
        m.nvars_ = static_cast<std::uint8_t>(nvars);
        m.slots_[var + 1] = static_cast<std::uint16_t>(e);
        m.slots_[0] = static_cast<std::uint16_t>(e);
        return m;
    }

    unsigned nvars() const { return nvars_; }
    unsigned degree() const { return slots_[0]; }
    unsigned exponent(unsigned var) const {
        assert(var < nvars_);
        return slots_[var + 1];
    }
    bool is_unit() const { return slots_[0] == 0; }

    bool operator==(const Monomial& o) const { return slots_ == o.slots_; }

    std::uint64_t hash() const {
        const auto w = words();
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t x : w) {
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 31;
            h = (h ^ x) * 0x94d049bb133111ebull;
        }
        return h ^ (h >> 29);
    }

    friend std::strong_ordering cmp_degrevlex(const Monomial& a, const Monomial& b);
    friend Monomial mul(const Monomial& a, const Monomial& b);
    friend std::optional<Monomial> try_divide(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend bool divides(const Monomial& b, const Monomial& a);
    friend bool coprime(const Monomial& a, const Monomial& b);

    friend std::ostream& operator<<(std::ostream& os, const Monomial& m) {
        os << '[' << m.slots_[0] << '|';
        for (unsigned i = 1; i <= m.nvars_; ++i) {
            if (i > 1) os << ',';
            os << m.slots_[i];
        }
        return os << ']';
    }

private:
    std::array<std::uint64_t, 4> words() const {
        return std::bit_cast<std::array<std::uint64_t, 4>>(slots_);
    }

    std::array<std::uint16_t, 16> slots_;
    std::uint8_t nvars_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded reverse lexicographic order: higher total degree wins; on ties,
/// a > b iff the last nonzero entry of a-b is negative. On little-endian
/// targets the tie-break runs on the four 64-bit words of the slot block,
/// scanning high slots first; a smaller word means the greater monomial.
inline std::strong_ordering cmp_degrevlex(const Monomial& a, const Monomial& b) {
    assert(a.nvars_ == b.nvars_);
    if (a.slots_[0] != b.slots_[0])
        return a.slots_[0] < b.slots_[0] ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
    if constexpr (std::endian::native == std::endian::little) {
        const auto wa = a.words();
        const auto wb = b.words();
        for (int w = 3; w >= 0; --w) {
            if (wa[w] != wb[w])
                return wa[w] < wb[w] ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
        }
        return std::strong_ordering::equal;
    } else {
        for (int i = 15; i >= 1; --i) {
            if (a.slots_[i] != b.slots_[i])
                return a.slots_[i] < b.slots_[i] ? std::strong_ordering::greater
                                                 : std::strong_ordering::less;
        }
        return std::strong_ordering::equal;
    }
}

inline bool degrevlex_less(const Monomial& a, const Monomial& b) {
    return cmp_degrevlex(a, b) == std::strong_ordering::less;
}
inline bool degrevlex_greater(const Monomial& a, const Monomial& b) {
    return cmp_degrevlex(a, b) == std::strong_ordering::greater;
}

inline Monomial mul(const Monomial& a, const Monomial& b) {
    assert(a.nvars_ == b.nvars_);
    const std::uint32_t total =
        static_cast<std::uint32_t>(a.slots_[0]) + static_cast<std::uint32_t>(b.slots_[0]);
    if (total > Monomial::max_degree) throw DegreeOverflow("monomial product overflows 16 bits");
    Monomial r;
    r.nvars_ = a.nvars_;
    for (unsigned i = 0; i < 16; ++i)
        r.slots_[i] = static_cast<std::uint16_t>(a.slots_[i] + b.slots_[i]);
    return r;
}

inline std::optional<Monomial> try_divide(const Monomial& a, const Monomial& b) {
    assert(a.nvars_ == b.nvars_);
    Monomial r;
    r.nvars_ = a.nvars_;
    for (unsigned i = 1; i < 16; ++i) {
        if (a.slots_[i] < b.slots_[i]) return std::nullopt;
        r.slots_[i] = static_cast<std::uint16_t>(a.slots_[i] - b.slots_[i]);
    }
    r.slots_[0] = static_cast<std::uint16_t>(a.slots_[0] - b.slots_[0]);
    return r;
}

/// True iff b divides a componentwise.
inline bool divides(const Monomial& b, const Monomial& a) {
    assert(a.nvars_ == b.nvars_);
    if (b.slots_[0] > a.slots_[0]) return false;
    for (unsigned i = 1; i < 16; ++i)
        if (b.slots_[i] > a.slots_[i]) return false;
    return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    assert(a.nvars_ == b.nvars_);
    Monomial r;
    r.nvars_ = a.nvars_;
    std::uint32_t total = 0;
    for (unsigned i = 1; i < 16; ++i) {
        const std::uint16_t m = a.slots_[i] > b.slots_[i] ? a.slots_[i] : b.slots_[i];
        r.slots_[i] = m;
        total += m;
    }
    if (total > Monomial::max_degree) throw DegreeOverflow("lcm degree exceeds 16 bits");
    r.slots_[0] = static_cast<std::uint16_t>(total);
    return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    assert(a.nvars_ == b.nvars_);
    for (unsigned i = 1; i < 16; ++i)
        if (a.slots_[i] != 0 && b.slots_[i] != 0) return false;
    return true;
}

}  // namespace modgb
