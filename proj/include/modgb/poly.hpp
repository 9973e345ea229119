#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "modgb/arith.hpp"
#include "modgb/heap.hpp"
#include "modgb/monomial.hpp"

namespace modgb {

template <class C>
struct Term {
    Monomial mono;
    C coeff;
    bool operator==(const Term&) const = default;
};

/// Sparse distributed polynomial: monomials strictly decreasing in degrevlex,
/// no zero coefficients. Monomials and coefficients are stored as parallel
/// arrays so the F4 matrix can alias a basis element's coefficient list.
template <class C>
class Polynomial {
public:
    using Coeff = C;

    Polynomial() = default;

    /// Trusted constructor: input already sorted/merged/zero-free.
    static Polynomial from_sorted(std::vector<Monomial> monos, std::vector<C> coeffs) {
        assert(monos.size() == coeffs.size());
        Polynomial p;
        p.monos_ = std::move(monos);
        p.coeffs_ = std::move(coeffs);
        return p;
    }

    bool zero() const { return monos_.empty(); }
    std::size_t size() const { return monos_.size(); }
    const Monomial& mono(std::size_t i) const { return monos_[i]; }
    const C& coeff(std::size_t i) const { return coeffs_[i]; }
    const Monomial& lead_mono() const { return monos_.front(); }
    const C& lead_coeff() const { return coeffs_.front(); }
    const std::vector<Monomial>& monos() const { return monos_; }
    const std::vector<C>& coeffs() const { return coeffs_; }

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<Monomial> monos_;
    std::vector<C> coeffs_;
};

using ModPoly = Polynomial<std::uint32_t>;
using IntPoly = Polynomial<mpz_class>;
using RatPoly = Polynomial<mpq_class>;

// ---------------------------------------------------------------------------
// Coefficient rings. Operations are free functions parameterized on a small
// ring object; only Z/pZ carries state (the modulus).
// ---------------------------------------------------------------------------

struct ModRing {
    using Coeff = std::uint32_t;
    static constexpr bool fraction_free = false;

    PrimeField field;

    Coeff zero() const { return 0; }
    Coeff one() const { return 1; }
    bool is_zero(Coeff a) const { return a == 0; }
    Coeff add(Coeff a, Coeff b) const { return field.add(a, b); }
    Coeff sub(Coeff a, Coeff b) const { return field.sub(a, b); }
    Coeff neg(Coeff a) const { return field.neg(a); }
    Coeff mul(Coeff a, Coeff b) const { return field.mul(a, b); }
    Coeff div(Coeff a, Coeff b) const { return field.div(a, b); }
};

struct IntRing {
    using Coeff = mpz_class;
    static constexpr bool fraction_free = true;

    Coeff zero() const { return 0; }
    Coeff one() const { return 1; }
    bool is_zero(const Coeff& a) const { return sgn(a) == 0; }
    Coeff add(const Coeff& a, const Coeff& b) const { return a + b; }
    Coeff sub(const Coeff& a, const Coeff& b) const { return a - b; }
    Coeff neg(const Coeff& a) const { return -a; }
    Coeff mul(const Coeff& a, const Coeff& b) const { return a * b; }
};

struct RatRing {
    using Coeff = mpq_class;
    static constexpr bool fraction_free = false;

    Coeff zero() const { return 0; }
    Coeff one() const { return 1; }
    bool is_zero(const Coeff& a) const { return sgn(a) == 0; }
    Coeff add(const Coeff& a, const Coeff& b) const { return a + b; }
    Coeff sub(const Coeff& a, const Coeff& b) const { return a - b; }
    Coeff neg(const Coeff& a) const { return -a; }
    Coeff mul(const Coeff& a, const Coeff& b) const { return a * b; }
    Coeff div(const Coeff& a, const Coeff& b) const { return a / b; }
};

// ---------------------------------------------------------------------------
// Structural operations
// ---------------------------------------------------------------------------

/// Sorts, merges duplicate monomials, prunes zero coefficients.
template <class R>
Polynomial<typename R::Coeff> normalize(const R& ring,
                                        std::vector<Term<typename R::Coeff>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return degrevlex_greater(a.mono, b.mono); });
    std::vector<Monomial> monos;
    std::vector<typename R::Coeff> coeffs;
    monos.reserve(terms.size());
    coeffs.reserve(terms.size());
    for (auto& t : terms) {
        if (!monos.empty() && monos.back() == t.mono) {
            coeffs.back() = ring.add(coeffs.back(), t.coeff);
            if (ring.is_zero(coeffs.back())) {
                monos.pop_back();
                coeffs.pop_back();
            }
        } else if (!ring.is_zero(t.coeff)) {
            monos.push_back(t.mono);
            coeffs.push_back(std::move(t.coeff));
        }
    }
    return Polynomial<typename R::Coeff>::from_sorted(std::move(monos), std::move(coeffs));
}

/// Merge-adds two canonical polynomials.
template <class R>
Polynomial<typename R::Coeff> add(const R& ring, const Polynomial<typename R::Coeff>& f,
                                  const Polynomial<typename R::Coeff>& g) {
    std::vector<Monomial> monos;
    std::vector<typename R::Coeff> coeffs;
    monos.reserve(f.size() + g.size());
    coeffs.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() && j < g.size()) {
        const auto c = cmp_degrevlex(f.mono(i), g.mono(j));
        if (c == std::strong_ordering::greater) {
            monos.push_back(f.mono(i));
            coeffs.push_back(f.coeff(i));
            ++i;
        } else if (c == std::strong_ordering::less) {
            monos.push_back(g.mono(j));
            coeffs.push_back(g.coeff(j));
            ++j;
        } else {
            auto s = ring.add(f.coeff(i), g.coeff(j));
            if (!ring.is_zero(s)) {
                monos.push_back(f.mono(i));
                coeffs.push_back(std::move(s));
            }
            ++i;
            ++j;
        }
    }
    for (; i < f.size(); ++i) {
        monos.push_back(f.mono(i));
        coeffs.push_back(f.coeff(i));
    }
    for (; j < g.size(); ++j) {
        monos.push_back(g.mono(j));
        coeffs.push_back(g.coeff(j));
    }
    return Polynomial<typename R::Coeff>::from_sorted(std::move(monos), std::move(coeffs));
}

template <class R>
Polynomial<typename R::Coeff> negate(const R& ring, const Polynomial<typename R::Coeff>& f) {
    std::vector<typename R::Coeff> coeffs;
    coeffs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) coeffs.push_back(ring.neg(f.coeff(i)));
    return Polynomial<typename R::Coeff>::from_sorted(f.monos(), std::move(coeffs));
}

template <class R>
Polynomial<typename R::Coeff> sub(const R& ring, const Polynomial<typename R::Coeff>& f,
                                  const Polynomial<typename R::Coeff>& g) {
    return add(ring, f, negate(ring, g));
}

/// f * (m, c); order is preserved under a monomial shift.
template <class R>
Polynomial<typename R::Coeff> term_mul(const R& ring, const Polynomial<typename R::Coeff>& f,
                                       const Monomial& m, const typename R::Coeff& c) {
    if (ring.is_zero(c)) return {};
    std::vector<Monomial> monos;
    std::vector<typename R::Coeff> coeffs;
    monos.reserve(f.size());
    coeffs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto prod = ring.mul(f.coeff(i), c);
        if (ring.is_zero(prod)) continue;
        monos.push_back(mul(f.mono(i), m));
        coeffs.push_back(std::move(prod));
    }
    return Polynomial<typename R::Coeff>::from_sorted(std::move(monos), std::move(coeffs));
}

template <class R>
Polynomial<typename R::Coeff> mul(const R& ring, const Polynomial<typename R::Coeff>& f,
                                  const Polynomial<typename R::Coeff>& g) {
    Polynomial<typename R::Coeff> acc;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc = add(ring, acc, term_mul(ring, g, f.mono(i), f.coeff(i)));
    return acc;
}

template <class R>
Polynomial<typename R::Coeff> make_monic(const R& ring, const Polynomial<typename R::Coeff>& f) {
    static_assert(!R::fraction_free, "monic form needs a field");
    if (f.zero()) return f;
    const auto inv = ring.div(ring.one(), f.lead_coeff());
    return term_mul(ring, f, Monomial::unit(f.lead_mono().nvars()), inv);
}

// ---------------------------------------------------------------------------
// S-polynomials and multi-divisor heap division
// ---------------------------------------------------------------------------

/// Classical s-polynomial; leading terms cancel exactly. Over a field the
/// halves are scaled by inverse leading coefficients; over Z the cross
/// leading coefficients multiply through (fraction-free form).
template <class R>
Polynomial<typename R::Coeff> spoly(const R& ring, const Polynomial<typename R::Coeff>& f,
                                    const Polynomial<typename R::Coeff>& g) {
    if (f.zero() || g.zero()) throw ZeroInput("spoly of a zero polynomial");
    const Monomial l = lcm(f.lead_mono(), g.lead_mono());
    const Monomial uf = *try_divide(l, f.lead_mono());
    const Monomial ug = *try_divide(l, g.lead_mono());
    if constexpr (R::fraction_free) {
        return sub(ring, term_mul(ring, f, uf, g.lead_coeff()),
                   term_mul(ring, g, ug, f.lead_coeff()));
    } else {
        return sub(ring, term_mul(ring, f, uf, ring.div(ring.one(), f.lead_coeff())),
                   term_mul(ring, g, ug, ring.div(ring.one(), g.lead_coeff())));
    }
}

/// quotients/remainder with f * multiplier == sum(quotient_i * divisor_i) +
/// remainder; multiplier is 1 except in the fraction-free integer case.
template <class C>
struct DivisionResult {
    std::vector<Polynomial<C>> quotients;
    Polynomial<C> remainder;
    C multiplier;
};

/// Monagan-Pearce style heap division by an ordered divisor list: the largest
/// pending monomial (merged across the dividend and all quotient*divisor
/// product streams) is reduced by the first divisor whose lead divides it,
/// anything irreducible goes to the remainder. Over Z the state is rescaled
/// by the gcd-reduced divisor leading coefficient whenever a step is not
/// exact; the product of scales applied is returned as `multiplier`.
template <class R>
DivisionResult<typename R::Coeff> heap_divide(
    const R& ring, const Polynomial<typename R::Coeff>& f,
    const std::vector<Polynomial<typename R::Coeff>>& divisors) {
    using C = typename R::Coeff;

    DivisionResult<C> out;
    out.multiplier = ring.one();
    out.quotients.resize(divisors.size());
    if (f.zero()) return out;

    for (const auto& d : divisors) assert(!d.zero());

    // quotient coefficient per divisor for a merged coefficient c
    std::vector<C> lead_inv;
    if constexpr (!R::fraction_free) {
        lead_inv.reserve(divisors.size());
        for (const auto& d : divisors) lead_inv.push_back(ring.div(ring.one(), d.lead_coeff()));
    }

    struct Stream {
        std::int32_t divisor;     // -1: dividend stream
        std::uint32_t quot_term;  // product streams: index into its quotient
        std::uint32_t src_term;   // next term index in f / in the divisor
    };
    std::vector<Stream> streams;
    std::vector<std::vector<Term<C>>> quot(divisors.size());
    std::vector<Term<C>> rem;

    ChainedMonoHeap<std::uint32_t> heap;
    streams.push_back({-1, 0, 0});
    heap.push(f.lead_mono(), 0);

    std::vector<std::uint32_t> chain;
    while (!heap.empty()) {
        chain.clear();
        const Monomial m = heap.pop(chain);
        C c = ring.zero();
        for (const std::uint32_t sid : chain) {
            Stream& s = streams[sid];
            if (s.divisor < 0) {
                if constexpr (R::fraction_free)
                    c = ring.add(c, ring.mul(out.multiplier, f.coeff(s.src_term)));
                else
                    c = ring.add(c, f.coeff(s.src_term));
                if (++s.src_term < f.size()) heap.push(f.mono(s.src_term), sid);
            } else {
                const auto& d = divisors[static_cast<std::size_t>(s.divisor)];
                const auto& qt = quot[static_cast<std::size_t>(s.divisor)][s.quot_term];
                c = ring.sub(c, ring.mul(qt.coeff, d.coeff(s.src_term)));
                if (++s.src_term < d.size()) heap.push(mul(qt.mono, d.mono(s.src_term)), sid);
            }
        }
        if (ring.is_zero(c)) continue;

        std::size_t j = divisors.size();
        std::optional<Monomial> shift;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (auto q = try_divide(m, divisors[k].lead_mono())) {
                j = k;
                shift = q;
                break;
            }
        }
        if (j == divisors.size()) {
            rem.push_back({m, std::move(c)});
            continue;
        }

        C t;
        if constexpr (R::fraction_free) {
            const C& lc = divisors[j].lead_coeff();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), lc.get_mpz_t());
            mpz_class scale = abs(lc) / g;
            if (scale != 1) {
                // rescale everything accumulated so far, plus the in-flight
                // coefficient; pending heap products pick the change up from
                // the scaled quotient terms
                out.multiplier *= scale;
                for (auto& q : quot)
                    for (auto& term : q) term.coeff *= scale;
                for (auto& term : rem) term.coeff *= scale;
                c *= scale;
            }
            t = c / lc;
        } else {
            t = ring.mul(c, lead_inv[j]);
        }

        quot[j].push_back({*shift, std::move(t)});
        if (divisors[j].size() > 1) {
            const std::uint32_t sid = static_cast<std::uint32_t>(streams.size());
            streams.push_back({static_cast<std::int32_t>(j),
                               static_cast<std::uint32_t>(quot[j].size() - 1), 1});
            heap.push(mul(*shift, divisors[j].mono(1)), sid);
        }
    }

    // heap keys decrease strictly, so per-divisor quotient terms and the
    // remainder are already in canonical order
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        std::vector<Monomial> monos;
        std::vector<C> coeffs;
        monos.reserve(quot[k].size());
        coeffs.reserve(quot[k].size());
        for (auto& term : quot[k]) {
            monos.push_back(term.mono);
            coeffs.push_back(std::move(term.coeff));
        }
        out.quotients[k] = Polynomial<C>::from_sorted(std::move(monos), std::move(coeffs));
    }
    {
        std::vector<Monomial> monos;
        std::vector<C> coeffs;
        monos.reserve(rem.size());
        coeffs.reserve(rem.size());
        for (auto& term : rem) {
            monos.push_back(term.mono);
            coeffs.push_back(std::move(term.coeff));
        }
        out.remainder = Polynomial<C>::from_sorted(std::move(monos), std::move(coeffs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Domain changes
// ---------------------------------------------------------------------------

/// Reduces coefficients mod p; the flag reports a vanished leading
/// coefficient (unlucky-prime signal).
std::pair<ModPoly, bool> map_mod(const IntPoly& f, const PrimeField& field);

/// Integer polynomial with content 1 and positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);
IntPoly primitive_part(const RatPoly& f);

IntPoly to_integer(const RatPoly& f, mpz_class* denominator = nullptr);
RatPoly to_rational(const IntPoly& f);

}  // namespace modgb
