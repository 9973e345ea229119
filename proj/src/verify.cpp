#include "modgb/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>

namespace modgb {

namespace {

std::vector<mpz_class> lead_coeffs(const RationalCandidate& cand) {
    std::vector<mpz_class> lcs;
    lcs.reserve(cand.primitive.size());
    for (const auto& g : cand.primitive) lcs.push_back(g.lead_coeff());
    return lcs;
}

std::uint32_t next_check_prime(PrimeSequence& seq, const std::vector<mpz_class>& lcs) {
    for (;;) {
        const std::uint32_t p = seq.next();
        bool ok = true;
        for (const auto& c : lcs) {
            if (mpz_fdiv_ui(c.get_mpz_t(), p) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
}

std::vector<ModPoly> map_candidate(const RationalCandidate& cand, const PrimeField& field) {
    // check primes never divide a leading coefficient, so the monic basis
    // maps cleanly: reduce the primitive form and rescale
    const ModRing ring{field};
    std::vector<ModPoly> out;
    out.reserve(cand.primitive.size());
    for (const auto& g : cand.primitive) {
        auto [gp, vanished] = map_mod(g, field);
        assert(!vanished);
        out.push_back(make_monic(ring, gp));
    }
    return out;
}

std::optional<ModPoly> map_rational(const RatPoly& f, const PrimeField& field) {
    std::vector<Monomial> monos;
    std::vector<std::uint32_t> coeffs;
    monos.reserve(f.size());
    coeffs.reserve(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
        const auto c = rational_mod(f.coeff(t), field);
        if (!c) return std::nullopt;
        if (*c == 0) continue;
        monos.push_back(f.mono(t));
        coeffs.push_back(*c);
    }
    return ModPoly::from_sorted(std::move(monos), std::move(coeffs));
}

/// Pairs whose leads are not coprime; the coprime ones reduce to zero by
/// Buchberger's first criterion and are skipped in every mode.
std::vector<std::pair<std::size_t, std::size_t>> check_pairs(const RationalCandidate& cand) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < cand.basis.size(); ++i)
        for (std::size_t j = i + 1; j < cand.basis.size(); ++j)
            if (!coprime(cand.basis[i].lead_mono(), cand.basis[j].lead_mono()))
                pairs.emplace_back(i, j);
    return pairs;
}

mpq_class epsilon_as_rational(double epsilon) {
    if (!(epsilon > 0)) throw Error("probabilistic check needs epsilon > 0");
    return mpq_class(epsilon);
}

bool integer_zero_reduction(const RatPoly& dividend, const RationalCandidate& cand) {
    const IntRing ring;
    return heap_divide(ring, to_integer(dividend), cand.primitive).remainder.zero();
}

struct ModularOutcome {
    bool certified = false;  // exact verdict reached on the modular path
    bool zero = false;       // the reduction is exactly zero
    std::vector<std::uint32_t> primes;
};

/// Reduce `dividend` to zero against the candidate modulo successive primes,
/// reconstructing the quotients; after stabilization the identity
/// dividend = sum q_k g_k is certified by the coefficient bound when the
/// prime product is large enough, else by direct expansion over Q. Returns
/// certified=false when the modular path could not decide (caller falls back
/// to the exact integer reduction).
ModularOutcome modular_zero_reduction(const RatPoly& dividend, const RationalCandidate& cand,
                                      const std::vector<mpz_class>& lcs, bool allow_shortcut) {
    ModularOutcome out;
    if (dividend.zero()) {
        out.certified = true;
        out.zero = true;
        return out;
    }
    constexpr int prime_cap = 64;
    const std::size_t k_count = cand.basis.size();

    PrimeSequence seq(prime_class_top(29));
    std::vector<std::vector<Monomial>> supp(k_count);
    std::vector<std::vector<mpz_class>> res(k_count);
    mpz_class modulus = 1;
    std::optional<std::vector<RatPoly>> prev;

    for (int n = 0; n < prime_cap; ++n) {
        const std::uint32_t p = next_check_prime(seq, lcs);
        const PrimeField field(p);
        const auto d_p = map_rational(dividend, field);
        if (!d_p) continue;  // prime meets a dividend denominator; skip it
        const auto basis_p = map_candidate(cand, field);
        const auto dv = heap_divide(ModRing{field}, *d_p, basis_p);
        if (!dv.remainder.zero()) return out;  // modular path disturbed; exact fallback decides

        bool stable = prev.has_value();
        if (stable) {
            for (std::size_t k = 0; k < k_count && stable; ++k)
                stable = rational_maps_onto((*prev)[k], dv.quotients[k], field);
        }

        for (std::size_t k = 0; k < k_count; ++k)
            crt_merge_support(supp[k], res[k], dv.quotients[k], modulus, field);
        modulus *= p;
        out.primes.push_back(p);

        if (stable) {
            // identity dividend - sum q_k g_k vanishes mod `modulus`
            if (allow_shortcut) {
                mpz_class den_bound = 1;
                for (std::size_t t = 0; t < dividend.size(); ++t)
                    mpz_lcm(den_bound.get_mpz_t(), den_bound.get_mpz_t(),
                            dividend.coeff(t).get_den_mpz_t());
                mpq_class size_bound = 0;
                for (std::size_t t = 0; t < dividend.size(); ++t)
                    size_bound = std::max(size_bound, mpq_class(abs(dividend.coeff(t))));
                for (std::size_t k = 0; k < k_count; ++k) {
                    const RatPoly& q = (*prev)[k];
                    const RatPoly& g = cand.basis[k];
                    if (q.zero()) continue;
                    mpz_class dq = 1, dg = 1;
                    mpq_class mq = 0, mg = 0;
                    for (std::size_t t = 0; t < q.size(); ++t) {
                        mpz_lcm(dq.get_mpz_t(), dq.get_mpz_t(), q.coeff(t).get_den_mpz_t());
                        mq = std::max(mq, mpq_class(abs(q.coeff(t))));
                    }
                    for (std::size_t t = 0; t < g.size(); ++t) {
                        mpz_lcm(dg.get_mpz_t(), dg.get_mpz_t(), g.coeff(t).get_den_mpz_t());
                        mg = std::max(mg, mpq_class(abs(g.coeff(t))));
                    }
                    mpz_class dprod = dq * dg;
                    mpz_lcm(den_bound.get_mpz_t(), den_bound.get_mpz_t(), dprod.get_mpz_t());
                    size_bound += mpq_class(std::min(q.size(), g.size())) * mq * mg;
                }
                // |coeff(L * (dividend - sum q g))| <= ceil(L * size_bound)
                mpq_class total = mpq_class(den_bound) * size_bound;
                mpz_class coeff_bound;
                mpz_cdiv_q(coeff_bound.get_mpz_t(), total.get_num_mpz_t(),
                           total.get_den_mpz_t());
                if (modulus > 2 * coeff_bound) {
                    out.certified = true;
                    out.zero = true;
                    return out;
                }
            } else {
                const RatRing ring;
                RatPoly sum;
                for (std::size_t k = 0; k < k_count; ++k)
                    sum = add(ring, sum, mul(ring, (*prev)[k], cand.basis[k]));
                if (sum == dividend) {
                    out.certified = true;
                    out.zero = true;
                    return out;
                }
                // stabilization was premature; keep absorbing primes
            }
        }

        std::vector<RatPoly> lifted;
        lifted.reserve(k_count);
        bool ok = true;
        for (std::size_t k = 0; k < k_count && ok; ++k) {
            auto q = lift_poly(supp[k], res[k], modulus);
            if (!q)
                ok = false;
            else
                lifted.push_back(std::move(*q));
        }
        if (ok)
            prev = std::move(lifted);
        else
            prev.reset();
    }
    return out;  // cap reached; exact fallback decides
}

void merge_primes(std::vector<std::uint32_t>& into, const std::vector<std::uint32_t>& from) {
    into.insert(into.end(), from.begin(), from.end());
    std::sort(into.begin(), into.end(), std::greater<>());
    into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace

CheckReport check_inclusion(const std::vector<IntPoly>& generators,
                            const RationalCandidate& candidate, CheckMode mode,
                            const VerifyOptions& opts) {
    CheckReport rep;
    rep.mode = mode;
    const auto lcs = lead_coeffs(candidate);
    const long n = static_cast<long>(generators.size());

    if (mode == CheckMode::probabilistic) {
        const mpq_class target = epsilon_as_rational(opts.epsilon);
        PrimeSequence seq(prime_class_top(29));
        mpq_class inv_prod = 1;
        while (!(inv_prod < target)) {
            const std::uint32_t p = next_check_prime(seq, lcs);
            rep.primes_used.push_back(p);
            const PrimeField field(p);
            const auto basis_p = map_candidate(candidate, field);
            const ModRing ring{field};
            std::vector<std::uint8_t> bad(generators.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
            for (long i = 0; i < n; ++i) {
                const auto gp = map_mod(generators[static_cast<std::size_t>(i)], field).first;
                if (gp.zero()) continue;
                if (!heap_divide(ring, gp, basis_p).remainder.zero())
                    bad[static_cast<std::size_t>(i)] = 1;
            }
            for (std::size_t i = 0; i < bad.size(); ++i) {
                if (bad[i]) {
                    rep.status = CheckReport::Status::rejected;
                    rep.failed_generator = i;
                    rep.failed_prime = p;
                    return rep;
                }
            }
            inv_prod /= p;
        }
        rep.status = CheckReport::Status::probably_correct;
        rep.error_bound = inv_prod;
        return rep;
    }

    if (mode == CheckMode::det_integer) {
        const IntRing ring;
        std::vector<std::uint8_t> bad(generators.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
        for (long i = 0; i < n; ++i) {
            if (!heap_divide(ring, generators[static_cast<std::size_t>(i)], candidate.primitive)
                     .remainder.zero())
                bad[static_cast<std::size_t>(i)] = 1;
        }
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (bad[i]) {
                rep.status = CheckReport::Status::rejected;
                rep.failed_generator = i;
                return rep;
            }
        }
        rep.status = CheckReport::Status::certified;
        return rep;
    }

    // det_modular
    std::vector<std::uint8_t> bad(generators.size(), 0);
    std::vector<std::vector<std::uint32_t>> primes(generators.size());
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const RatPoly f = to_rational(generators[idx]);
        auto outcome = modular_zero_reduction(f, candidate, lcs, opts.allow_shortcut);
        primes[idx] = std::move(outcome.primes);
        const bool zero =
            outcome.certified ? outcome.zero : integer_zero_reduction(f, candidate);
        if (!zero) bad[idx] = 1;
    }
    for (std::size_t i = 0; i < generators.size(); ++i) merge_primes(rep.primes_used, primes[i]);
    for (std::size_t i = 0; i < bad.size(); ++i) {
        if (bad[i]) {
            rep.status = CheckReport::Status::rejected;
            rep.failed_generator = i;
            return rep;
        }
    }
    rep.status = CheckReport::Status::certified;
    return rep;
}

CheckReport check_gb_probabilistic(const RationalCandidate& candidate, double epsilon,
                                   const VerifyOptions& opts) {
    CheckReport rep;
    rep.mode = CheckMode::probabilistic;
    const mpq_class target = epsilon_as_rational(epsilon);
    const auto lcs = lead_coeffs(candidate);
    const auto pairs = check_pairs(candidate);
    const long n = static_cast<long>(pairs.size());

    PrimeSequence seq(prime_class_top(29));
    mpq_class inv_prod = 1;
    while (!(inv_prod < target)) {
        const std::uint32_t p = next_check_prime(seq, lcs);
        rep.primes_used.push_back(p);
        const PrimeField field(p);
        const auto basis_p = map_candidate(candidate, field);
        const ModRing ring{field};
        std::vector<std::uint8_t> bad(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
        for (long k = 0; k < n; ++k) {
            const auto [i, j] = pairs[static_cast<std::size_t>(k)];
            const ModPoly s = spoly(ring, basis_p[i], basis_p[j]);
            if (s.zero()) continue;
            if (!heap_divide(ring, s, basis_p).remainder.zero())
                bad[static_cast<std::size_t>(k)] = 1;
        }
        for (std::size_t k = 0; k < bad.size(); ++k) {
            if (bad[k]) {
                rep.status = CheckReport::Status::rejected;
                rep.failed_pair = pairs[k];
                rep.failed_prime = p;
                return rep;
            }
        }
        inv_prod /= p;
    }
    rep.status = CheckReport::Status::probably_correct;
    rep.error_bound = inv_prod;
    return rep;
}

CheckReport check_gb_deterministic_integer(const RationalCandidate& candidate,
                                           const VerifyOptions& opts) {
    CheckReport rep;
    rep.mode = CheckMode::det_integer;
    const auto pairs = check_pairs(candidate);
    const long n = static_cast<long>(pairs.size());
    const IntRing ring;
    std::vector<std::uint8_t> bad(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
    for (long k = 0; k < n; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        const IntPoly s = spoly(ring, candidate.primitive[i], candidate.primitive[j]);
        if (s.zero()) continue;
        if (!heap_divide(ring, s, candidate.primitive).remainder.zero())
            bad[static_cast<std::size_t>(k)] = 1;
    }
    for (std::size_t k = 0; k < bad.size(); ++k) {
        if (bad[k]) {
            rep.status = CheckReport::Status::rejected;
            rep.failed_pair = pairs[k];
            return rep;
        }
    }
    rep.status = CheckReport::Status::certified;
    return rep;
}

CheckReport check_gb_deterministic_modular(const RationalCandidate& candidate,
                                           const VerifyOptions& opts) {
    CheckReport rep;
    rep.mode = CheckMode::det_modular;
    const auto lcs = lead_coeffs(candidate);
    const auto pairs = check_pairs(candidate);
    const long n = static_cast<long>(pairs.size());
    const RatRing ring;

    std::vector<std::uint8_t> bad(pairs.size(), 0);
    std::vector<std::vector<std::uint32_t>> primes(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(opts.threads) if (opts.threads > 1)
    for (long k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const auto [i, j] = pairs[idx];
        const RatPoly s = spoly(ring, candidate.basis[i], candidate.basis[j]);
        auto outcome = modular_zero_reduction(s, candidate, lcs, opts.allow_shortcut);
        primes[idx] = std::move(outcome.primes);
        const bool zero = outcome.certified ? outcome.zero : integer_zero_reduction(s, candidate);
        if (!zero) bad[idx] = 1;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) merge_primes(rep.primes_used, primes[k]);
    for (std::size_t k = 0; k < bad.size(); ++k) {
        if (bad[k]) {
            rep.status = CheckReport::Status::rejected;
            rep.failed_pair = pairs[k];
            return rep;
        }
    }
    rep.status = CheckReport::Status::certified;
    return rep;
}

CheckReport certify(const std::vector<IntPoly>& generators, const RationalCandidate& candidate,
                    CheckMode mode, const VerifyOptions& opts) {
    CheckReport inclusion = check_inclusion(generators, candidate, mode, opts);
    if (!inclusion.accepted()) return inclusion;

    CheckReport spolys;
    switch (mode) {
        case CheckMode::probabilistic:
            spolys = check_gb_probabilistic(candidate, opts.epsilon, opts);
            break;
        case CheckMode::det_integer:
            spolys = check_gb_deterministic_integer(candidate, opts);
            break;
        case CheckMode::det_modular:
            spolys = check_gb_deterministic_modular(candidate, opts);
            break;
    }
    if (!spolys.accepted()) return spolys;

    spolys.error_bound = std::max(spolys.error_bound, inclusion.error_bound);
    merge_primes(spolys.primes_used, inclusion.primes_used);
    return spolys;
}

}  // namespace modgb
