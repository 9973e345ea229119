#include "modgb/reconstruct.hpp"

#include <algorithm>

namespace modgb {

std::pair<mpz_class, mpz_class> crt_pair(const mpz_class& r1, const mpz_class& m1,
                                         const mpz_class& r2, const mpz_class& m2) {
    if (m1 == 1) return {mpz_class(r2 % m2), m2};
    if (m2 == 1) return {mpz_class(r1 % m1), m1};
    mpz_class g, inv_m1, s;
    mpz_gcdext(g.get_mpz_t(), inv_m1.get_mpz_t(), s.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) throw NonCoprimeModuli("crt moduli share a factor");
    const mpz_class m = m1 * m2;
    // r1 + m1 * ((r2 - r1) * m1^-1 mod m2)
    mpz_class k = ((r2 - r1) * inv_m1) % m2;
    if (k < 0) k += m2;
    mpz_class r = r1 + m1 * k;
    r %= m;
    if (r < 0) r += m;
    return {r, m};
}

std::optional<mpq_class> farey(const mpz_class& a, const mpz_class& m) {
    assert(a >= 0 && a < m);
    if (a == 0) return mpq_class(0);

    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class((m - 1) / 2).get_mpz_t());

    mpz_class r0 = m, r1 = a;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        const mpz_class q = r0 / r1;
        mpz_class tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0) return std::nullopt;

    mpz_class den = abs(t1);
    if (den > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;

    mpq_class q(sgn(t1) < 0 ? mpz_class(-r1) : r1, den);
    q.canonicalize();
    return q;
}

std::optional<std::uint32_t> rational_mod(const mpq_class& q, const PrimeField& field) {
    const std::uint32_t den =
        static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_den_mpz_t(), field.modulus()));
    if (den == 0) return std::nullopt;
    const std::uint32_t num =
        static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_num_mpz_t(), field.modulus()));
    return field.mul(num, field.inv(den));
}

namespace {

// per-element signature compatibility: same lead and one support contains
// the other (a strict subset can only come from coefficients vanishing mod
// some prime)
bool supports_compatible(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
    const auto contains = [](const std::vector<Monomial>& big, const std::vector<Monomial>& small) {
        std::size_t i = 0;
        for (const Monomial& m : small) {
            while (i < big.size() && degrevlex_greater(big[i], m)) ++i;
            if (i == big.size() || !(big[i] == m)) return false;
            ++i;
        }
        return true;
    };
    return a.size() >= b.size() ? contains(a, b) : contains(b, a);
}

bool signature_matches(const ReconstructionBranch& branch, const std::vector<ModPoly>& basis) {
    if (branch.leads.size() != basis.size()) return false;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!(branch.leads[k] == basis[k].lead_mono())) return false;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!supports_compatible(branch.supports[k], basis[k].monos())) return false;
    return true;
}

}  // namespace

void crt_merge_support(std::vector<Monomial>& support, std::vector<mpz_class>& residues,
                       const ModPoly& elem, const mpz_class& old_modulus,
                       const PrimeField& field) {
    const mpz_class p(field.modulus());
    std::vector<Monomial> merged_m;
    std::vector<mpz_class> merged_r;
    merged_m.reserve(std::max(support.size(), elem.size()));
    std::size_t i = 0, j = 0;
    while (i < support.size() || j < elem.size()) {
        int which;  // -1: accumulator only, 0: both, 1: new only
        if (i == support.size())
            which = 1;
        else if (j == elem.size())
            which = -1;
        else {
            const auto c = cmp_degrevlex(support[i], elem.mono(j));
            which = c == std::strong_ordering::equal ? 0
                    : c == std::strong_ordering::greater ? -1
                                                         : 1;
        }
        const mpz_class r_old = which == 1 ? mpz_class(0) : residues[i];
        const mpz_class r_new = which == -1 ? mpz_class(0) : mpz_class(elem.coeff(j));
        merged_m.push_back(which == 1 ? elem.mono(j) : support[i]);
        merged_r.push_back(crt_pair(r_old, old_modulus, r_new, p).first);
        if (which <= 0) ++i;
        if (which >= 0) ++j;
    }
    support = std::move(merged_m);
    residues = std::move(merged_r);
}

std::optional<RatPoly> lift_poly(const std::vector<Monomial>& support,
                                 const std::vector<mpz_class>& residues,
                                 const mpz_class& modulus) {
    std::vector<Monomial> monos;
    std::vector<mpq_class> coeffs;
    monos.reserve(support.size());
    coeffs.reserve(support.size());
    for (std::size_t t = 0; t < support.size(); ++t) {
        auto q = farey(residues[t], modulus);
        if (!q) return std::nullopt;
        if (sgn(*q) == 0) continue;  // union monomial whose true value is 0
        monos.push_back(support[t]);
        coeffs.push_back(std::move(*q));
    }
    return RatPoly::from_sorted(std::move(monos), std::move(coeffs));
}

bool rational_maps_onto(const RatPoly& f, const ModPoly& g, const PrimeField& field) {
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
        int which;
        if (i == f.size())
            which = 1;
        else if (j == g.size())
            which = -1;
        else {
            const auto c = cmp_degrevlex(f.mono(i), g.mono(j));
            which = c == std::strong_ordering::equal ? 0
                    : c == std::strong_ordering::greater ? -1
                                                         : 1;
        }
        if (which == 1) return false;  // mod-p term the rational side lacks
        const auto mapped = rational_mod(f.coeff(i), field);
        if (!mapped) return false;
        const std::uint32_t expect = which == 0 ? g.coeff(j) : 0;
        if (*mapped != expect) return false;
        ++i;
        if (which == 0) ++j;
    }
    return true;
}

AbsorbResult absorb(std::vector<ReconstructionBranch>& branches,
                    const std::vector<ModPoly>& basis, const PrimeField& field) {
    const mpz_class p(field.modulus());
    std::size_t hit = branches.size();
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (signature_matches(branches[b], basis)) {
            hit = b;
            break;
        }
    }

    bool created = false;
    if (hit == branches.size()) {
        created = true;
        ReconstructionBranch fresh;
        fresh.leads.reserve(basis.size());
        fresh.supports.reserve(basis.size());
        fresh.residues.reserve(basis.size());
        for (const auto& g : basis) {
            fresh.leads.push_back(g.lead_mono());
            fresh.supports.push_back(g.monos());
            std::vector<mpz_class> r;
            r.reserve(g.size());
            for (std::size_t t = 0; t < g.size(); ++t) r.emplace_back(g.coeff(t));
            fresh.residues.push_back(std::move(r));
        }
        fresh.modulus = p;
        fresh.prime_count = 1;
        branches.push_back(std::move(fresh));
    } else {
        ReconstructionBranch& br = branches[hit];
        for (std::size_t k = 0; k < basis.size(); ++k)
            crt_merge_support(br.supports[k], br.residues[k], basis[k], br.modulus, field);
        br.modulus *= p;
        br.prime_count += 1;
    }

    // majority vote: drop branches trailing the leader by 3 or more primes
    std::uint32_t best = 0;
    for (const auto& br : branches) best = std::max(best, br.prime_count);
    std::size_t out = hit;
    if (best >= 3) {
        std::vector<ReconstructionBranch> keep;
        std::size_t new_hit = 0;
        for (std::size_t b = 0; b < branches.size(); ++b) {
            if (branches[b].prime_count + 3 <= best) continue;
            if (b == hit) new_hit = keep.size();
            keep.push_back(std::move(branches[b]));
        }
        branches = std::move(keep);
        out = new_hit;
    }
    return {out, created};
}

std::optional<RationalCandidate> lift_candidate(const ReconstructionBranch& branch) {
    RationalCandidate cand;
    cand.modulus = branch.modulus;
    cand.basis.reserve(branch.supports.size());
    cand.primitive.reserve(branch.supports.size());
    for (std::size_t k = 0; k < branch.supports.size(); ++k) {
        auto poly = lift_poly(branch.supports[k], branch.residues[k], branch.modulus);
        if (!poly) return std::nullopt;
        if (poly->zero() || !(poly->lead_mono() == branch.leads[k]) || poly->lead_coeff() != 1)
            return std::nullopt;  // lift lost the signature; need more primes
        cand.primitive.push_back(primitive_part(*poly));
        cand.basis.push_back(std::move(*poly));
    }
    return cand;
}

bool stabilized(const RationalCandidate& candidate, const std::vector<ModPoly>& last_basis,
                const PrimeField& field) {
    if (candidate.basis.size() != last_basis.size()) return false;
    for (std::size_t k = 0; k < candidate.basis.size(); ++k)
        if (!rational_maps_onto(candidate.basis[k], last_basis[k], field)) return false;
    return true;
}

}  // namespace modgb
