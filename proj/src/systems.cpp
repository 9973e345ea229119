#include "modgb/systems.hpp"

namespace modgb {

namespace {

Monomial mono_of(const std::vector<unsigned>& exps) {
    return Monomial::pack(std::span<const unsigned>(exps.data(), exps.size()));
}

}  // namespace

IdealSpec cyclic(unsigned n) {
    if (n < 2 || n > 9) throw Error("cyclic-n needs 2 <= n <= 9");
    IdealSpec ideal;
    for (unsigned i = 0; i < n; ++i) ideal.vars.push_back("x" + std::to_string(i));

    const RatRing ring;
    for (unsigned k = 1; k < n; ++k) {
        std::vector<Term<mpq_class>> terms;
        for (unsigned i = 0; i < n; ++i) {
            std::vector<unsigned> exps(n, 0);
            for (unsigned j = 0; j < k; ++j) exps[(i + j) % n] += 1;
            terms.push_back({mono_of(exps), mpq_class(1)});
        }
        ideal.generators.push_back(normalize(ring, std::move(terms)));
    }
    std::vector<Term<mpq_class>> last;
    last.push_back({mono_of(std::vector<unsigned>(n, 1)), mpq_class(1)});
    last.push_back({Monomial::unit(n), mpq_class(-1)});
    ideal.generators.push_back(normalize(ring, std::move(last)));
    return ideal;
}

IdealSpec katsura(unsigned n) {
    if (n < 1 || n > 12) throw Error("katsura-n needs 1 <= n <= 12");
    const unsigned nvars = n + 1;  // u0..un
    IdealSpec ideal;
    for (unsigned i = 0; i < nvars; ++i) ideal.vars.push_back("u" + std::to_string(i));

    const RatRing ring;
    const auto var_mono = [&](unsigned v, unsigned e) {
        std::vector<unsigned> exps(nvars, 0);
        exps[v] += e;
        return mono_of(exps);
    };
    for (unsigned m = 0; m < n; ++m) {
        std::vector<Term<mpq_class>> terms;
        for (int k = -static_cast<int>(n); k <= static_cast<int>(n); ++k) {
            const unsigned i = static_cast<unsigned>(k < 0 ? -k : k);
            const int mk = static_cast<int>(m) - k;
            const unsigned j = static_cast<unsigned>(mk < 0 ? -mk : mk);
            if (j > n) continue;
            std::vector<unsigned> exps(nvars, 0);
            exps[i] += 1;
            exps[j] += 1;
            terms.push_back({mono_of(exps), mpq_class(1)});
        }
        terms.push_back({var_mono(m, 1), mpq_class(-1)});
        ideal.generators.push_back(normalize(ring, std::move(terms)));
    }
    std::vector<Term<mpq_class>> linear;
    linear.push_back({var_mono(0, 1), mpq_class(1)});
    for (unsigned k = 1; k <= n; ++k) linear.push_back({var_mono(k, 1), mpq_class(2)});
    linear.push_back({Monomial::unit(nvars), mpq_class(-1)});
    ideal.generators.push_back(normalize(ring, std::move(linear)));
    return ideal;
}

std::vector<std::vector<Term<mpq_class>>> alea6_terms() {
    // exponents ordered (x, y, z, t, u, v)
    struct Raw {
        int coeff;
        unsigned e[6];
    };
    static const std::vector<std::vector<Raw>> raw = {
        {{5, {2, 0, 0, 1, 0, 0}},
         {37, {0, 1, 0, 1, 1, 0}},
         {32, {0, 1, 0, 1, 0, 1}},
         {21, {0, 0, 0, 1, 0, 1}},
         {55, {0, 0, 0, 0, 1, 1}}},
        {{39, {1, 1, 0, 0, 0, 1}},
         {23, {0, 2, 0, 0, 1, 0}},
         {57, {0, 1, 1, 0, 1, 0}},
         {56, {0, 1, 0, 0, 2, 0}},
         {10, {0, 0, 2, 0, 0, 0}},
         {52, {0, 0, 0, 1, 1, 1}}},
        {{33, {2, 0, 0, 1, 0, 0}},
         {51, {2, 0, 0, 0, 0, 0}},
         {42, {1, 0, 0, 1, 0, 1}},
         {51, {0, 2, 0, 0, 1, 0}},
         {32, {0, 1, 0, 2, 0, 0}},
         {1, {0, 0, 0, 0, 0, 3}}},
        {{44, {1, 0, 0, 2, 0, 0}},
         {42, {0, 1, 0, 1, 0, 0}},
         {47, {0, 1, 0, 0, 2, 0}},
         {12, {0, 0, 1, 1, 0, 0}},
         {2, {0, 0, 1, 0, 1, 1}},
         {43, {0, 0, 0, 1, 2, 0}}},
        {{49, {2, 0, 1, 0, 0, 0}},
         {11, {1, 1, 1, 0, 0, 0}},
         {39, {1, 0, 0, 1, 1, 0}},
         {44, {1, 0, 0, 1, 1, 0}},
         {54, {1, 0, 0, 1, 0, 0}},
         {45, {0, 2, 0, 0, 1, 0}}},
        {{48, {1, 0, 1, 1, 0, 0}},
         {2, {0, 0, 2, 1, 0, 0}},
         {59, {0, 0, 2, 0, 0, 1}},
         {17, {0, 0, 1, 0, 0, 0}},
         {36, {0, 0, 0, 3, 0, 0}},
         {45, {0, 0, 0, 0, 1, 0}}}};

    std::vector<std::vector<Term<mpq_class>>> out;
    out.reserve(raw.size());
    for (const auto& gen : raw) {
        std::vector<Term<mpq_class>> terms;
        terms.reserve(gen.size());
        for (const auto& r : gen) {
            std::vector<unsigned> exps(r.e, r.e + 6);
            terms.push_back({mono_of(exps), mpq_class(r.coeff)});
        }
        out.push_back(std::move(terms));
    }
    return out;
}

IdealSpec alea6() {
    IdealSpec ideal;
    ideal.vars = {"x", "y", "z", "t", "u", "v"};
    const RatRing ring;
    for (auto& terms : alea6_terms()) ideal.generators.push_back(normalize(ring, std::move(terms)));
    return ideal;
}

}  // namespace modgb
