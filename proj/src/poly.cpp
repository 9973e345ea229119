#include "modgb/poly.hpp"

namespace modgb {

std::pair<ModPoly, bool> map_mod(const IntPoly& f, const PrimeField& field) {
    std::vector<Monomial> monos;
    std::vector<std::uint32_t> coeffs;
    monos.reserve(f.size());
    coeffs.reserve(f.size());
    bool lead_vanished = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::uint32_t c = static_cast<std::uint32_t>(
            mpz_fdiv_ui(f.coeff(i).get_mpz_t(), field.modulus()));
        if (c == 0) {
            if (i == 0 && !f.zero()) lead_vanished = true;
            continue;
        }
        monos.push_back(f.mono(i));
        coeffs.push_back(c);
    }
    return {ModPoly::from_sorted(std::move(monos), std::move(coeffs)), lead_vanished};
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.zero()) return f;
    mpz_class content = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), f.coeff(i).get_mpz_t());
    if (sgn(f.lead_coeff()) < 0) content = -content;
    std::vector<mpz_class> coeffs;
    coeffs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) coeffs.push_back(f.coeff(i) / content);
    return IntPoly::from_sorted(f.monos(), std::move(coeffs));
}

IntPoly primitive_part(const RatPoly& f) {
    return primitive_part(to_integer(f));
}

IntPoly to_integer(const RatPoly& f, mpz_class* denominator) {
    mpz_class den = 1;
    for (std::size_t i = 0; i < f.size(); ++i)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.coeff(i).get_den_mpz_t());
    std::vector<mpz_class> coeffs;
    coeffs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpq_class scaled = f.coeff(i) * mpq_class(den);
        assert(scaled.get_den() == 1);
        coeffs.push_back(scaled.get_num());
    }
    if (denominator) *denominator = den;
    return IntPoly::from_sorted(f.monos(), std::move(coeffs));
}

RatPoly to_rational(const IntPoly& f) {
    std::vector<mpq_class> coeffs;
    coeffs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) coeffs.push_back(mpq_class(f.coeff(i)));
    return RatPoly::from_sorted(f.monos(), std::move(coeffs));
}

}  // namespace modgb
