#include "modgb/arith.hpp"

namespace modgb {

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = m == 1 ? 0 : 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod_u64(r, base, m);
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t prime_near(std::uint64_t bound, PrimeDirection dir) {
    if (dir == PrimeDirection::below) {
        if (bound <= 2) throw NoPrime("no prime below 2");
        for (std::uint64_t n = bound - 1;; --n) {
            if (is_prime_u64(n)) return n;
            if (n == 2) throw NoPrime("no prime below bound");
        }
    }
    std::uint64_t n = bound + 1;
    while (!is_prime_u64(n)) ++n;
    return n;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p <= 2 || p >= (1u << 31) || !is_prime_u64(p))
        throw Error("PrimeField modulus must be a prime in (2, 2^31)");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw ZeroInverse("inverse of zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    assert(r == 1);  // p prime, a nonzero
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = (r * b) % p_;
        b = (b * b) % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

}  // namespace modgb
