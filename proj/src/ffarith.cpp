#include "ffx/ffarith.hpp"

namespace ffx {

BigInt balanced_mod(const BigInt& x, const BigInt& n) {
    if (n < 2) throw invalid_modulus_error("balanced_mod: modulus must be >= 2");
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());  // r in [0, n)
    if (2 * r > n) r -= n;
    return r;
}

std::int64_t balanced_mod(std::int64_t x, std::int64_t n) {
    if (n < 2) throw invalid_modulus_error("balanced_mod: modulus must be >= 2");
    std::int64_t r = x % n;
    if (r < 0) r += n;
    if (2 * r > n) r -= n;
    return r;
}

Bezout extended_gcd(const BigInt& a, const BigInt& b) {
    Bezout out;
    mpz_gcdext(out.g.get_mpz_t(), out.r.get_mpz_t(), out.s.get_mpz_t(),
               a.get_mpz_t(), b.get_mpz_t());
    return out;
}

BigInt inv_mod(const BigInt& i, const BigInt& n) {
    if (n < 2) throw invalid_modulus_error("inv_mod: modulus must be >= 2");
    BigInt u;
    if (!mpz_invert(u.get_mpz_t(), i.get_mpz_t(), n.get_mpz_t())) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), i.get_mpz_t(), n.get_mpz_t());
        throw not_a_unit_error(g, "inv_mod: " + i.get_str() + " is not a unit mod " +
                                      n.get_str() + " (gcd " + g.get_str() + ")");
    }
    return balanced_mod(u, n);
}

Residue::Residue(BigInt v, BigInt m) : value(std::move(v)), modulus(std::move(m)) {
    value = balanced_mod(value, modulus);
}

Fraction reduce_fraction(const BigInt& num, const BigInt& den) {
    if (den == 0) throw division_by_zero_error("reduce_fraction: zero denominator");
    if (num == 0) return {BigInt(0), BigInt(1)};
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Fraction f{num / g, den / g};
    if (f.den < 0) {
        f.num = -f.num;
        f.den = -f.den;
    }
    return f;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return balanced_mod(balanced_mod(a, p) * balanced_mod(b, p), p);
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p) {
    if (p < 2) throw invalid_modulus_error("pow_mod: modulus must be >= 2");
    std::int64_t base = balanced_mod(a, p);
    std::int64_t acc = balanced_mod(1, p);
    while (e > 0) {
        if (e & 1) acc = balanced_mod(acc * base, p);
        base = balanced_mod(base * base, p);
        e >>= 1;
    }
    return acc;
}

std::int64_t inv_mod(std::int64_t i, std::int64_t p) {
    if (p < 2) throw invalid_modulus_error("inv_mod: modulus must be >= 2");
    // extended Euclid on (i mod p, p); r*i0 ≡ rem (mod p) throughout
    std::int64_t rem = balanced_mod(i, p);
    if (rem < 0) rem += p;
    std::int64_t r0 = rem, r1 = p, s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw not_a_unit_error(BigInt(r0), "inv_mod: " + std::to_string(i) +
                                               " is not a unit mod " + std::to_string(p) +
                                               " (gcd " + std::to_string(r0) + ")");
    return balanced_mod(s0, p);
}

}  // namespace ffx
