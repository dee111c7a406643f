#pragma once

// Exact integer, modular and rational arithmetic. Everything downstream
// (polynomial evaluation, remaindering, lifting) reduces to these primitives.
//
// Residues are kept in balanced form: the representative of x mod n is the
// unique r with -n/2 < r <= n/2. Balanced form is what makes negative
// integers recoverable from remaindering, so it is the default everywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffx {

using BigInt = mpz_class;

struct invalid_modulus_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct division_by_zero_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct not_a_unit_error : std::domain_error {
    BigInt gcd;
    not_a_unit_error(BigInt g, const std::string& what)
        : std::domain_error(what), gcd(std::move(g)) {}
};

// Balanced representative of x mod n, in (-n/2, n/2]. For even n the
// boundary residue n/2 keeps the positive sign. Requires n >= 2.
BigInt balanced_mod(const BigInt& x, const BigInt& n);
std::int64_t balanced_mod(std::int64_t x, std::int64_t n);

// g = gcd(a,b) >= 0 and a*r + b*s = g.
struct Bezout {
    BigInt g, r, s;
};
Bezout extended_gcd(const BigInt& a, const BigInt& b);

// Balanced inverse of i mod n. Throws not_a_unit_error (carrying gcd(i,n))
// when i is not invertible.
BigInt inv_mod(const BigInt& i, const BigInt& n);

// A residue tagged with its modulus; value is stored balanced.
struct Residue {
    BigInt value;
    BigInt modulus;

    Residue(BigInt v, BigInt m);
    bool operator==(const Residue&) const = default;
};

// num/den in lowest terms, den > 0, zero is 0/1.
struct Fraction {
    BigInt num;
    BigInt den;

    bool operator==(const Fraction&) const = default;
};

Fraction reduce_fraction(const BigInt& num, const BigInt& den);

// int64 lane for inner loops mod a word-sized prime p (p < 2^31, so products
// of balanced representatives never overflow). Inputs may be arbitrary
// representatives; results are balanced.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p);
std::int64_t inv_mod(std::int64_t i, std::int64_t p);

}  // namespace ffx
