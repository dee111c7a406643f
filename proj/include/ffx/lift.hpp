#pragma once

// From modular solutions to exact ones. Solutions of a zero-dimensional
// system collected mod several primes are combined by remaindering, or a
// single smooth solution mod p is lifted to mod p^(2^k) by a Newton step
// that doubles the exponent each time. Candidate integers or rationals read
// off from balanced residues are then certified by exact evaluation.

#include "ffx/dual.hpp"
#include "ffx/mpoly.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ffx {

struct budget_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_coprime_moduli_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct reconstruction_failed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_a_root_error : std::runtime_error {
    std::size_t index;  // offending polynomial
    not_a_root_error(std::size_t i, const std::string& what)
        : std::runtime_error(what), index(i) {}
};

struct singular_jacobian_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_invertible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// all common zeros of the system in [0,p)^nvars, lexicographic order;
// refuses when p^nvars exceeds the budget
std::vector<std::vector<std::int64_t>> all_points(const PolySystem& sys, std::int64_t p,
                                                  std::uint64_t budget = 10000000);

struct ModularValue {
    BigInt modulus;
    BigInt value;  // balanced
};

// combine values mod coprime n and m into one mod n*m, balanced
ModularValue crt_pair(const ModularValue& a, const ModularValue& b);
ModularValue crt_list(const std::vector<ModularValue>& entries);

struct RationalRecovery {
    Fraction value;
    bool unique;  // both |num| and den at most sqrt(n)/2
};

// Extended Euclid on (a, n), stopping at the first remainder below
// round(sqrt(n)); returns that remainder over its cofactor, reduced. The
// result r/s satisfies r ≡ a*s (mod n) before reduction.
RationalRecovery recover_rational(const BigInt& a, const BigInt& n);

struct BigMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<BigInt> entries;  // row-major

    BigMatrix() = default;
    BigMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

    BigInt& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// inverse mod n via the adjugate: inv_mod(det) * adj, entries balanced.
// Works for any modulus whose det is a unit, in particular prime powers.
BigMatrix inv_matrix_mod(const BigMatrix& m, const BigInt& n);

// lifting state: coordinates balanced mod `modulus`
struct ResidueVector {
    std::vector<BigInt> coords;
    BigInt modulus;
};

using LiftTrace = std::vector<ResidueVector>;

// One Newton step mod p^k -> mod p^(2k): with P the current state and
// J(i,j) = df_j/dx_i over ZZ,
//   correction = eps * ((f(P) * J(P)^-1 / eps) mod eps),  eps = p^k
//   P' = (P - correction) mod eps^2.
// Requires a square system, every f_i(P) ≡ 0 mod eps, and J invertible.
ResidueVector newton_step(const ResidueVector& state, const PolySystem& sys);

// `steps` doublings, recording every state; trace[0] is the start
LiftTrace newton_lift(const ResidueVector& start, const PolySystem& sys, unsigned steps);

std::vector<BigInt> integer_residuals(const PolySystem& sys,
                                      const std::vector<BigInt>& point);
bool certify_integer_solution(const std::vector<BigInt>& point, const PolySystem& sys);

std::vector<Fraction> rational_residuals(const PolySystem& sys,
                                         const std::vector<Fraction>& point);
bool certify_rational_solution(const std::vector<Fraction>& point, const PolySystem& sys);

}  // namespace ffx
