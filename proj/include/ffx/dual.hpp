#pragma once

// Dual numbers over F_p: elements a + b*eps with eps^2 = 0, so
// f(a + b*eps) = f(a) + (directional derivative of f at a along b)*eps.
// Jacobians fall out of n evaluations along the unit directions; nothing
// here ever differentiates symbolically.

#include "ffx/mpoly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ffx {

struct DualElement {
    Residue value;
    Residue deriv;
};

// int64 lane, components balanced mod p
struct DualFp {
    std::int64_t val;
    std::int64_t der;
};

inline DualFp dual_add(DualFp a, DualFp b, std::int64_t p) {
    return {balanced_mod(a.val + b.val, p), balanced_mod(a.der + b.der, p)};
}

inline DualFp dual_mul(DualFp a, DualFp b, std::int64_t p) {
    return {balanced_mod(a.val * b.val, p),
            balanced_mod(a.val * b.der + a.der * b.val, p)};
}

// (a + b*eps)^e = a^e + e*a^(e-1)*b*eps, exact in any characteristic
DualFp dual_pow(DualFp a, std::uint32_t e, std::int64_t p);

DualFp eval_dual(const CompiledPoly& f, std::span<const std::int64_t> a,
                 std::span<const std::int64_t> b);

DualElement eval_dual(const Polynomial& f, const std::vector<std::int64_t>& a,
                      const std::vector<std::int64_t>& b, std::int64_t p);

// Matrix over F_p; entries balanced, all sharing the modulus p.
struct FpMatrix {
    std::size_t rows = 0, cols = 0;
    std::int64_t p = 0;
    std::vector<std::int64_t> entries;  // row-major

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c, std::int64_t prime)
        : rows(r), cols(c), p(prime), entries(r * c, 0) {}

    std::int64_t& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// entry (i,j) = df_i/dx_j at a, each column from one dual pass
FpMatrix jacobian_at(const PolySystem& sys, const std::vector<std::int64_t>& a,
                     std::int64_t p);
FpMatrix jacobian_at(const std::vector<CompiledPoly>& compiled,
                     std::span<const std::int64_t> a, std::int64_t p);

// Gaussian elimination, pivoting on the first nonzero entry in column order.
std::size_t rank_mod_p(const FpMatrix& m);

}  // namespace ffx
