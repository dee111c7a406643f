#include "ffx/dual.hpp"

namespace ffx {

DualFp dual_pow(DualFp a, std::uint32_t e, std::int64_t p) {
    if (e == 0) return {balanced_mod(1, p), 0};
    if (e == 1) return {balanced_mod(a.val, p), balanced_mod(a.der, p)};
    std::int64_t ve = pow_mod(a.val, e, p);
    std::int64_t de = mul_mod(mul_mod(balanced_mod(static_cast<std::int64_t>(e) % p, p),
                                      pow_mod(a.val, e - 1, p), p),
                              a.der, p);
    return {ve, de};
}

DualFp eval_dual(const CompiledPoly& f, std::span<const std::int64_t> a,
                 std::span<const std::int64_t> b) {
    if (a.size() != f.nvars || b.size() != f.nvars)
        throw dimension_mismatch_error("eval_dual: point or direction has wrong length");
    const std::int64_t p = f.p;
    DualFp acc{0, 0};
    for (const auto& t : f.terms) {
        DualFp v{balanced_mod(t.coeff, p), 0};
        for (std::size_t i = 0; i < f.nvars; ++i) {
            if (t.exps[i] == 0) continue;
            DualFp x{balanced_mod(a[i], p), balanced_mod(b[i], p)};
            v = dual_mul(v, dual_pow(x, t.exps[i], p), p);
        }
        acc = dual_add(acc, v, p);
    }
    return acc;
}

DualElement eval_dual(const Polynomial& f, const std::vector<std::int64_t>& a,
                      const std::vector<std::int64_t>& b, std::int64_t p) {
    DualFp r = eval_dual(compile(f, p), std::span(a), std::span(b));
    return {Residue(BigInt(r.val), BigInt(p)), Residue(BigInt(r.der), BigInt(p))};
}

FpMatrix jacobian_at(const std::vector<CompiledPoly>& compiled,
                     std::span<const std::int64_t> a, std::int64_t p) {
    const std::size_t m = compiled.size();
    const std::size_t n = m == 0 ? 0 : compiled[0].nvars;
    FpMatrix out(m, n, p);
    std::vector<std::int64_t> dir(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        dir[j] = 1;
        for (std::size_t i = 0; i < m; ++i)
            out.at(i, j) = eval_dual(compiled[i], a, std::span(dir)).der;
        dir[j] = 0;
    }
    return out;
}

FpMatrix jacobian_at(const PolySystem& sys, const std::vector<std::int64_t>& a,
                     std::int64_t p) {
    if (a.size() != sys.nvars)
        throw dimension_mismatch_error("jacobian_at: point has wrong length");
    std::vector<CompiledPoly> compiled;
    compiled.reserve(sys.polys.size());
    for (const auto& f : sys.polys) compiled.push_back(compile(f, p));
    return jacobian_at(compiled, std::span(a), p);
}

std::size_t rank_mod_p(const FpMatrix& m) {
    if (m.p < 2) throw invalid_modulus_error("rank_mod_p: modulus must be >= 2");
    FpMatrix w = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < w.rows && w.at(pivot, col) == 0) ++pivot;
        if (pivot == w.rows) continue;
        for (std::size_t j = 0; j < w.cols; ++j)
            std::swap(w.entries[rank * w.cols + j], w.entries[pivot * w.cols + j]);
        std::int64_t inv = inv_mod(w.at(rank, col), w.p);
        for (std::size_t i = rank + 1; i < w.rows; ++i) {
            if (w.at(i, col) == 0) continue;
            std::int64_t factor = mul_mod(w.at(i, col), inv, w.p);
            for (std::size_t j = col; j < w.cols; ++j)
                w.at(i, j) = balanced_mod(w.at(i, j) - factor * w.at(rank, j), w.p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace ffx
