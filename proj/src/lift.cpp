#include "ffx/lift.hpp"

namespace ffx {

std::vector<std::vector<std::int64_t>> all_points(const PolySystem& sys, std::int64_t p,
                                                  std::uint64_t budget) {
    if (p < 2) throw invalid_modulus_error("all_points: modulus must be >= 2");
    BigInt total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), sys.nvars);
    if (total > budget)
        throw budget_exceeded_error("all_points: p^nvars = " + total.get_str() +
                                    " exceeds budget " + std::to_string(budget));
    std::vector<CompiledPoly> compiled;
    compiled.reserve(sys.polys.size());
    for (const auto& f : sys.polys) compiled.push_back(compile(f, p));

    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> point(sys.nvars, 0);
    const std::uint64_t count = mpz_get_ui(total.get_mpz_t());
    for (std::uint64_t it = 0; it < count; ++it) {
        bool zero = true;
        for (const auto& f : compiled)
            if (f.eval(point) != 0) {
                zero = false;
                break;
            }
        if (zero) found.push_back(point);
        // odometer, last coordinate fastest: lexicographic emission order
        for (std::size_t i = sys.nvars; i-- > 0;) {
            if (++point[i] < p) break;
            point[i] = 0;
        }
    }
    return found;
}

ModularValue crt_pair(const ModularValue& a, const ModularValue& b) {
    const BigInt &n = a.modulus, &m = b.modulus;
    if (n < 2 || m < 2) throw invalid_modulus_error("crt_pair: moduli must be >= 2");
    Bezout bz = extended_gcd(n, m);  // n*r + m*s = g
    if (bz.g != 1)
        throw non_coprime_moduli_error("crt_pair: " + m.get_str() + " and " + n.get_str() +
                                       " not coprime (gcd " + bz.g.get_str() + ")");
    BigInt combined = bz.s * m * a.value + bz.r * n * b.value;
    return {n * m, balanced_mod(combined, n * m)};
}

ModularValue crt_list(const std::vector<ModularValue>& entries) {
    if (entries.empty()) throw std::invalid_argument("crt_list: need at least one entry");
    ModularValue acc{entries[0].modulus, balanced_mod(entries[0].value, entries[0].modulus)};
    for (std::size_t i = 1; i < entries.size(); ++i) acc = crt_pair(acc, entries[i]);
    return acc;
}

RationalRecovery recover_rational(const BigInt& a, const BigInt& n) {
    if (n < 2) throw invalid_modulus_error("recover_rational: modulus must be >= 2");
    // threshold round(sqrt(n)); sqrt(n) is never exactly halfway
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    BigInt k = (n - s * s > s) ? BigInt(s + 1) : s;

    BigInt r0 = a, s0 = 1;
    BigInt r1 = n, s1 = 0;
    BigInt r2, s2, q, t;
    do {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        r2 = r0 - q * r1;
        s2 = s0 - q * s1;
        r0 = r1; s0 = s1;
        r1 = r2; s1 = s2;
    } while (k <= r1);
    if (s2 == 0)
        throw reconstruction_failed_error("recover_rational: zero denominator for " +
                                          a.get_str() + " mod " + n.get_str());
    Fraction f = reduce_fraction(r2, s2);
    bool unique = 4 * f.num * f.num <= n && 4 * f.den * f.den <= n;
    return {f, unique};
}

namespace {

BigInt det_recursive(const BigMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    const std::size_t n = cols.size();
    if (n == 1) return m.at(row, cols[0]);
    BigInt acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = cols[i];
        if (m.at(row, c) != 0) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(i));
            BigInt sub = det_recursive(m, cols, row + 1);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(i), c);
            BigInt term = m.at(row, c) * sub;
            acc += (i % 2 == 0) ? term : -term;
        }
    }
    return acc;
}

BigInt determinant(const BigMatrix& m) {
    std::vector<std::size_t> cols(m.cols);
    for (std::size_t i = 0; i < m.cols; ++i) cols[i] = i;
    return det_recursive(m, cols, 0);
}

BigMatrix minor_of(const BigMatrix& m, std::size_t row, std::size_t col) {
    BigMatrix out(m.rows - 1, m.cols - 1);
    for (std::size_t i = 0, oi = 0; i < m.rows; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, oj = 0; j < m.cols; ++j) {
            if (j == col) continue;
            out.at(oi, oj) = m.at(i, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

}  // namespace

BigMatrix inv_matrix_mod(const BigMatrix& m, const BigInt& n) {
    if (m.rows != m.cols) throw std::invalid_argument("inv_matrix_mod: matrix not square");
    if (m.rows == 0) throw std::invalid_argument("inv_matrix_mod: empty matrix");
    if (n < 2) throw invalid_modulus_error("inv_matrix_mod: modulus must be >= 2");
    BigMatrix red(m.rows, m.cols);
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        red.entries[i] = balanced_mod(m.entries[i], n);
    BigInt det = balanced_mod(determinant(red), n);
    BigInt det_inv;
    try {
        det_inv = inv_mod(det, n);
    } catch (const not_a_unit_error& e) {
        throw not_invertible_error("inv_matrix_mod: determinant " + det.get_str() +
                                   " is not a unit mod " + n.get_str() + " (gcd " +
                                   e.gcd.get_str() + ")");
    }
    BigMatrix inv(m.rows, m.cols);
    if (m.rows == 1) {
        inv.at(0, 0) = balanced_mod(det_inv, n);
        return inv;
    }
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            BigInt cof = determinant(minor_of(red, j, i));  // adjugate transposes
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = balanced_mod(det_inv * cof, n);
        }
    return inv;
}

ResidueVector newton_step(const ResidueVector& state, const PolySystem& sys) {
    const std::size_t n = sys.nvars;
    if (sys.size() != n)
        throw std::invalid_argument("newton_step: system must be square");
    if (state.coords.size() != n)
        throw dimension_mismatch_error("newton_step: state has wrong length");
    const BigInt& eps = state.modulus;
    if (eps < 2) throw invalid_modulus_error("newton_step: modulus must be >= 2");

    std::vector<BigInt> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        residual[i] = sys.polys[i].evaluate_int(state.coords);
        if (balanced_mod(residual[i], eps) != 0)
            throw not_a_root_error(i, "newton_step: polynomial " + std::to_string(i) +
                                          " does not vanish at the state mod " +
                                          eps.get_str());
    }

    // J(i,j) = df_j/dx_i at the state, over ZZ
    BigMatrix jac(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            jac.at(i, j) = sys.polys[j].derivative(i).evaluate_int(state.coords);
    BigMatrix jinv;
    try {
        jinv = inv_matrix_mod(jac, eps);
    } catch (const not_invertible_error& e) {
        throw singular_jacobian_error(std::string("newton_step: ") + e.what());
    }

    BigInt eps2 = eps * eps;
    ResidueVector next;
    next.modulus = eps2;
    next.coords.resize(n);
    BigInt dot, quo, rem;
    for (std::size_t j = 0; j < n; ++j) {
        dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += residual[i] * jinv.at(i, j);
        mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), dot.get_mpz_t(), eps.get_mpz_t());
        if (rem != 0)
            throw std::logic_error("newton_step: correction not divisible by the modulus");
        BigInt correction = eps * balanced_mod(quo, eps);
        next.coords[j] = balanced_mod(state.coords[j] - correction, eps2);
    }
    return next;
}

LiftTrace newton_lift(const ResidueVector& start, const PolySystem& sys, unsigned steps) {
    LiftTrace trace;
    trace.push_back({start.coords, start.modulus});
    for (auto& c : trace[0].coords) c = balanced_mod(c, start.modulus);
    for (unsigned i = 0; i < steps; ++i) {
        try {
            trace.push_back(newton_step(trace.back(), sys));
        } catch (const not_a_root_error& e) {
            throw not_a_root_error(e.index, std::string(e.what()) + " (lift step " +
                                                std::to_string(i + 1) + ")");
        } catch (const singular_jacobian_error& e) {
            throw singular_jacobian_error(std::string(e.what()) + " (lift step " +
                                          std::to_string(i + 1) + ")");
        }
    }
    return trace;
}

std::vector<BigInt> integer_residuals(const PolySystem& sys,
                                      const std::vector<BigInt>& point) {
    std::vector<BigInt> out;
    out.reserve(sys.size());
    for (const auto& f : sys.polys) out.push_back(f.evaluate_int(point));
    return out;
}

bool certify_integer_solution(const std::vector<BigInt>& point, const PolySystem& sys) {
    for (const auto& r : integer_residuals(sys, point))
        if (r != 0) return false;
    return true;
}

std::vector<Fraction> rational_residuals(const PolySystem& sys,
                                         const std::vector<Fraction>& point) {
    std::vector<Fraction> out;
    out.reserve(sys.size());
    for (const auto& f : sys.polys) out.push_back(f.evaluate_rational(point));
    return out;
}

bool certify_rational_solution(const std::vector<Fraction>& point, const PolySystem& sys) {
    for (const auto& r : rational_residuals(sys, point))
        if (r.num != 0) return false;
    return true;
}

}  // namespace ffx
