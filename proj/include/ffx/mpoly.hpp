#pragma once

// Sparse multivariate polynomials over the integers.
//
// The representation is a map from exponent vectors to nonzero BigInt
// coefficients, ordered graded-lexicographically with the largest term
// first, which is also the canonical print order. Polynomials are plain
// values; all operations are exact over ZZ unless the name says otherwise.

#include "ffx/ffarith.hpp"
#include "ffx/rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffx {

using Exponents = std::vector<std::uint32_t>;

// total degree first, then lexicographic; "less" means prints later
struct GrlexDescending {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

struct parse_error : std::runtime_error {
    std::size_t position;  // byte offset into the input
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct unknown_variable_error : parse_error {
    std::string name;
    unknown_variable_error(std::string var, std::size_t pos)
        : parse_error("unknown variable '" + var + "'", pos), name(std::move(var)) {}
};

struct dimension_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Polynomial {
  public:
    using TermMap = std::map<Exponents, BigInt, GrlexDescending>;

    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, BigInt c);
    static Polynomial variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    long total_degree() const;  // -1 for the zero polynomial

    // accumulates c into the coefficient of e, dropping it if the sum is 0
    void add_term(const Exponents& e, const BigInt& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial&) const = default;

    Polynomial derivative(std::size_t var) const;

    // reduce every coefficient to balanced form mod p, dropping zeros
    void reduce_coefficients(const BigInt& p);

    // one term at a time: coefficient reduced mod p first, coordinate powers
    // by square-and-multiply mod p; never expands anything over ZZ
    Residue evaluate_mod(const std::vector<BigInt>& point, const BigInt& p) const;

    BigInt evaluate_int(const std::vector<BigInt>& point) const;
    Fraction evaluate_rational(const std::vector<Fraction>& point) const;

  private:
    std::size_t nvars_;
    TermMap terms_;
};

// Grammar: integer literals, declared variable names, + - * ^ and
// parentheses; ^ binds tighter than *, * tighter than + and -; an optional
// sign may open an expression (or parenthesized subexpression); * is never
// implicit; whitespace is ignored. Exponents are nonnegative literals.
Polynomial parse(const std::string& text, const std::vector<std::string>& vars);

// canonical form; parse(print(f)) == f
std::string print(const Polynomial& f, const std::vector<std::string>& vars);

struct PolySystem {
    std::size_t nvars = 0;
    std::vector<Polynomial> polys;

    PolySystem() = default;
    PolySystem(std::size_t nv, std::vector<Polynomial> ps);
    std::size_t size() const { return polys.size(); }
};

enum class DenseMode { homogeneous, inhomogeneous };

// Homogeneous: every monomial of degree exactly `degree` gets a uniform
// balanced coefficient mod p (zero draws simply leave the monomial out).
// Inhomogeneous: sum of such pieces for every degree 0..`degree`.
Polynomial random_dense(unsigned degree, std::size_t nvars, std::int64_t p,
                        SplitMix64& rng, DenseMode mode);

// Dense interpolation over F_p from a value table on points of [0,p)^nvars:
// sum of v_a * prod_i (1 - (x_i - a_i)^(p-1)). Exact on the table's keys;
// a full table determines the function everywhere.
Polynomial interpolate(const std::map<std::vector<std::int64_t>, std::int64_t>& table,
                       std::int64_t p, std::size_t nvars);

// Flattened form of one polynomial for evaluation loops mod a fixed p:
// balanced int64 coefficients, terms with coefficient ≡ 0 dropped.
struct CompiledPoly {
    struct Term {
        std::int64_t coeff;
        std::vector<std::uint32_t> exps;
    };

    std::int64_t p = 0;
    std::size_t nvars = 0;
    std::vector<Term> terms;
    std::vector<std::uint32_t> max_deg;  // per variable, over all terms

    std::int64_t eval(std::span<const std::int64_t> point) const;
};

CompiledPoly compile(const Polynomial& f, std::int64_t p);

}  // namespace ffx
