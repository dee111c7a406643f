#include "ffx/mpoly.hpp"

#include <algorithm>
#include <cctype>

namespace ffx {

namespace {

long degree_of(const Exponents& e) {
    long d = 0;
    for (auto x : e) d += x;
    return d;
}

}  // namespace

bool GrlexDescending::operator()(const Exponents& a, const Exponents& b) const {
    long da = degree_of(a), db = degree_of(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic on exponent vectors
}

Polynomial Polynomial::constant(std::size_t nvars, BigInt c) {
    Polynomial f(nvars);
    f.add_term(Exponents(nvars, 0), c);
    return f;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
    Polynomial f(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    f.add_term(e, BigInt(1));
    return f;
}

long Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return degree_of(terms_.begin()->first);  // largest term comes first
}

void Polynomial::add_term(const Exponents& e, const BigInt& c) {
    if (e.size() != nvars_)
        throw dimension_mismatch_error("add_term: exponent vector has wrong length");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
        throw dimension_mismatch_error("polynomial addition: nvars mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
        throw dimension_mismatch_error("polynomial multiplication: nvars mismatch");
    Polynomial out(nvars_);
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = constant(nvars_, 1);
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("derivative: variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

void Polynomial::reduce_coefficients(const BigInt& p) {
    TermMap reduced;
    for (const auto& [e, c] : terms_) {
        BigInt r = balanced_mod(c, p);
        if (r != 0) reduced.emplace(e, r);
    }
    terms_ = std::move(reduced);
}

Residue Polynomial::evaluate_mod(const std::vector<BigInt>& point, const BigInt& p) const {
    if (point.size() != nvars_)
        throw dimension_mismatch_error("evaluate_mod: point has wrong length");
    if (p < 2) throw invalid_modulus_error("evaluate_mod: modulus must be >= 2");
    BigInt acc = 0, t, pw;
    for (const auto& [e, c] : terms_) {
        t = balanced_mod(c, p);
        for (std::size_t i = 0; i < nvars_ && t != 0; ++i) {
            if (e[i] == 0) continue;
            BigInt base;
            mpz_fdiv_r(base.get_mpz_t(), point[i].get_mpz_t(), p.get_mpz_t());
            mpz_powm_ui(pw.get_mpz_t(), base.get_mpz_t(), e[i], p.get_mpz_t());
            t = balanced_mod(t * pw, p);
        }
        acc = balanced_mod(acc + t, p);
    }
    return Residue(acc, p);
}

BigInt Polynomial::evaluate_int(const std::vector<BigInt>& point) const {
    if (point.size() != nvars_)
        throw dimension_mismatch_error("evaluate_int: point has wrong length");
    BigInt acc = 0, t, pw;
    for (const auto& [e, c] : terms_) {
        t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), e[i]);
            t *= pw;
        }
        acc += t;
    }
    return acc;
}

Fraction Polynomial::evaluate_rational(const std::vector<Fraction>& point) const {
    if (point.size() != nvars_)
        throw dimension_mismatch_error("evaluate_rational: point has wrong length");
    std::vector<mpq_class> coords(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        coords[i] = mpq_class(point[i].num, point[i].den);
        coords[i].canonicalize();
    }
    mpq_class acc = 0;
    BigInt pn, pd;
    for (const auto& [e, c] : terms_) {
        mpq_class t(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            mpz_pow_ui(pn.get_mpz_t(), coords[i].get_num_mpz_t(), e[i]);
            mpz_pow_ui(pd.get_mpz_t(), coords[i].get_den_mpz_t(), e[i]);
            t *= mpq_class(pn, pd);  // powers of a canonical fraction stay canonical
        }
        acc += t;
    }
    acc.canonicalize();
    return Fraction{BigInt(acc.get_num()), BigInt(acc.get_den())};
}

namespace {

// recursive descent; precedence ^ then * then binary +/-
class Parser {
  public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), nvars_(vars.size()) {
        for (std::size_t i = 0; i < vars.size(); ++i) index_[vars[i]] = i;
    }

    Polynomial run() {
        Polynomial f = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return f;
    }

  private:
    const std::string& text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t> index_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expr() {
        bool negate = false;
        char c = peek();
        if (c == '+' || c == '-') {
            negate = (c == '-');
            ++pos_;
        }
        Polynomial acc = term();
        if (negate) acc = -acc;
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Polynomial t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw parse_error("expected nonnegative integer exponent", at);
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
                if (e > 1000000) throw parse_error("exponent too large", at);
                ++pos_;
            }
            b = b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    Polynomial base() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Polynomial::constant(nvars_, BigInt(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            auto it = index_.find(name);
            if (it == index_.end()) throw unknown_variable_error(name, start);
            return Polynomial::variable(nvars_, it->second);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace

Polynomial parse(const std::string& text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

std::string print(const Polynomial& f, const std::vector<std::string>& vars) {
    if (vars.size() != f.nvars())
        throw dimension_mismatch_error("print: variable name list has wrong length");
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? '-' : '+';
        }
        BigInt a = neg ? BigInt(-c) : c;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += mono;
        } else {
            out += a.get_str() + "*" + mono;
        }
    }
    return out;
}

PolySystem::PolySystem(std::size_t nv, std::vector<Polynomial> ps)
    : nvars(nv), polys(std::move(ps)) {
    for (const auto& f : polys)
        if (f.nvars() != nvars)
            throw dimension_mismatch_error("PolySystem: polynomial has wrong nvars");
}

namespace {

// exponent vectors of total degree exactly d, in the order the recursion
// emits them; the order is part of the seeded-reproducibility contract
void monomials_of_degree(std::size_t nvars, unsigned d, std::size_t var, Exponents& cur,
                         std::vector<Exponents>& out) {
    if (var + 1 == nvars) {
        cur[var] = d;
        out.push_back(cur);
        return;
    }
    for (unsigned i = 0; i <= d; ++i) {
        cur[var] = i;
        monomials_of_degree(nvars, d - i, var + 1, cur, out);
    }
}

Polynomial random_homogeneous(unsigned degree, std::size_t nvars, std::int64_t p,
                              SplitMix64& rng) {
    std::vector<Exponents> monos;
    Exponents cur(nvars, 0);
    monomials_of_degree(nvars, degree, 0, cur, monos);
    Polynomial f(nvars);
    for (const auto& e : monos) {
        std::int64_t c = balanced_mod(static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(p)), p);
        if (c != 0) f.add_term(e, BigInt(c));
    }
    return f;
}

}  // namespace

Polynomial random_dense(unsigned degree, std::size_t nvars, std::int64_t p,
                        SplitMix64& rng, DenseMode mode) {
    if (nvars == 0) throw dimension_mismatch_error("random_dense: nvars must be >= 1");
    if (p < 2) throw invalid_modulus_error("random_dense: modulus must be >= 2");
    if (mode == DenseMode::homogeneous) return random_homogeneous(degree, nvars, p, rng);
    Polynomial f(nvars);
    for (unsigned d = 0; d <= degree; ++d) f = f + random_homogeneous(d, nvars, p, rng);
    return f;
}

Polynomial interpolate(const std::map<std::vector<std::int64_t>, std::int64_t>& table,
                       std::int64_t p, std::size_t nvars) {
    if (p < 2) throw invalid_modulus_error("interpolate: modulus must be >= 2");
    Polynomial result(nvars);
    for (const auto& [a, v] : table) {
        if (a.size() != nvars)
            throw dimension_mismatch_error("interpolate: point has wrong length");
        for (auto c : a)
            if (c < 0 || c >= p) throw std::out_of_range("interpolate: coordinate out of range");
        std::int64_t vr = balanced_mod(v, p);
        if (vr == 0) continue;
        // delta at a: prod_i (1 - (x_i - a_i)^(p-1))
        Polynomial delta = Polynomial::constant(nvars, 1);
        for (std::size_t i = 0; i < nvars; ++i) {
            Polynomial lin = Polynomial::variable(nvars, i) - Polynomial::constant(nvars, BigInt(a[i]));
            Polynomial factor =
                Polynomial::constant(nvars, 1) - lin.pow(static_cast<unsigned>(p - 1));
            delta = delta * factor;
            delta.reduce_coefficients(BigInt(p));
        }
        result = result + Polynomial::constant(nvars, BigInt(vr)) * delta;
        result.reduce_coefficients(BigInt(p));
    }
    return result;
}

CompiledPoly compile(const Polynomial& f, std::int64_t p) {
    if (p < 2) throw invalid_modulus_error("compile: modulus must be >= 2");
    CompiledPoly out;
    out.p = p;
    out.nvars = f.nvars();
    out.max_deg.assign(f.nvars(), 0);
    for (const auto& [e, c] : f.terms()) {
        BigInt r = balanced_mod(c, BigInt(p));
        if (r == 0) continue;
        CompiledPoly::Term t;
        t.coeff = static_cast<std::int64_t>(r.get_si());
        t.exps.assign(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i)
            out.max_deg[i] = std::max(out.max_deg[i], e[i]);
        out.terms.push_back(std::move(t));
    }
    return out;
}

std::int64_t CompiledPoly::eval(std::span<const std::int64_t> point) const {
    if (point.size() != nvars)
        throw dimension_mismatch_error("CompiledPoly::eval: point has wrong length");
    // per-coordinate power tables, then one multiply per (term, variable)
    thread_local std::vector<std::int64_t> pows;
    std::size_t stride = 0;
    for (auto d : max_deg) stride = std::max<std::size_t>(stride, d + 1);
    pows.assign(nvars * stride, 1);
    for (std::size_t i = 0; i < nvars; ++i) {
        std::int64_t x = balanced_mod(point[i], p);
        for (std::uint32_t k = 1; k <= max_deg[i]; ++k)
            pows[i * stride + k] = balanced_mod(pows[i * stride + k - 1] * x, p);
    }
    std::int64_t acc = 0;
    for (const auto& t : terms) {
        std::int64_t v = t.coeff;
        for (std::size_t i = 0; i < nvars; ++i) {
            if (t.exps[i] == 0) continue;
            v = balanced_mod(v * pows[i * stride + t.exps[i]], p);
        }
        acc += v;
        if (2 * acc > p) acc -= p;
        else if (2 * acc <= -p) acc += p;
    }
    return acc;
}

}  // namespace ffx
