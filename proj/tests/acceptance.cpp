// End-to-end acceptance gate: one PASS/FAIL line per criterion, exit code =
// number of failures. Each criterion is independent and self-timed where a
// runtime bound applies.

#include "ffx/cli.hpp"
#include "ffx/lift.hpp"
#include "ffx/scan.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ffx;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

void run(int criterion, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(criterion, ok, detail);
    } catch (const std::exception& e) {
        report(criterion, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string> kXY{"x", "y"};

PolySystem conics_int() {
    return PolySystem(2, {parse("-8*x^2-x*y-7*y^2+5238*x-11582*y-7696", kXY),
                          parse("4*x*y-10*y^2-2313*x-16372*y-6462", kXY)});
}

PolySystem conics_rat() {
    return PolySystem(2, {parse("176*x^2+148*x*y+301*y^2-742*x+896*y+768", kXY),
                          parse("-25*x*y+430*y^2+33*x+1373*y+645", kXY)});
}

using PointSet = std::set<std::vector<std::int64_t>>;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

// ---- criterion 1: modular tables, remaindering, integer certificate ----

std::pair<bool, std::string> lifting_chain() {
    auto t0 = std::chrono::steady_clock::now();
    PolySystem sys = conics_int();

    const std::vector<std::pair<std::int64_t, PointSet>> tables{
        {2, {{0, 0}}},
        {3, {{0, 2}, {1, 0}, {2, 0}}},
        {5, {{4, 1}}},
        {7, {{2, 3}, {5, 5}}},
        {11, {{2, 7}, {8, 1}}},
        {13, {{3, 4}, {12, 6}}},
        {17, {{10, 8}}},
        {19, {{1, 3}, {1, 17}, {18, 5}, {18, 18}}},
        {23, {{15, 8}}},
    };
    for (const auto& [p, expect] : tables) {
        auto pts = all_points(sys, p);
        if (PointSet(pts.begin(), pts.end()) != expect)
            return {false, "solution table mod " + std::to_string(p) + " is wrong"};
    }

    // the four primes with unique solutions combine coordinate-wise
    const std::vector<std::int64_t> primes{2, 5, 17, 23};
    std::vector<BigInt> coords(2);
    BigInt modulus;
    for (std::size_t c = 0; c < 2; ++c) {
        std::vector<ModularValue> entries;
        for (auto p : primes) {
            auto pts = all_points(sys, p);
            if (pts.size() != 1) return {false, "expected a unique point mod " + std::to_string(p)};
            entries.push_back({BigInt(p), BigInt(pts[0][c])});
        }
        ModularValue mv = crt_list(entries);
        coords[c] = mv.value;
        modulus = mv.modulus;
    }
    if (modulus != 3910 || coords[0] != 1234 || coords[1] != -774)
        return {false, "remaindered candidate is (" + coords[0].get_str() + ", " +
                           coords[1].get_str() + ") mod " + modulus.get_str()};
    if (!certify_integer_solution(coords, sys))
        return {false, "integer certification rejected (1234, -774)"};

    double dt = seconds_since(t0);
    if (dt >= 1.0) return {false, "took " + fmt(dt) + "s (limit 1s)"};
    return {true, "nine solution tables, candidate (1234, -774) mod 3910 certified over ZZ in " +
                      fmt(dt) + "s"};
}

// ---- criterion 2: rational recovery and certificates ----

std::pair<bool, std::string> rational_recovery() {
    RationalRecovery a = recover_rational(7, 37);
    if (a.value.num != -2 || a.value.den != 5) return {false, "recover(7, 37) != -2/5"};
    RationalRecovery x = recover_rational(138949, 1222702);
    if (x.value.num != 123 || x.value.den != 22)
        return {false, "recover(138949, 1222702) != 123/22"};
    RationalRecovery y = recover_rational(-526048, 1222702);
    if (y.value.num != -77 || y.value.den != 43)
        return {false, "recover(-526048, 1222702) != -77/43"};

    PolySystem sys = conics_rat();
    if (!certify_rational_solution({x.value, y.value}, sys))
        return {false, "(123/22, -77/43) failed rational certification"};

    std::vector<BigInt> cand{BigInt(138949), BigInt(-526048)};
    if (certify_integer_solution(cand, sys))
        return {false, "integer certification wrongly accepted the candidate"};
    auto res = integer_residuals(sys, cand);
    if (res[0] != BigInt("75874213835186") || res[1] != BigInt("120819022681578"))
        return {false, "integer residuals are (" + res[0].get_str() + ", " +
                           res[1].get_str() + ")"};
    return {true, "-2/5, 123/22, -77/43 recovered; certificates and residuals exact"};
}

// ---- criterion 3: Newton traces ----

std::pair<bool, std::string> newton_traces() {
    auto t0 = std::chrono::steady_clock::now();
    PolySystem sys = conics_int();

    LiftTrace t = newton_lift({{BigInt(2), BigInt(3)}, BigInt(7)}, sys, 4);
    const std::vector<std::pair<std::vector<long>, BigInt>> expect{
        {{9, 10}, BigInt(49)},
        {{-1167, -774}, BigInt(2401)},
        {{1234, -774}, BigInt("5764801")},
        {{1234, -774}, BigInt("33232930569601")},
    };
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const auto& st = t[i + 1];
        if (st.modulus != expect[i].second || st.coords[0] != expect[i].first[0] ||
            st.coords[1] != expect[i].first[1])
            return {false, "trace from (2,3) diverges at state " + std::to_string(i + 1)};
    }

    LiftTrace u = newton_lift({{BigInt(5), BigInt(5)}, BigInt(7)}, sys, 4);
    if (u[4].coords[0] != BigInt("11082657337694") ||
        u[4].coords[1] != BigInt("-9795607574104") ||
        u[4].modulus != BigInt("33232930569601"))
        return {false, "trace from (5,5) has the wrong 4th state"};

    double dt = seconds_since(t0);
    if (dt >= 1.0) return {false, "took " + fmt(dt) + "s (limit 1s)"};
    return {true, "both traces to modulus 7^16 exact in " + fmt(dt) + "s"};
}

// ---- criterion 4: regression slope on recorded find-k data ----

std::pair<bool, std::string> slope_fit() {
    CodimFit fit =
        estimate_codim_components({{5, 50, 5724}, {7, 50, 17825}, {11, 50, 68349}});
    double err = std::abs(fit.c - 3.13578);
    if (err > 1e-4)
        return {false, "slope " + fmt(fit.c) + " misses 3.13578 by " + fmt(err)};
    return {true, "slope " + fmt(fit.c) + " within 1e-4 of 3.13578"};
}

// ---- criterion 5: component estimate error bars ----

std::pair<bool, std::string> error_bars() {
    auto est = codim_component_estimate({{1, 106}, {2, 14}}, 7, 700);
    struct Want {
        std::size_t c;
        double value, hw;
    };
    for (const Want& w : {Want{1, 1.06, 0.27}, Want{2, 0.98, 0.68}}) {
        if (!est.count(w.c)) return {false, "no estimate for codim " + std::to_string(w.c)};
        if (std::abs(est[w.c].value - w.value) > 0.005 ||
            std::abs(est[w.c].halfwidth99 - w.hw) > 0.005)
            return {false, "codim " + std::to_string(w.c) + " estimate " +
                               fmt(est[w.c].value) + " +/- " + fmt(est[w.c].halfwidth99)};
    }
    return {true, "1.06 +/- 0.27 and 0.98 +/- 0.68, each number within 0.005"};
}

// ---- criterion 6: census of all functions vs the exact distribution ----

std::pair<bool, std::string> census() {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& [p, n] : std::vector<std::pair<std::int64_t, unsigned>>{
             {2, 1}, {2, 2}, {3, 1}}) {
        const std::uint64_t domain = static_cast<std::uint64_t>(std::pow(p, n));
        std::uint64_t tables = 1;
        for (std::uint64_t i = 0; i < domain; ++i) tables *= static_cast<std::uint64_t>(p);

        // every function F_p^n -> F_p is a value table; count its zeros
        std::vector<std::uint64_t> hist_one(domain + 1, 0);
        std::vector<std::vector<int>> all_tables;
        all_tables.reserve(tables);
        for (std::uint64_t code = 0; code < tables; ++code) {
            std::vector<int> tab(domain);
            std::uint64_t c = code;
            std::uint64_t zeros = 0;
            for (std::uint64_t i = 0; i < domain; ++i) {
                tab[i] = static_cast<int>(c % static_cast<std::uint64_t>(p));
                c /= static_cast<std::uint64_t>(p);
                if (tab[i] == 0) ++zeros;
            }
            ++hist_one[zeros];
            all_tables.push_back(std::move(tab));
        }
        ZeroCountModel one{p, n, 1};
        for (std::uint64_t k = 0; k <= domain; ++k) {
            mpq_class mass = zero_count_pmf(one, BigInt(static_cast<long>(k)));
            BigInt scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(domain));
            mpq_class want = mass * mpq_class(scale);
            want.canonicalize();
            if (want.get_den() != 1 || want.get_num() != hist_one[k])
                return {false, "single-factor census off at p=" + std::to_string(p) +
                                   " n=" + std::to_string(n) + " k=" + std::to_string(k)};
        }

        // ordered pairs, zeros of the pointwise product
        std::vector<std::uint64_t> hist_two(domain + 1, 0);
        for (const auto& f : all_tables)
            for (const auto& g : all_tables) {
                std::uint64_t zeros = 0;
                for (std::uint64_t i = 0; i < domain; ++i)
                    if (f[i] * g[i] % p == 0) ++zeros;
                ++hist_two[zeros];
            }
        ZeroCountModel two{p, n, 2};
        for (std::uint64_t k = 0; k <= domain; ++k) {
            mpq_class mass = zero_count_pmf(two, BigInt(static_cast<long>(k)));
            BigInt scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(2 * domain));
            mpq_class want = mass * mpq_class(scale);
            want.canonicalize();
            if (want.get_den() != 1 || want.get_num() != hist_two[k])
                return {false, "product census off at p=" + std::to_string(p) +
                                   " n=" + std::to_string(n) + " k=" + std::to_string(k)};
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 1.0) return {false, "took " + fmt(dt) + "s (limit 1s)"};
    return {true, "all function and pair censuses match the exact distribution in " +
                      fmt(dt) + "s"};
}

// ---- criterion 7: dual numbers against symbolic derivatives ----

std::pair<bool, std::string> dual_property() {
    SplitMix64 rng(2024);
    const std::int64_t primes[] = {2, 3, 5, 7, 13, 101};
    const std::size_t nvars = 3;
    std::uint64_t instances = 0;
    for (int it = 0; it < 3500; ++it) {
        Polynomial f(nvars);
        std::size_t nterms = 1 + rng.next() % 6;
        for (std::size_t t = 0; t < nterms; ++t) {
            Exponents e(nvars);
            for (auto& xg : e) xg = static_cast<std::uint32_t>(rng.next() % 5);
            f.add_term(e, BigInt(static_cast<long>(rng.next() % 201) - 100));
        }
        std::int64_t p = primes[rng.next() % 6];
        std::vector<std::int64_t> a(nvars);
        for (auto& c : a) c = static_cast<std::int64_t>(rng.next() % p);
        std::vector<BigInt> abig(a.begin(), a.end());
        for (std::size_t i = 0; i < nvars; ++i) {
            std::vector<std::int64_t> dir(nvars, 0);
            dir[i] = 1;
            DualElement d = eval_dual(f, a, dir, p);
            Residue want = f.derivative(i).evaluate_mod(abig, BigInt(p));
            if (d.deriv.value != want.value)
                return {false, "dual derivative mismatch after " +
                                   std::to_string(instances) + " instances"};
            ++instances;
        }
    }
    if (instances < 10000)
        return {false, "only " + std::to_string(instances) + " instances checked"};
    return {true, std::to_string(instances) + " random dual evaluations equal the symbolic derivative"};
}

// ---- criterion 8: statistical reproduction at fixed seeds ----

std::pair<bool, std::string> statistical_reproduction() {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::string> vars{"x", "y", "z", "w"};
    Polynomial F = parse("x^23+1248*y*z+w+129269698", vars);
    Polynomial G = parse("x*y*z*w+z^25-938493+x-z*w", vars);

    // (a) single factor: zero count near 700/7 = 100; scan seed 0
    ScanReport single =
        run_scan(MembershipPredicate::vanishing(PolySystem(4, {F})), {7, 700, 0, 1});
    double mu = 700.0 / 7.0;
    if (std::abs(static_cast<double>(single.hits) - mu) > 2.58 * std::sqrt(mu))
        return {false, "(a) single-factor count " + std::to_string(single.hits) +
                           " outside 100 +/- 25.8"};

    // (b) product of two factors: count near 700 * 13/49; scan seed 0
    ScanReport product =
        run_scan(MembershipPredicate::vanishing(PolySystem(4, {F * G})), {7, 700, 0, 1});
    double q = 13.0 / 49.0;
    double mean2 = 700.0 * q, sig2 = std::sqrt(700.0 * q * (1.0 - q));
    if (std::abs(static_cast<double>(product.hits) - mean2) > 2.58 * sig2)
        return {false, "(b) product count " + std::to_string(product.hits) +
                           " outside the two-factor band"};

    // (c) union of a hypersurface and a codim-2 piece, read off Jacobian
    // ranks; generation seed 3, scan seed 0
    SplitMix64 gen(3);
    Polynomial A = random_dense(2, 6, 7, gen, DenseMode::inhomogeneous);
    Polynomial B = random_dense(6, 6, 7, gen, DenseMode::inhomogeneous);
    Polynomial C = random_dense(7, 6, 7, gen, DenseMode::inhomogeneous);
    PolySystem tangent(6, {A * B, A * C});
    ScanReport ranks = run_scan(MembershipPredicate::vanishing(tangent), {7, 700, 0, 1},
                                {.ranks = true});
    auto est = codim_component_estimate(ranks.rank_tally, 7, 700);
    for (std::size_t c : {std::size_t{1}, std::size_t{2}}) {
        if (!est.count(c))
            return {false, "(c) no codim-" + std::to_string(c) + " estimate"};
        if (std::abs(est[c].value - 1.0) > est[c].halfwidth99)
            return {false, "(c) codim-" + std::to_string(c) + " band " + fmt(est[c].value) +
                               " +/- " + fmt(est[c].halfwidth99) + " misses 1"};
    }

    // (d) determinantal loci of symmetric 4x4 matrices; survey seed 0
    struct Quadric {
        std::size_t max_rank;
        long codim;
    };
    for (const Quadric& qd : {Quadric{3, 1}, Quadric{2, 3}}) {
        PredicateFamily family = [&qd](std::int64_t) {
            return MembershipPredicate::symmetric_rank_at_most(4, qd.max_rank);
        };
        SurveyOutcome oc = multi_prime_survey(family, {5, 7, 11}, 50, 0);
        if (!oc.failures.empty() || oc.observations.size() != 3)
            return {false, "(d) survey at max rank " + std::to_string(qd.max_rank) +
                               " did not finish"};
        CodimFit fit = estimate_codim_components(oc.observations);
        if (fit.c_rounded != qd.codim)
            return {false, "(d) max rank " + std::to_string(qd.max_rank) + " fits codim " +
                               fmt(fit.c) + " (wanted " + std::to_string(qd.codim) + ")"};
    }

    double dt = seconds_since(t0);
    if (dt >= 60.0) return {false, "took " + fmt(dt) + "s (limit 60s)"};
    return {true, "counts " + std::to_string(single.hits) + " and " +
                      std::to_string(product.hits) +
                      " in band, rank bands contain 1, quadric codims 1 and 3, in " +
                      fmt(dt) + "s"};
}

// ---- criterion 9: exhaustive interpolation over F_2^2 ----

std::pair<bool, std::string> interpolation() {
    for (int mask = 0; mask < 16; ++mask) {
        std::map<std::vector<std::int64_t>, std::int64_t> table;
        int bit = 0;
        for (std::int64_t a = 0; a < 2; ++a)
            for (std::int64_t b = 0; b < 2; ++b) table[{a, b}] = (mask >> bit++) & 1;
        Polynomial f = interpolate(table, 2, 2);
        for (const auto& [pt, v] : table) {
            Residue r = f.evaluate_mod({BigInt(pt[0]), BigInt(pt[1])}, BigInt(2));
            if (r.value != balanced_mod(BigInt(v), BigInt(2)))
                return {false, "table " + std::to_string(mask) + " disagrees at (" +
                                   std::to_string(pt[0]) + "," + std::to_string(pt[1]) + ")"};
        }
    }
    return {true, "all 16 value tables over F_2^2 interpolate exactly"};
}

}  // namespace

int main() {
    run(1, lifting_chain);
    run(2, rational_recovery);
    run(3, newton_traces);
    run(4, slope_fit);
    run(5, error_bars);
    run(6, census);
    run(7, dual_property);
    run(8, statistical_reproduction);
    run(9, interpolation);
    if (failures == 0) std::printf("all criteria passed\n");
    return failures;
}
