#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffx/scan.hpp"

#include <cmath>

using namespace ffx;

namespace {

const std::vector<std::string> kXYZW{"x", "y", "z", "w"};

PolySystem one_poly(const std::string& text, const std::vector<std::string>& vars) {
    return PolySystem(vars.size(), {parse(text, vars)});
}

}  // namespace

TEST_CASE("sample_point is a pure function of seed and index") {
    auto a = sample_point(42, 17, 101, 5);
    auto b = sample_point(42, 17, 101, 5);
    CHECK(a == b);
    CHECK(a.size() == 5);
    for (auto c : a) {
        CHECK(c >= 0);
        CHECK(c < 101);
    }
    CHECK(sample_point(42, 18, 101, 5) != a);
    CHECK(sample_point(43, 17, 101, 5) != a);
    CHECK_THROWS_AS(sample_point(42, 17, 1, 5), invalid_modulus_error);
}

TEST_CASE("coordinates look uniform at a fixed seed") {
    const std::int64_t p = 7;
    const std::uint64_t draws = 100000;
    std::map<std::int64_t, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < draws; ++i) ++freq[sample_point(0, i, p, 1)[0]];
    const double mean = static_cast<double>(draws) / 7.0;
    const double sigma = std::sqrt(static_cast<double>(draws) * (1.0 / 7.0) * (6.0 / 7.0));
    for (std::int64_t r = 0; r < p; ++r)
        CHECK(std::abs(static_cast<double>(freq[r]) - mean) <= kZ99 * sigma);
}

TEST_CASE("scan reports are reproducible and ignore the worker count") {
    auto pred = MembershipPredicate::vanishing(one_poly("x^2-y", {"x", "y"}));
    ScanReport r1 = run_scan(pred, {11, 2000, 9, 1}, {.ranks = true});
    ScanReport r8 = run_scan(pred, {11, 2000, 9, 8}, {.ranks = true});
    CHECK(r1.hits == r8.hits);
    CHECK(r1.rank_tally == r8.rank_tally);
    ScanReport again = run_scan(pred, {11, 2000, 9, 1}, {.ranks = true});
    CHECK(again.hits == r1.hits);
}

TEST_CASE("scan agrees with a hand-rolled sampling loop") {
    PolySystem sys(2, {parse("x*y-1", {"x", "y"})});
    auto pred = MembershipPredicate::vanishing(sys);
    const std::int64_t p = 13;
    const std::uint64_t trials = 3000, seed = 5;
    ScanReport rep = run_scan(pred, {p, trials, seed, 1});
    std::uint64_t expect = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto pt = sample_point(seed, i, p, 2);
        if (balanced_mod(pt[0] * pt[1] - 1, p) == 0) ++expect;
    }
    CHECK(rep.hits == expect);
}

TEST_CASE("zero counts of the documented quintic experiment sit in the right bands") {
    Polynomial F = parse("x^23+1248*y*z+w+129269698", kXYZW);
    Polynomial G = parse("x*y*z*w+z^25-938493+x-z*w", kXYZW);

    ScanReport single = run_scan(MembershipPredicate::vanishing(PolySystem(4, {F})),
                                 {7, 700, 0, 1});
    CHECK(single.hits == 109);
    CHECK(classify_factors(single.hits, 700, 7, 4) == FactorVerdict::consistent_with_1);

    ScanReport product = run_scan(MembershipPredicate::vanishing(PolySystem(4, {F * G})),
                                  {7, 700, 0, 1});
    CHECK(product.hits == 188);
    CHECK(classify_factors(product.hits, 700, 7, 4) == FactorVerdict::consistent_with_2);
}

TEST_CASE("value tallies count every sample once") {
    auto pred = MembershipPredicate::vanishing(one_poly("x^23+1248*y*z+w+129269698", kXYZW));
    ScanReport rep = run_scan(pred, {7, 700, 0, 1}, {.values = true});
    CHECK(rep.values_enabled);
    std::uint64_t total = 0;
    for (const auto& [v, n] : rep.value_tally) {
        CHECK(v >= -3);
        CHECK(v <= 3);
        total += n;
    }
    CHECK(total == 700);
    CHECK(rep.value_tally.at(0) == rep.hits);
    CHECK(rep.hits == 109);

    PolySystem two(2, {parse("x", {"x", "y"}), parse("y", {"x", "y"})});
    CHECK_THROWS_AS(run_scan(MembershipPredicate::vanishing(two), {7, 10, 0, 1},
                             {.values = true}),
                    std::invalid_argument);
}

TEST_CASE("rank tallies cover exactly the hit points") {
    // x = y = 0 cuts out one smooth point; the Jacobian is the identity
    PolySystem sys(2, {parse("x", {"x", "y"}), parse("y", {"x", "y"})});
    ScanReport rep = run_scan(MembershipPredicate::vanishing(sys), {5, 4000, 3, 1},
                              {.ranks = true});
    CHECK(rep.ranks_enabled);
    REQUIRE(rep.hits > 0);
    CHECK(rep.rank_tally.size() == 1);
    CHECK(rep.rank_tally.at(2) == rep.hits);

    // binomial sanity: membership probability is 1/25
    double mean = 4000.0 / 25.0;
    double sigma = std::sqrt(4000.0 * (1.0 / 25.0) * (24.0 / 25.0));
    CHECK(std::abs(static_cast<double>(rep.hits) - mean) <= kZ99 * sigma);
}

TEST_CASE("symmetric rank predicate") {
    auto pred = MembershipPredicate::symmetric_rank_at_most(2, 1);
    CHECK(pred.nvars() == 3);
    CHECK(pred.system() == nullptr);
    REQUIRE(pred.rank_spec() != nullptr);
    CHECK(pred.rank_spec()->dim == 2);

    // det(a b; b c) = ac - b^2 must vanish mod 5
    const std::int64_t p = 5;
    const std::uint64_t trials = 2000, seed = 11;
    ScanReport rep = run_scan(pred, {p, trials, seed, 1}, {.ranks = true});
    std::uint64_t expect = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto pt = sample_point(seed, i, p, 3);
        if (balanced_mod(pt[0] * pt[2] - pt[1] * pt[1], p) == 0) ++expect;
    }
    CHECK(rep.hits == expect);
    std::uint64_t tallied = 0;
    for (const auto& [r, n] : rep.rank_tally) {
        CHECK(r <= 1);
        tallied += n;
    }
    CHECK(tallied == rep.hits);

    CHECK_THROWS_AS(run_scan(pred, {2, 10, 0, 1}), invalid_modulus_error);
    CHECK_THROWS_AS(MembershipPredicate::symmetric_rank_at_most(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(MembershipPredicate::symmetric_rank_at_most(0, 0), std::invalid_argument);
}

TEST_CASE("find_k counts the trial that lands the k-th hit") {
    // the zero polynomial vanishes everywhere, so the k-th hit is trial k
    PolySystem everywhere(3, {Polynomial(3)});
    auto all = MembershipPredicate::vanishing(everywhere);
    CHECK(find_k(all, 7, 1, 123) == 1);
    CHECK(find_k(all, 7, 50, 123) == 50);

    // against a hand count
    auto pred = MembershipPredicate::vanishing(one_poly("x-1", {"x"}));
    const std::int64_t p = 11;
    const std::uint64_t seed = 77, k = 9;
    std::uint64_t hits = 0, stop = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        if (sample_point(seed, i, p, 1)[0] == 1 && ++hits == k) {
            stop = i + 1;
            break;
        }
    }
    REQUIRE(stop > 0);
    CHECK(find_k(pred, p, k, seed) == stop);

    CHECK_THROWS_AS(find_k(all, 7, 0, 1), std::invalid_argument);
}

TEST_CASE("find_k gives up at the cap") {
    auto never = MembershipPredicate::vanishing(
        PolySystem(1, {Polynomial::constant(1, 1)}));
    try {
        find_k(never, 5, 1, 0, 500);
        FAIL("expected gave_up_error");
    } catch (const gave_up_error& e) {
        CHECK(e.trials == 500);
    }
}

TEST_CASE("multi_prime_survey walks the prime list with per-prime streams") {
    PredicateFamily family = [](std::int64_t) {
        return MembershipPredicate::vanishing(one_poly("x", {"x", "y"}));
    };
    const std::uint64_t seed = 2026, k = 10;
    SurveyOutcome out = multi_prime_survey(family, {5, 7, 11}, k, seed);
    REQUIRE(out.observations.size() == 3);
    CHECK(out.failures.empty());
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& o = out.observations[i];
        CHECK(o.hits == k);
        CHECK(o.trials >= k);
        std::uint64_t sub = mix64(seed ^ mix64(static_cast<std::uint64_t>(o.p)));
        CHECK(o.trials == find_k(family(o.p), o.p, k, sub));
    }
    CHECK(out.observations[0].p == 5);
    CHECK(out.observations[2].p == 11);

    CHECK_THROWS_AS(multi_prime_survey(family, {5}, k, seed), insufficient_data_error);
}

TEST_CASE("multi_prime_survey records primes that gave up") {
    PredicateFamily never = [](std::int64_t) {
        return MembershipPredicate::vanishing(PolySystem(1, {Polynomial::constant(1, 1)}));
    };
    SurveyOutcome out = multi_prime_survey(never, {3, 5}, 1, 0, 200);
    CHECK(out.observations.empty());
    REQUIRE(out.failures.size() == 2);
    CHECK(out.failures[0].p == 3);
    CHECK(out.failures[0].trials == 200);
    CHECK(out.failures[1].p == 5);
}
