#pragma once

// Zero-count statistics for functions F_p^n -> F_p and the heuristics built
// on them: a random function vanishes at a point with probability 1/p, a
// product of two independent ones with probability (2p-1)/p^2, and counting
// zeros across primes turns codimensions into regression slopes.

#include "ffx/ffarith.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ffx {

// 99% two-sided normal band
inline constexpr double kZ99 = 2.58;

struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroCountModel {
    std::int64_t p;
    unsigned n;
    unsigned factors;  // 1 or 2

    mpq_class success_probability() const;  // 1/p or (2p-1)/p^2
    BigInt domain_size() const;             // p^n
};

// exact probability of k zeros among p^n points
mpq_class zero_count_pmf(const ZeroCountModel& model, const BigInt& k);
mpq_class model_mean_exact(const ZeroCountModel& model);

struct MeanSigma {
    double mean;
    double sigma;
};
MeanSigma model_mean_sigma(const ZeroCountModel& model);

enum class FactorVerdict { consistent_with_1, consistent_with_2, neither, both };
std::string to_string(FactorVerdict v);

// Is an observed zero count over `trials` samples consistent with a single
// random factor, a product of two, either or neither? Bands are the 99%
// binomial bands scaled to the trial count.
FactorVerdict classify_factors(std::uint64_t hits, std::uint64_t trials, std::int64_t p,
                               unsigned n);

// least squares slope of y on x; throws division_by_zero_error when all x agree
double regression_slope(const std::vector<std::pair<double, double>>& pts);

struct Estimate {
    double value;
    double halfwidth99;
};

struct PrimeObservation {
    std::int64_t p;
    std::uint64_t hits;
    std::uint64_t trials;
};

struct CodimFit {
    double c;        // -slope of log(hits/trials) against log p
    long c_rounded;
    Estimate d;      // exp(intercept), Poisson error propagated first order
};

CodimFit estimate_codim_components(const std::vector<PrimeObservation>& obs);

// Rank tally over m samples to per-codimension component-count estimates:
// count * p^c / m, with 99% halfwidth 2.58 * sqrt(count) * p^c / m.
std::map<std::size_t, Estimate> codim_component_estimate(
    const std::map<std::size_t, std::uint64_t>& rank_tally, std::int64_t p,
    std::uint64_t trials);

}  // namespace ffx
