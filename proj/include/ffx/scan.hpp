#pragma once

// Random point scans over F_p^n. Sample i is a pure function of (seed, i),
// so reports are reproducible byte for byte and independent of worker
// count. Coordinates are drawn by reducing 64-bit outputs mod p; for
// p < 2^31 the bias is below 2^-33 and ignored.

#include "ffx/dual.hpp"
#include "ffx/mpoly.hpp"
#include "ffx/rng.hpp"
#include "ffx/stats.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <variant>
#include <vector>

namespace ffx {

struct gave_up_error : std::runtime_error {
    std::uint64_t trials;  // samples consumed before giving up
    gave_up_error(std::uint64_t t, const std::string& what)
        : std::runtime_error(what), trials(t) {}
};

struct SampleConfig {
    std::int64_t p = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;  // informational; results never depend on it
};

// point = upper triangle of a dim x dim symmetric matrix, row-major,
// diagonal included; membership means rank <= max_rank (odd p only)
struct SymmetricRankSpec {
    std::size_t dim;
    std::size_t max_rank;
};

class MembershipPredicate {
  public:
    static MembershipPredicate vanishing(PolySystem sys);
    static MembershipPredicate symmetric_rank_at_most(std::size_t dim, std::size_t max_rank);

    std::size_t nvars() const;
    const PolySystem* system() const;
    const SymmetricRankSpec* rank_spec() const;

  private:
    MembershipPredicate() = default;
    std::variant<PolySystem, SymmetricRankSpec> impl_;
};

std::vector<std::int64_t> sample_point(std::uint64_t seed, std::uint64_t index,
                                       std::int64_t p, std::size_t nvars);

struct ScanOptions {
    bool ranks = false;   // tally Jacobian ranks over hit points
    bool values = false;  // tally balanced values (single polynomial only)
};

struct ScanReport {
    SampleConfig config;
    std::uint64_t hits = 0;
    bool ranks_enabled = false;
    bool values_enabled = false;
    std::map<std::size_t, std::uint64_t> rank_tally;
    std::map<std::int64_t, std::uint64_t> value_tally;
};

ScanReport run_scan(const MembershipPredicate& pred, const SampleConfig& config,
                    const ScanOptions& opts = {});

inline constexpr std::uint64_t kDefaultTrialCap = 100000000;

// samples until the k-th hit; returns the number of trials consumed,
// counting the one that produced the k-th hit
std::uint64_t find_k(const MembershipPredicate& pred, std::int64_t p, std::uint64_t k,
                     std::uint64_t seed, std::uint64_t cap = kDefaultTrialCap);

struct SurveyFailure {
    std::int64_t p;
    std::uint64_t trials;
};

struct SurveyOutcome {
    std::vector<PrimeObservation> observations;
    std::vector<SurveyFailure> failures;  // primes where find_k gave up
};

using PredicateFamily = std::function<MembershipPredicate(std::int64_t p)>;

SurveyOutcome multi_prime_survey(const PredicateFamily& family,
                                 const std::vector<std::int64_t>& primes, std::uint64_t k,
                                 std::uint64_t seed, std::uint64_t cap = kDefaultTrialCap);

}  // namespace ffx
