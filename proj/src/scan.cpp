#include "ffx/scan.hpp"

namespace ffx {

MembershipPredicate MembershipPredicate::vanishing(PolySystem sys) {
    MembershipPredicate p;
    p.impl_ = std::move(sys);
    return p;
}

MembershipPredicate MembershipPredicate::symmetric_rank_at_most(std::size_t dim,
                                                                std::size_t max_rank) {
    if (dim == 0) throw std::invalid_argument("symmetric_rank_at_most: dim must be >= 1");
    if (max_rank >= dim)
        throw std::invalid_argument("symmetric_rank_at_most: max_rank must be < dim");
    MembershipPredicate p;
    p.impl_ = SymmetricRankSpec{dim, max_rank};
    return p;
}

std::size_t MembershipPredicate::nvars() const {
    if (const auto* sys = std::get_if<PolySystem>(&impl_)) return sys->nvars;
    const auto& spec = std::get<SymmetricRankSpec>(impl_);
    return spec.dim * (spec.dim + 1) / 2;
}

const PolySystem* MembershipPredicate::system() const {
    return std::get_if<PolySystem>(&impl_);
}

const SymmetricRankSpec* MembershipPredicate::rank_spec() const {
    return std::get_if<SymmetricRankSpec>(&impl_);
}

std::vector<std::int64_t> sample_point(std::uint64_t seed, std::uint64_t index,
                                       std::int64_t p, std::size_t nvars) {
    if (p < 2) throw invalid_modulus_error("sample_point: modulus must be >= 2");
    SplitMix64 g(stream_key(seed, index));
    std::vector<std::int64_t> point(nvars);
    for (auto& c : point)
        c = static_cast<std::int64_t>(g.next() % static_cast<std::uint64_t>(p));
    return point;
}

namespace {

FpMatrix symmetric_from_point(const SymmetricRankSpec& spec,
                              std::span<const std::int64_t> point, std::int64_t p) {
    FpMatrix m(spec.dim, spec.dim, p);
    std::size_t k = 0;
    for (std::size_t i = 0; i < spec.dim; ++i)
        for (std::size_t j = i; j < spec.dim; ++j) {
            std::int64_t v = balanced_mod(point[k++], p);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

struct CompiledPredicate {
    const SymmetricRankSpec* spec = nullptr;
    std::vector<CompiledPoly> polys;
    std::int64_t p = 0;

    explicit CompiledPredicate(const MembershipPredicate& pred, std::int64_t p_)
        : spec(pred.rank_spec()), p(p_) {
        if (spec) {
            if (p % 2 == 0)
                throw invalid_modulus_error(
                    "symmetric rank predicate needs an odd modulus");
            return;
        }
        for (const auto& f : pred.system()->polys) polys.push_back(compile(f, p));
    }

    bool contains(std::span<const std::int64_t> point) const {
        if (spec) return rank_mod_p(symmetric_from_point(*spec, point, p)) <= spec->max_rank;
        for (const auto& f : polys)
            if (f.eval(point) != 0) return false;
        return true;
    }
};

}  // namespace

ScanReport run_scan(const MembershipPredicate& pred, const SampleConfig& config,
                    const ScanOptions& opts) {
    if (config.p < 2) throw invalid_modulus_error("run_scan: modulus must be >= 2");
    CompiledPredicate cp(pred, config.p);
    const std::size_t nvars = pred.nvars();
    if (opts.values && !(pred.system() && pred.system()->size() == 1))
        throw std::invalid_argument("run_scan: value tally needs a single polynomial");

    ScanReport report;
    report.config = config;
    report.ranks_enabled = opts.ranks;
    report.values_enabled = opts.values;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        std::vector<std::int64_t> point = sample_point(config.seed, i, config.p, nvars);
        if (opts.values) {
            std::int64_t v = cp.polys[0].eval(point);
            ++report.value_tally[v];
            if (v == 0) ++report.hits;
            continue;
        }
        if (!cp.contains(point)) continue;
        ++report.hits;
        if (opts.ranks && pred.system()) {
            FpMatrix j = jacobian_at(cp.polys, std::span(point), config.p);
            ++report.rank_tally[rank_mod_p(j)];
        } else if (opts.ranks && cp.spec) {
            ++report.rank_tally[rank_mod_p(symmetric_from_point(*cp.spec, point, config.p))];
        }
    }
    return report;
}

std::uint64_t find_k(const MembershipPredicate& pred, std::int64_t p, std::uint64_t k,
                     std::uint64_t seed, std::uint64_t cap) {
    if (p < 2) throw invalid_modulus_error("find_k: modulus must be >= 2");
    if (k == 0) throw std::invalid_argument("find_k: k must be >= 1");
    CompiledPredicate cp(pred, p);
    const std::size_t nvars = pred.nvars();
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < cap; ++i) {
        std::vector<std::int64_t> point = sample_point(seed, i, p, nvars);
        if (!cp.contains(point)) continue;
        if (++hits == k) return i + 1;
    }
    throw gave_up_error(cap, "find_k: gave up after " + std::to_string(cap) + " trials with " +
                                 std::to_string(hits) + " hits");
}

SurveyOutcome multi_prime_survey(const PredicateFamily& family,
                                 const std::vector<std::int64_t>& primes, std::uint64_t k,
                                 std::uint64_t seed, std::uint64_t cap) {
    if (primes.size() < 2)
        throw insufficient_data_error("multi_prime_survey: need at least two primes");
    SurveyOutcome out;
    for (std::int64_t p : primes) {
        // separate stream per prime
        std::uint64_t sub_seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(p)));
        try {
            std::uint64_t trials = find_k(family(p), p, k, sub_seed, cap);
            out.observations.push_back({p, k, trials});
        } catch (const gave_up_error& e) {
            out.failures.push_back({p, e.trials});
        }
    }
    return out;
}

}  // namespace ffx
