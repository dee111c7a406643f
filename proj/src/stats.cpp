#include "ffx/stats.hpp"

#include <cmath>

namespace ffx {

namespace {

void validate(const ZeroCountModel& m) {
    if (m.p < 2) throw invalid_modulus_error("ZeroCountModel: p must be >= 2");
    if (m.factors != 1 && m.factors != 2)
        throw std::invalid_argument("ZeroCountModel: factors must be 1 or 2");
}

}  // namespace

mpq_class ZeroCountModel::success_probability() const {
    validate(*this);
    if (factors == 1) return mpq_class(1, p);
    mpq_class s(2 * p - 1);
    s /= mpq_class(BigInt(p) * p);
    s.canonicalize();
    return s;
}

BigInt ZeroCountModel::domain_size() const {
    validate(*this);
    BigInt size;
    mpz_ui_pow_ui(size.get_mpz_t(), static_cast<unsigned long>(p), n);
    return size;
}

mpq_class zero_count_pmf(const ZeroCountModel& model, const BigInt& k) {
    BigInt size = model.domain_size();
    if (k < 0 || k > size) throw std::out_of_range("zero_count_pmf: k out of range");
    if (!size.fits_ulong_p()) throw std::out_of_range("zero_count_pmf: domain too large");
    mpq_class s = model.success_probability();
    mpq_class one_minus = 1 - s;
    one_minus.canonicalize();
    unsigned long ku = mpz_get_ui(k.get_mpz_t());
    unsigned long rest = mpz_get_ui(size.get_mpz_t()) - ku;
    BigInt binom, num, den;
    mpz_bin_ui(binom.get_mpz_t(), size.get_mpz_t(), ku);
    // binom * s^k * (1-s)^(size-k), kept exact
    BigInt sn(s.get_num()), sd(s.get_den());
    BigInt on(one_minus.get_num()), od(one_minus.get_den());
    mpz_pow_ui(num.get_mpz_t(), sn.get_mpz_t(), ku);
    mpz_pow_ui(den.get_mpz_t(), sd.get_mpz_t(), ku);
    mpq_class acc(BigInt(binom * num), den);
    acc.canonicalize();
    mpz_pow_ui(num.get_mpz_t(), on.get_mpz_t(), rest);
    mpz_pow_ui(den.get_mpz_t(), od.get_mpz_t(), rest);
    mpq_class tail(num, den);
    tail.canonicalize();
    acc *= tail;
    return acc;
}

mpq_class model_mean_exact(const ZeroCountModel& model) {
    mpq_class mean = mpq_class(model.domain_size()) * model.success_probability();
    mean.canonicalize();
    return mean;
}

MeanSigma model_mean_sigma(const ZeroCountModel& model) {
    mpq_class s = model.success_probability();
    double sd = s.get_d();
    double size = mpq_class(model.domain_size()).get_d();
    return {size * sd, std::sqrt(size * sd * (1.0 - sd))};
}

std::string to_string(FactorVerdict v) {
    switch (v) {
        case FactorVerdict::consistent_with_1: return "consistent-with-1";
        case FactorVerdict::consistent_with_2: return "consistent-with-2";
        case FactorVerdict::neither: return "neither";
        case FactorVerdict::both: return "both";
    }
    return "?";
}

FactorVerdict classify_factors(std::uint64_t hits, std::uint64_t trials, std::int64_t p,
                               unsigned n) {
    bool in_band[2];
    for (unsigned f = 1; f <= 2; ++f) {
        ZeroCountModel model{p, n, f};
        double s = model.success_probability().get_d();
        double mean = static_cast<double>(trials) * s;
        double sigma = std::sqrt(static_cast<double>(trials) * s * (1.0 - s));
        in_band[f - 1] = std::abs(static_cast<double>(hits) - mean) <= kZ99 * sigma;
    }
    if (in_band[0] && in_band[1]) return FactorVerdict::both;
    if (in_band[0]) return FactorVerdict::consistent_with_1;
    if (in_band[1]) return FactorVerdict::consistent_with_2;
    return FactorVerdict::neither;
}

double regression_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2)
        throw insufficient_data_error("regression_slope: need at least two points");
    double xbar = 0, ybar = 0;
    for (const auto& [x, y] : pts) {
        xbar += x;
        ybar += y;
    }
    xbar /= static_cast<double>(pts.size());
    ybar /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
    }
    if (sxx == 0) throw division_by_zero_error("regression_slope: x values all equal");
    return sxy / sxx;
}

CodimFit estimate_codim_components(const std::vector<PrimeObservation>& obs) {
    if (obs.size() < 2)
        throw insufficient_data_error("estimate_codim_components: need at least two primes");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(obs.size());
    for (const auto& o : obs) {
        if (o.hits == 0)
            throw insufficient_data_error("estimate_codim_components: zero hits at p=" +
                                          std::to_string(o.p));
        if (o.trials == 0)
            throw insufficient_data_error("estimate_codim_components: zero trials at p=" +
                                          std::to_string(o.p));
        pts.emplace_back(std::log(static_cast<double>(o.p)),
                         std::log(static_cast<double>(o.hits) / static_cast<double>(o.trials)));
    }
    double slope = regression_slope(pts);
    const auto nn = static_cast<double>(pts.size());
    double xbar = 0, ybar = 0;
    for (const auto& [x, y] : pts) {
        xbar += x;
        ybar += y;
    }
    xbar /= nn;
    ybar /= nn;
    double sxx = 0;
    for (const auto& [x, y] : pts) sxx += (x - xbar) * (x - xbar);
    double intercept = ybar - slope * xbar;
    // each log gamma carries Poisson deviation 1/sqrt(hits); push those
    // through the intercept coefficients first order
    double var = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double ci = 1.0 / nn - xbar * (pts[i].first - xbar) / sxx;
        var += ci * ci / static_cast<double>(obs[i].hits);
    }
    double d = std::exp(intercept);
    CodimFit fit;
    fit.c = -slope;
    fit.c_rounded = std::lround(fit.c);
    fit.d = {d, kZ99 * d * std::sqrt(var)};
    return fit;
}

std::map<std::size_t, Estimate> codim_component_estimate(
    const std::map<std::size_t, std::uint64_t>& rank_tally, std::int64_t p,
    std::uint64_t trials) {
    if (trials == 0)
        throw insufficient_data_error("codim_component_estimate: zero trials");
    std::map<std::size_t, Estimate> out;
    for (const auto& [c, count] : rank_tally) {
        double scale = std::pow(static_cast<double>(p), static_cast<double>(c)) /
                       static_cast<double>(trials);
        out[c] = {static_cast<double>(count) * scale,
                  kZ99 * std::sqrt(static_cast<double>(count)) * scale};
    }
    return out;
}

}  // namespace ffx
