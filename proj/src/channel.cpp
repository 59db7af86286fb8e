#include "fadelim/channel.hpp"

#include <cmath>

namespace fadelim {

AverageSnr AverageSnr::from_db(double db) {
    AverageSnr s;
    s.db = db;
    s.linear = std::pow(10.0, db / 10.0);
    if (!(s.linear > 0.0) || !std::isfinite(s.linear))
        throw std::invalid_argument("AverageSnr: dB value out of numerical range");
    return s;
}

AverageSnr AverageSnr::from_linear(double linear) {
    if (!(linear > 0.0) || !std::isfinite(linear))
        throw std::invalid_argument("AverageSnr: linear value must be positive and finite");
    AverageSnr s;
    s.linear = linear;
    s.db = 10.0 * std::log10(linear);
    return s;
}

SnrDistribution::SnrDistribution(Kind kind, double mean_linear, double mean_db,
                                 double fixed_snr)
    : kind_(kind), mean_linear_(mean_linear), mean_db_(mean_db), fixed_snr_(fixed_snr) {}

SnrDistribution SnrDistribution::rayleigh(AverageSnr mean_snr) {
    return SnrDistribution(Kind::RayleighFading, mean_snr.linear, mean_snr.db, 0.0);
}

SnrDistribution SnrDistribution::degenerate(double fixed_snr) {
    if (!(fixed_snr >= 0.0))
        throw std::invalid_argument("Degenerate SNR must be >= 0");
    return SnrDistribution(Kind::Degenerate, 0.0, 0.0, fixed_snr);
}

double SnrDistribution::mean_linear() const {
    if (kind_ != Kind::RayleighFading)
        throw UnsupportedOperation("mean_linear: not a fading distribution");
    return mean_linear_;
}

double SnrDistribution::mean_db() const {
    if (kind_ != Kind::RayleighFading)
        throw UnsupportedOperation("mean_db: not a fading distribution");
    return mean_db_;
}

double SnrDistribution::fixed_snr() const {
    if (kind_ != Kind::Degenerate)
        throw UnsupportedOperation("fixed_snr: not a degenerate distribution");
    return fixed_snr_;
}

double SnrDistribution::pdf(double snr) const {
    if (kind_ == Kind::Degenerate)
        throw UnsupportedOperation("pdf: degenerate SNR has no density; use cdf");
    if (snr < 0.0)
        throw std::domain_error("pdf: snr must be >= 0");
    return std::exp(-snr / mean_linear_) / mean_linear_;
}

double SnrDistribution::cdf(double snr) const {
    if (kind_ == Kind::Degenerate)
        return snr >= fixed_snr_ ? 1.0 : 0.0;
    if (snr <= 0.0) return 0.0;
    return -std::expm1(-snr / mean_linear_);
}

double SnrDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must be in [0, 1)");
    if (kind_ == Kind::Degenerate) return fixed_snr_;
    // Exact inverse of 1 - exp(-snr/mean): cdf(quantile(p)) == p.
    return -mean_linear_ * std::log1p(-p);
}

double SnrDistribution::sample(SplitMix64& rng) const {
    if (kind_ == Kind::Degenerate) return fixed_snr_;
    return -mean_linear_ * std::log1p(-rng.next_double());
}

std::vector<double> SnrDistribution::sample_sequence(std::size_t count,
                                                     std::uint64_t seed) const {
    if (count < 1)
        throw std::invalid_argument("sample_sequence: count must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
    return out;
}

}  // namespace fadelim
