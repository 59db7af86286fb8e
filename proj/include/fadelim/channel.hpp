// channel.hpp - Statistical model of the instantaneous received SNR.
//
// Rayleigh envelope fading gives an exponentially distributed SNR with mean
// equal to the average SNR; that is the only fading family shipped. The
// Degenerate (constant-SNR) kind exists as a test oracle: every downstream
// quantity has a closed form on a deterministic channel.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fadelim/rng.hpp"

namespace fadelim {

// Raised when an operation is queried on a distribution/policy kind that
// does not support it (e.g. pdf of a point mass).
struct UnsupportedOperation : std::logic_error {
    using std::logic_error::logic_error;
};

// Average received SNR in both dB and linear form. Conversion happens once
// at construction; all internal math uses the linear value.
struct AverageSnr {
    double db = 0.0;
    double linear = 1.0;

    static AverageSnr from_db(double db);
    static AverageSnr from_linear(double linear);
};

class SnrDistribution {
public:
    enum class Kind { RayleighFading, Degenerate };

    static SnrDistribution rayleigh(AverageSnr mean_snr);
    static SnrDistribution degenerate(double fixed_snr);

    Kind kind() const { return kind_; }
    bool is_rayleigh() const { return kind_ == Kind::RayleighFading; }

    double mean_linear() const;  // RayleighFading only
    double mean_db() const;      // RayleighFading only
    double fixed_snr() const;    // Degenerate only

    // Density at snr >= 0. The Degenerate kind has no density; use cdf or
    // sampling instead.
    double pdf(double snr) const;

    // Pr[SNR <= snr]; defined on all of R.
    double cdf(double snr) const;

    // Inverse cdf, p in [0, 1).
    double quantile(double p) const;

    // One draw; advances the generator (Degenerate consumes no randomness).
    double sample(SplitMix64& rng) const;

    // i.i.d. block-fading sequence, deterministic in (count, seed).
    std::vector<double> sample_sequence(std::size_t count, std::uint64_t seed) const;

private:
    SnrDistribution(Kind kind, double mean_linear, double mean_db, double fixed_snr);

    Kind kind_;
    double mean_linear_;
    double mean_db_;
    double fixed_snr_;
};

}  // namespace fadelim
