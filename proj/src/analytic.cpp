#include "fadelim/analytic.hpp"

#include <cmath>
#include <limits>

namespace fadelim {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double single_block_outage_snr(double bits, double bandwidth_hz,
                               double duration_s, const RatePolicy& policy) {
    const double a = bits * kLn2 / (bandwidth_hz * duration_s);
    // exp(700) is near the double range limit; past it the outage SNR is
    // effectively infinite and the cdf saturates to 1.
    if (a > 700.0) return kInf;
    if (policy.kind() == RatePolicy::Kind::Ora) return std::expm1(a);
    return policy.cutoff_snr() * std::exp(a);
}

double mtt_instantaneous(const TransmissionSpec& spec, const RatePolicy& policy,
                         double snr) {
    const double rate = policy.instantaneous_rate(snr, spec.bandwidth);
    if (rate <= 0.0) return kInf;
    return spec.entropy_bits / rate;
}

double mtt_ergodic(const TransmissionSpec& spec, const SnrDistribution& dist,
                   const RatePolicy& policy) {
    return spec.entropy_bits / ergodic_capacity(dist, policy, spec.bandwidth);
}

double met_instantaneous(double duration_s, Bandwidth b, const RatePolicy& policy,
                         double snr) {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("met_instantaneous: duration must be positive");
    return duration_s * policy.instantaneous_rate(snr, b);
}

double met_ergodic(double duration_s, const SnrDistribution& dist,
                   const RatePolicy& policy, Bandwidth b) {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("met_ergodic: duration must be positive");
    return duration_s * ergodic_capacity(dist, policy, b);
}

double dor_single_block(const TransmissionSpec& spec, ThresholdDuration t_th,
                        const SnrDistribution& dist, const RatePolicy& policy) {
    return dist.cdf(single_block_outage_snr(spec.entropy_bits,
                                            spec.bandwidth.hz(), t_th.seconds,
                                            policy));
}

double ior_single_block(EntropyThreshold h_th, double duration_s, Bandwidth b,
                        const SnrDistribution& dist, const RatePolicy& policy) {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("ior_single_block: duration must be positive");
    return dist.cdf(single_block_outage_snr(h_th.bits, b.hz(), duration_s, policy));
}

}  // namespace fadelim
