// analytic.hpp - Closed-form single-block and ergodic-regime metrics:
// minimum transmission time (MTT), maximum entropy throughput (MET),
// delay outage rate (DOR) and information outage rate (IOR).
//
// The single-block formulas apply when the whole transmission fits inside
// one channel coherence time; regime policing is the caller's job.

#pragma once

#include <stdexcept>

#include "fadelim/channel.hpp"
#include "fadelim/strategy.hpp"

namespace fadelim {

// One data transmission session: payload entropy H (bits), channel
// bandwidth B, coherence time T_c.
struct TransmissionSpec {
    double entropy_bits;
    Bandwidth bandwidth;
    double coherence_time_s;

    TransmissionSpec(double entropy_bits_, Bandwidth bandwidth_,
                     double coherence_time_s_)
        : entropy_bits(entropy_bits_),
          bandwidth(bandwidth_),
          coherence_time_s(coherence_time_s_) {
        if (!(entropy_bits > 0.0))
            throw std::invalid_argument("entropy_bits must be positive");
        if (!(coherence_time_s > 0.0))
            throw std::invalid_argument("coherence_time_s must be positive");
    }
};

struct ThresholdDuration {
    double seconds;
    explicit ThresholdDuration(double s) : seconds(s) {
        if (!(s > 0.0))
            throw std::invalid_argument("threshold duration must be positive");
    }
};

struct EntropyThreshold {
    double bits;
    explicit EntropyThreshold(double b) : bits(b) {
        if (!(b > 0.0))
            throw std::invalid_argument("entropy threshold must be positive");
    }
};

// SNR below which a single-block transmission of `bits` bits misses a time
// budget of `duration_s`. ORA: exp(bits*ln2/(B*T)) - 1; OPRA: cutoff *
// exp(bits*ln2/(B*T)). Saturates to +inf (so cdf gives 1) when the exponent
// would overflow. Shared by DOR and IOR so the single-block duality
// DOR(H, T) == IOR(H_th=H, T) holds bit-for-bit.
double single_block_outage_snr(double bits, double bandwidth_hz,
                               double duration_s, const RatePolicy& policy);

// Time to deliver H bits at fixed SNR; +inf when the rate is zero (OPRA
// below cutoff, or snr = 0), meaning "never completes at this SNR".
double mtt_instantaneous(const TransmissionSpec& spec, const RatePolicy& policy,
                         double snr);

// Many-coherence-time regime: H / ergodic capacity.
double mtt_ergodic(const TransmissionSpec& spec, const SnrDistribution& dist,
                   const RatePolicy& policy);

// Deliverable bits over `duration_s` at fixed SNR (single-block formula).
double met_instantaneous(double duration_s, Bandwidth b, const RatePolicy& policy,
                         double snr);

// Many-coherence-time regime: duration * ergodic capacity.
double met_ergodic(double duration_s, const SnrDistribution& dist,
                   const RatePolicy& policy, Bandwidth b);

// Pr[MTT > T_th] for a transmission confined to one coherence time.
double dor_single_block(const TransmissionSpec& spec, ThresholdDuration t_th,
                        const SnrDistribution& dist, const RatePolicy& policy);

// Pr[MET(duration) < H_th] for duration within one coherence time.
double ior_single_block(EntropyThreshold h_th, double duration_s, Bandwidth b,
                        const SnrDistribution& dist, const RatePolicy& policy);

}  // namespace fadelim
