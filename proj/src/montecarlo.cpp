#include "fadelim/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace fadelim {

namespace {

McEstimate make_estimate(std::size_t hits, std::size_t n, std::uint64_t seed) {
    McEstimate est;
    est.n_episodes = n;
    est.master_seed = seed;
    est.probability = static_cast<double>(hits) / static_cast<double>(n);
    est.std_error =
        std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(n));
    est.ci95_low = std::max(0.0, est.probability - 1.96 * est.std_error);
    est.ci95_high = std::min(1.0, est.probability + 1.96 * est.std_error);
    return est;
}

std::size_t default_max_blocks(double t_th, double t_c) {
    return static_cast<std::size_t>(std::ceil(10.0 * t_th / t_c)) + 64;
}

}  // namespace

EpisodeTrace simulate_mtt(const TransmissionSpec& spec, const RatePolicy& policy,
                          const SnrDistribution& dist, std::uint64_t seed,
                          std::size_t max_blocks) {
    if (max_blocks < 1)
        throw std::invalid_argument("simulate_mtt: max_blocks must be >= 1");
    SplitMix64 rng(seed);
    EpisodeTrace tr;
    const double t_c = spec.coherence_time_s;
    double bits = 0.0;
    for (std::size_t blk = 0; blk < max_blocks; ++blk) {
        const double snr = dist.sample(rng);
        const double rate = policy.instantaneous_rate(snr, spec.bandwidth);
        const double block_bits = t_c * rate;
        tr.block_snrs.push_back(snr);
        if (rate > 0.0 && bits + block_bits >= spec.entropy_bits) {
            const double remaining = spec.entropy_bits - bits;
            tr.per_block_bits.push_back(remaining);
            tr.mtt_s = static_cast<double>(blk) * t_c + remaining / rate;
            tr.blocks_used = blk + 1;
            tr.censored = false;
            return tr;
        }
        tr.per_block_bits.push_back(block_bits);
        bits += block_bits;
    }
    tr.censored = true;
    tr.blocks_used = max_blocks;
    tr.mtt_s = static_cast<double>(max_blocks) * t_c;  // lower bound
    return tr;
}

McEstimate estimate_dor(const TransmissionSpec& spec, ThresholdDuration t_th,
                        const RatePolicy& policy, const SnrDistribution& dist,
                        std::size_t n_episodes, std::uint64_t master_seed,
                        std::size_t max_blocks) {
    if (n_episodes < 100)
        throw std::invalid_argument("estimate_dor: n_episodes must be >= 100");
    const double t_c = spec.coherence_time_s;
    if (max_blocks == 0) max_blocks = default_max_blocks(t_th.seconds, t_c);
    if (static_cast<double>(max_blocks) * t_c <= t_th.seconds)
        throw std::invalid_argument("estimate_dor: max_blocks*T_c must exceed T_th");

    std::size_t exceeded = 0;
    for (std::size_t ep = 0; ep < n_episodes; ++ep) {
        SplitMix64 rng(episode_seed(master_seed, ep));
        double bits = 0.0;
        double elapsed = 0.0;
        bool decided = false;
        for (std::size_t blk = 0; blk < max_blocks; ++blk) {
            const double rate =
                policy.instantaneous_rate(dist.sample(rng), spec.bandwidth);
            const double block_bits = t_c * rate;
            if (rate > 0.0 && bits + block_bits >= spec.entropy_bits) {
                const double mtt = elapsed + (spec.entropy_bits - bits) / rate;
                if (mtt > t_th.seconds) ++exceeded;
                decided = true;
                break;
            }
            bits += block_bits;
            elapsed += t_c;
            if (elapsed > t_th.seconds) {  // cannot finish inside the budget
                ++exceeded;
                decided = true;
                break;
            }
        }
        if (!decided) ++exceeded;  // censored: MTT at least max_blocks*T_c > T_th
    }
    return make_estimate(exceeded, n_episodes, master_seed);
}

double simulate_met(double duration_s, double t_c, const RatePolicy& policy,
                    const SnrDistribution& dist, Bandwidth b, std::uint64_t seed) {
    if (!(duration_s > 0.0) || !(t_c > 0.0))
        throw std::invalid_argument("simulate_met: duration and t_c must be > 0");
    SplitMix64 rng(seed);
    std::size_t n = static_cast<std::size_t>(std::floor(duration_s / t_c));
    double remainder = duration_s - static_cast<double>(n) * t_c;
    if (remainder < 1e-12 * t_c) remainder = 0.0;

    double bits = 0.0;
    for (std::size_t blk = 0; blk < n; ++blk)
        bits += t_c * policy.instantaneous_rate(dist.sample(rng), b);
    if (remainder > 0.0)
        bits += remainder * policy.instantaneous_rate(dist.sample(rng), b);
    return bits;
}

McEstimate estimate_ior(EntropyThreshold h_th, double duration_s, double t_c,
                        const RatePolicy& policy, const SnrDistribution& dist,
                        Bandwidth b, std::size_t n_episodes,
                        std::uint64_t master_seed) {
    if (n_episodes < 100)
        throw std::invalid_argument("estimate_ior: n_episodes must be >= 100");
    std::size_t below = 0;
    for (std::size_t ep = 0; ep < n_episodes; ++ep) {
        const double met = simulate_met(duration_s, t_c, policy, dist, b,
                                        episode_seed(master_seed, ep));
        if (met < h_th.bits) ++below;
    }
    return make_estimate(below, n_episodes, master_seed);
}

}  // namespace fadelim
