// montecarlo.hpp - Seeded episode-level link simulator. Serves as the
// independent oracle for the closed forms and the convolution engine, and
// as the only evaluator for thresholds off the L*T_c grid.
//
// Episodes are keyed by (master_seed, episode_index) so estimates are
// bitwise independent of how episodes are scheduled; aggregation is pure
// counting.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fadelim/analytic.hpp"

namespace fadelim {

// One simulated transmission. per_block_bits holds T_c*rate for full blocks
// and the fractional remainder for the finishing block, so the entries sum
// to H for uncensored episodes.
struct EpisodeTrace {
    std::vector<double> block_snrs;
    std::vector<double> per_block_bits;
    double mtt_s = 0.0;  // lower bound (max_blocks*T_c) when censored
    std::size_t blocks_used = 0;
    bool censored = false;
};

struct McEstimate {
    double probability = 0.0;
    std::size_t n_episodes = 0;
    double std_error = 0.0;  // sqrt(p(1-p)/n)
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t master_seed = 0;
};

// Simulates one block-fading transmission of spec.entropy_bits bits.
// Accumulates T_c*rate per block; the finishing block is counted
// fractionally. Censored after max_blocks blocks without completion.
EpisodeTrace simulate_mtt(const TransmissionSpec& spec, const RatePolicy& policy,
                          const SnrDistribution& dist, std::uint64_t seed,
                          std::size_t max_blocks);

// Fraction of episodes with MTT > t_th; censored episodes count as
// exceeding. max_blocks = 0 selects ceil(10*T_th/T_c) + 64, which keeps
// censoring strictly beyond the queried threshold.
McEstimate estimate_dor(const TransmissionSpec& spec, ThresholdDuration t_th,
                        const RatePolicy& policy, const SnrDistribution& dist,
                        std::size_t n_episodes, std::uint64_t master_seed,
                        std::size_t max_blocks = 0);

// Bits deliverable over `duration_s`: full blocks of T_c plus a fractional
// final block.
double simulate_met(double duration_s, double t_c, const RatePolicy& policy,
                    const SnrDistribution& dist, Bandwidth b, std::uint64_t seed);

// Fraction of episodes whose simulated MET is below h_th.
McEstimate estimate_ior(EntropyThreshold h_th, double duration_s, double t_c,
                        const RatePolicy& policy, const SnrDistribution& dist,
                        Bandwidth b, std::size_t n_episodes,
                        std::uint64_t master_seed);

}  // namespace fadelim
