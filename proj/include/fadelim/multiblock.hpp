// multiblock.hpp - Numerical distribution engine for transmissions spanning
// several coherence blocks. Builds the distribution of per-block deliverable
// entropy S = T_c*B*log2-rate and convolves it L-fold to evaluate
// multi-block DOR/IOR.

#pragma once

#include <cstddef>
#include <vector>

#include "fadelim/analytic.hpp"

namespace fadelim {

// Mixed distribution of deliverable entropy per block: an exact point mass
// at zero (OPRA silence) plus a density sampled on a uniform bits-grid.
// Node i sits at i*grid_step_bits and carries mass density[i]*grid_step_bits
// spread over [max(0,(i-1/2)h), (i+1/2)h).
struct EntropyDistribution {
    double atom_at_zero = 0.0;
    double grid_step_bits = 0.0;
    std::vector<double> density;  // nonnegative, per-bit density at each node
    double s_max = 0.0;           // position of the last node, bits
    double lost_mass = 0.0;       // truncated tail mass, tracked not dropped silently

    // atom + sum of grid mass; 1 - lost_mass up to rounding.
    double total_mass() const;

    double mean_bits() const;
    double variance_bits2() const;

    // Pr[S < bits], linearly interpolated inside grid cells.
    double cdf(double bits) const;
};

// Distribution of S = T_c * instantaneous_rate(policy, SNR, B), i.e. the
// bits deliverable in one coherence block. RayleighFading only. The grid is
// truncated where the SNR tail mass drops below 1e-10; the cut mass is
// recorded in lost_mass.
EntropyDistribution per_block_entropy_distribution(const SnrDistribution& dist,
                                                   const RatePolicy& policy,
                                                   double t_c, Bandwidth b,
                                                   double grid_step_bits);

// Default resolution: single-block 99.999th-percentile entropy / 4096.
double default_grid_step(const SnrDistribution& dist, const RatePolicy& policy,
                         double t_c, Bandwidth b);

// Sum of two independent entropy distributions on the same grid step.
// Atoms are handled exactly. Throws if accumulated lost mass exceeds 1e-6.
EntropyDistribution convolve_pair(const EntropyDistribution& a,
                                  const EntropyDistribution& b);

// Distribution of the sum of l i.i.d. copies, by binary exponentiation.
// l = 1 is the identity.
EntropyDistribution convolve(const EntropyDistribution& ed, unsigned l);

// Pr[sum of L per-block entropies < H], i.e. DOR at T_th = L*T_c.
// grid_step_bits <= 0 selects the default grid step.
double dor_multiblock(const TransmissionSpec& spec, unsigned l,
                      const SnrDistribution& dist, const RatePolicy& policy,
                      double grid_step_bits = 0.0);

// Pr[MET(duration) < H_th] with n = floor(duration/T_c) full blocks plus a
// fractional final block whose rate is scaled by the remaining time.
double ior_multiblock(EntropyThreshold h_th, double duration_s, double t_c,
                      const SnrDistribution& dist, const RatePolicy& policy,
                      Bandwidth b, double grid_step_bits = 0.0);

}  // namespace fadelim
