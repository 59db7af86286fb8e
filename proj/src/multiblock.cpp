#include "fadelim/multiblock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fadelim {

namespace {

constexpr double kTailMass = 1e-10;   // SNR tail cut when sizing the grid
constexpr double kLostBudget = 1e-6;  // hard cap on accumulated lost mass

// Pr[S <= s] for the per-block entropy S, s > 0.
double per_block_cdf(double s, const SnrDistribution& dist,
                     const RatePolicy& policy, double tb) {
    const double x = s / tb;
    if (policy.kind() == RatePolicy::Kind::Ora)
        return dist.cdf(std::exp2(x) - 1.0);
    return dist.cdf(policy.cutoff_snr() * std::exp2(x));
}

}  // namespace

double EntropyDistribution::total_mass() const {
    double m = atom_at_zero;
    for (double d : density) m += d * grid_step_bits;
    return m;
}

double EntropyDistribution::mean_bits() const {
    double m = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i)
        m += density[i] * grid_step_bits * static_cast<double>(i) * grid_step_bits;
    return m;
}

double EntropyDistribution::variance_bits2() const {
    const double mu = mean_bits();
    double m2 = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double s = static_cast<double>(i) * grid_step_bits;
        m2 += density[i] * grid_step_bits * s * s;
    }
    return m2 - mu * mu;
}

double EntropyDistribution::cdf(double bits) const {
    if (!(bits > 0.0)) return 0.0;
    double c = atom_at_zero;
    const double h = grid_step_bits;
    double lower = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double upper = (static_cast<double>(i) + 0.5) * h;
        const double mass = density[i] * h;
        if (bits >= upper) {
            c += mass;
            lower = upper;
            continue;
        }
        c += mass * (bits - lower) / (upper - lower);
        return std::min(c, 1.0);
    }
    return std::min(c, 1.0);
}

EntropyDistribution per_block_entropy_distribution(const SnrDistribution& dist,
                                                   const RatePolicy& policy,
                                                   double t_c, Bandwidth b,
                                                   double grid_step_bits) {
    if (!dist.is_rayleigh())
        throw UnsupportedOperation("per_block_entropy_distribution: RayleighFading only");
    if (!(t_c > 0.0))
        throw std::invalid_argument("per_block_entropy_distribution: t_c must be > 0");
    if (!(grid_step_bits > 0.0))
        throw std::invalid_argument("per_block_entropy_distribution: grid step must be > 0");

    const double tb = t_c * b.hz();
    const double h = grid_step_bits;
    const bool opra = policy.is_opra();

    EntropyDistribution ed;
    ed.grid_step_bits = h;
    ed.atom_at_zero = opra ? dist.cdf(policy.cutoff_snr()) : 0.0;

    const double snr_top = dist.quantile(1.0 - kTailMass);
    const double s_top = opra ? tb * std::log2(snr_top / policy.cutoff_snr())
                              : tb * std::log2(1.0 + snr_top);
    const std::size_t n = static_cast<std::size_t>(std::ceil(s_top / h)) + 1;

    ed.density.resize(n, 0.0);
    double cdf_lower = ed.atom_at_zero;  // per-block cdf at the previous cell edge
    for (std::size_t i = 0; i < n; ++i) {
        const double upper = (static_cast<double>(i) + 0.5) * h;
        const double cdf_upper = per_block_cdf(upper, dist, policy, tb);
        ed.density[i] = std::max(0.0, cdf_upper - cdf_lower) / h;
        cdf_lower = cdf_upper;
    }
    ed.s_max = static_cast<double>(n - 1) * h;
    ed.lost_mass = std::max(0.0, 1.0 - cdf_lower);
    return ed;
}

double default_grid_step(const SnrDistribution& dist, const RatePolicy& policy,
                         double t_c, Bandwidth b) {
    const double tb = t_c * b.hz();
    const double q = dist.quantile(1.0 - 1e-5);
    const double s = policy.is_opra() ? tb * std::log2(q / policy.cutoff_snr())
                                      : tb * std::log2(1.0 + q);
    return s / 4096.0;
}

EntropyDistribution convolve_pair(const EntropyDistribution& a,
                                  const EntropyDistribution& b) {
    const double h = a.grid_step_bits;
    if (!(std::abs(h - b.grid_step_bits) <= 1e-9 * h))
        throw std::invalid_argument("convolve_pair: grid steps differ");

    const std::size_t na = a.density.size();
    const std::size_t nb = b.density.size();

    EntropyDistribution out;
    out.grid_step_bits = h;
    out.atom_at_zero = a.atom_at_zero * b.atom_at_zero;
    out.lost_mass = a.lost_mass + b.lost_mass;

    const std::size_t n = (na == 0 || nb == 0) ? std::max(na, nb) : na + nb - 1;
    out.density.assign(n, 0.0);

    // Atom-density cross terms keep the zero atom exact.
    for (std::size_t i = 0; i < nb; ++i)
        out.density[i] += a.atom_at_zero * b.density[i];
    for (std::size_t i = 0; i < na; ++i)
        out.density[i] += b.atom_at_zero * a.density[i];
    for (std::size_t i = 0; i < na; ++i) {
        const double mi = a.density[i] * h;
        if (mi == 0.0) continue;
        for (std::size_t j = 0; j < nb; ++j)
            out.density[i + j] += mi * b.density[j];
    }

    // Drop a numerically empty tail, booking what it carried.
    double tail = 0.0;
    std::size_t keep = out.density.size();
    while (keep > 0 && tail + out.density[keep - 1] * h < 1e-12) {
        tail += out.density[keep - 1] * h;
        --keep;
    }
    out.density.resize(keep);
    out.lost_mass += tail;
    out.s_max = keep == 0 ? 0.0 : static_cast<double>(keep - 1) * h;

    if (out.lost_mass > kLostBudget)
        throw std::runtime_error("convolve_pair: truncated mass exceeds 1e-6");
    return out;
}

EntropyDistribution convolve(const EntropyDistribution& ed, unsigned l) {
    if (l < 1) throw std::invalid_argument("convolve: l must be >= 1");
    EntropyDistribution base = ed;
    EntropyDistribution acc;
    bool have_acc = false;
    while (l > 0) {
        if (l & 1u) {
            acc = have_acc ? convolve_pair(acc, base) : base;
            have_acc = true;
        }
        l >>= 1u;
        if (l > 0) base = convolve_pair(base, base);
    }
    return acc;
}

double dor_multiblock(const TransmissionSpec& spec, unsigned l,
                      const SnrDistribution& dist, const RatePolicy& policy,
                      double grid_step_bits) {
    if (l < 1) throw std::invalid_argument("dor_multiblock: l must be >= 1");
    const double h = grid_step_bits > 0.0
                         ? grid_step_bits
                         : default_grid_step(dist, policy, spec.coherence_time_s,
                                             spec.bandwidth);
    const EntropyDistribution per_block = per_block_entropy_distribution(
        dist, policy, spec.coherence_time_s, spec.bandwidth, h);
    return convolve(per_block, l).cdf(spec.entropy_bits);
}

double ior_multiblock(EntropyThreshold h_th, double duration_s, double t_c,
                      const SnrDistribution& dist, const RatePolicy& policy,
                      Bandwidth b, double grid_step_bits) {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("ior_multiblock: duration must be > 0");
    if (!(t_c > 0.0))
        throw std::invalid_argument("ior_multiblock: t_c must be > 0");

    const double h = grid_step_bits > 0.0 ? grid_step_bits
                                          : default_grid_step(dist, policy, t_c, b);

    std::size_t n = static_cast<std::size_t>(std::floor(duration_s / t_c));
    double remainder = duration_s - static_cast<double>(n) * t_c;
    if (remainder < 1e-12 * t_c) remainder = 0.0;

    if (n == 0)  // single partial block: the single-block law on `duration_s`
        return per_block_entropy_distribution(dist, policy, duration_s, b, h)
            .cdf(h_th.bits);

    EntropyDistribution sum =
        convolve(per_block_entropy_distribution(dist, policy, t_c, b, h),
                 static_cast<unsigned>(n));
    if (remainder > 0.0) {
        // Final partial block: same SNR law, rate scaled by the leftover time.
        const EntropyDistribution partial =
            per_block_entropy_distribution(dist, policy, remainder, b, h);
        sum = convolve_pair(sum, partial);
    }
    return sum.cdf(h_th.bits);
}

}  // namespace fadelim
