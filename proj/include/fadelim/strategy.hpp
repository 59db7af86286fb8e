// strategy.hpp - ORA/OPRA rate laws, water-filling cutoff, ergodic capacity.

#pragma once

#include <stdexcept>

#include "fadelim/channel.hpp"

namespace fadelim {

class Bandwidth {
public:
    explicit Bandwidth(double hz) : hz_(hz) {
        if (!(hz > 0.0))
            throw std::invalid_argument("Bandwidth must be positive");
    }
    double hz() const { return hz_; }

private:
    double hz_;
};

// E1(x) = integral_x^inf exp(-t)/t dt, x > 0. Power series below 1,
// continued fraction (modified Lentz) above.
double exponential_integral_e1(double x);

// exp(x)*E1(x), stable for large x where the factors over/underflow.
double scaled_exponential_integral_e1(double x);

// Residual of the average-power constraint at candidate cutoff g:
//   integral_g^inf (1/g - 1/x) pdf(x) dx - 1
// For Rayleigh this has the closed form exp(-g/gbar)/g - E1(g/gbar)/gbar - 1.
// Strictly decreasing in g, positive at 0+, negative for large g.
double waterfilling_residual(double cutoff, const SnrDistribution& dist);

// Solves waterfilling_residual(g) = 0 by bracketed bisection to |residual|
// < 1e-10. RayleighFading only.
double waterfilling_cutoff(const SnrDistribution& dist);

// Adaptation strategy. ORA: rate B*log2(1+g) at constant power. OPRA:
// water-filling power plus rate B*log2(g/cutoff) above the cutoff SNR,
// silence below it.
class RatePolicy {
public:
    enum class Kind { Ora, Opra };

    static RatePolicy ora() { return RatePolicy(Kind::Ora, 0.0); }
    static RatePolicy opra(double cutoff_snr);

    // OPRA with the cutoff solved from the average-power constraint for
    // `dist`. Solved once here and cached in the returned value.
    static RatePolicy opra_waterfilling(const SnrDistribution& dist);

    Kind kind() const { return kind_; }
    bool is_opra() const { return kind_ == Kind::Opra; }
    double cutoff_snr() const;  // OPRA only

    // bits/second at instantaneous SNR `snr`; always finite and >= 0.
    double instantaneous_rate(double snr, Bandwidth b) const;

private:
    RatePolicy(Kind kind, double cutoff) : kind_(kind), cutoff_snr_(cutoff) {}

    Kind kind_;
    double cutoff_snr_;
};

// Long-run average rate in bits/second. RayleighFading only; evaluated via
// the closed forms (B/ln2)*exp(1/gbar)*E1(1/gbar) for ORA and
// (B/ln2)*E1(cutoff/gbar) for OPRA.
double ergodic_capacity(const SnrDistribution& dist, const RatePolicy& policy,
                        Bandwidth b);

}  // namespace fadelim
