#include "fadelim/strategy.hpp"

#include <cmath>
#include <limits>

namespace fadelim {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060;
constexpr double kLn2 = 0.69314718055994530942;
}  // namespace

double exponential_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exponential_integral_e1: x must be > 0");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
        double sum = 0.0;
        double term = 1.0;  // x^k / k!
        for (int k = 1; k < 64; ++k) {
            term *= x / k;
            const double c = ((k & 1) ? term : -term) / k;
            sum += c;
            if (std::abs(c) < 1e-18 * std::abs(sum) + 1e-300) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // Continued fraction E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(...))),
    // evaluated with the modified Lentz algorithm.
    double b = x + 1.0;
    double c = 1e308;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double scaled_exponential_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("scaled_exponential_integral_e1: x must be > 0");
    if (x < 700.0) return std::exp(x) * exponential_integral_e1(x);
    // Asymptotic: e^x E1(x) ~ (1/x)(1 - 1/x + 2/x^2 - 6/x^3)
    const double inv = 1.0 / x;
    return inv * (1.0 - inv * (1.0 - inv * (2.0 - 6.0 * inv)));
}

double waterfilling_residual(double cutoff, const SnrDistribution& dist) {
    if (!dist.is_rayleigh())
        throw UnsupportedOperation("waterfilling_residual: RayleighFading only");
    if (!(cutoff > 0.0))
        throw std::domain_error("waterfilling_residual: cutoff must be > 0");
    const double gbar = dist.mean_linear();
    const double x = cutoff / gbar;
    return std::exp(-x) / cutoff - exponential_integral_e1(x) / gbar - 1.0;
}

double waterfilling_cutoff(const SnrDistribution& dist) {
    if (!dist.is_rayleigh())
        throw UnsupportedOperation("waterfilling_cutoff: RayleighFading only");
    const double gbar = dist.mean_linear();

    double lo = std::min(1e-9, gbar * 1e-3);
    double hi = gbar;
    // The residual is strictly decreasing; expand hi until it is negative.
    int expansions = 0;
    while (waterfilling_residual(hi, dist) > 0.0) {
        hi *= 2.0;
        if (++expansions > 200)
            throw std::runtime_error("waterfilling_cutoff: bracket expansion failed");
    }

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double r = waterfilling_residual(mid, dist);
        if (std::abs(r) < 1e-10) return mid;
        if (r > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (std::abs(waterfilling_residual(mid, dist)) < 1e-10) return mid;
    throw std::runtime_error("waterfilling_cutoff: bisection did not reach tolerance");
}

RatePolicy RatePolicy::opra(double cutoff_snr) {
    if (!(cutoff_snr > 0.0))
        throw std::invalid_argument("RatePolicy::opra: cutoff must be > 0");
    return RatePolicy(Kind::Opra, cutoff_snr);
}

RatePolicy RatePolicy::opra_waterfilling(const SnrDistribution& dist) {
    return opra(waterfilling_cutoff(dist));
}

double RatePolicy::cutoff_snr() const {
    if (kind_ != Kind::Opra)
        throw UnsupportedOperation("cutoff_snr: ORA has no cutoff");
    return cutoff_snr_;
}

double RatePolicy::instantaneous_rate(double snr, Bandwidth b) const {
    if (!(snr >= 0.0))
        throw std::domain_error("instantaneous_rate: snr must be >= 0");
    if (kind_ == Kind::Ora) return b.hz() * std::log1p(snr) / kLn2;
    if (snr <= cutoff_snr_) return 0.0;
    return b.hz() * std::log2(snr / cutoff_snr_);
}

double ergodic_capacity(const SnrDistribution& dist, const RatePolicy& policy,
                        Bandwidth b) {
    if (!dist.is_rayleigh())
        throw UnsupportedOperation("ergodic_capacity: RayleighFading only");
    const double gbar = dist.mean_linear();
    if (policy.kind() == RatePolicy::Kind::Ora)
        return b.hz() / kLn2 * scaled_exponential_integral_e1(1.0 / gbar);
    return b.hz() / kLn2 * exponential_integral_e1(policy.cutoff_snr() / gbar);
}

}  // namespace fadelim
