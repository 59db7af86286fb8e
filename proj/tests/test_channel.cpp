#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fadelim/channel.hpp"
#include "fadelim/quadrature.hpp"

using namespace fadelim;

namespace {
// 6 dB, the figure operating point
const double kGbar6dB = std::pow(10.0, 0.6);
}  // namespace

TEST_CASE("AverageSnr dB/linear conversion") {
    const auto s = AverageSnr::from_db(6.0);
    CHECK(s.linear == doctest::Approx(kGbar6dB).epsilon(1e-12));
    const auto r = AverageSnr::from_linear(s.linear);
    CHECK(r.db == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(AverageSnr::from_linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(AverageSnr::from_linear(-1.0), std::invalid_argument);
}

TEST_CASE("Rayleigh pdf") {
    const auto unit = SnrDistribution::rayleigh(AverageSnr::from_linear(1.0));
    CHECK(unit.pdf(0.0) == doctest::Approx(1.0).epsilon(1e-14));

    const auto d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811));
    CHECK(d.pdf(3.9811) ==
          doctest::Approx(std::exp(-1.0) / 3.9811).epsilon(1e-13));
    CHECK(d.pdf(1e6) == doctest::Approx(0.0).epsilon(1e-30));

    CHECK_THROWS_AS(d.pdf(-0.1), std::domain_error);
    CHECK_THROWS_AS(SnrDistribution::degenerate(5.0).pdf(1.0),
                    UnsupportedOperation);
}

TEST_CASE("cdf values and step behaviour") {
    const auto d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811));
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(-1.0) == 0.0);
    CHECK(d.cdf(3.0) ==
          doctest::Approx(1.0 - std::exp(-3.0 / 3.9811)).epsilon(1e-14));

    const auto step = SnrDistribution::degenerate(5.0);
    CHECK(step.cdf(4.0) == 0.0);
    CHECK(step.cdf(6.0) == 1.0);
}

TEST_CASE("cdf matches integrated pdf") {
    const auto d = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    // normalization over [0, inf): integrate to a far tail point
    const double far = d.quantile(1.0 - 1e-13);
    const double total = adaptive_simpson(
        [&](double g) { return d.pdf(g); }, 0.0, far, 1e-12);
    CHECK(std::abs(total - 1.0) < 1e-9);

    for (double g : {0.1, 0.5, 1.0, 2.0, 5.0, 12.0}) {
        const double integral = adaptive_simpson(
            [&](double x) { return d.pdf(x); }, 0.0, g, 1e-12);
        CHECK(std::abs(d.cdf(g) - integral) < 1e-9);
    }
}

TEST_CASE("quantile is the right inverse of cdf") {
    const auto d = SnrDistribution::rayleigh(AverageSnr::from_linear(2.0));
    CHECK(d.quantile(0.0) == 0.0);
    CHECK(d.quantile(1.0 - std::exp(-1.0)) == doctest::Approx(2.0).epsilon(1e-13));
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.99})
        CHECK(std::abs(d.cdf(d.quantile(p)) - p) < 1e-10);
    CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(d.quantile(-0.1), std::domain_error);

    CHECK(SnrDistribution::degenerate(5.0).quantile(0.3) == 5.0);
}

TEST_CASE("sample_sequence determinism and degenerate draws") {
    const auto step = SnrDistribution::degenerate(5.0);
    const auto v = step.sample_sequence(3, 99);
    CHECK(v == std::vector<double>{5.0, 5.0, 5.0});

    const auto d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811));
    const auto a = d.sample_sequence(1000, 42);
    const auto b = d.sample_sequence(1000, 42);
    CHECK(a == b);
    const auto c = d.sample_sequence(1000, 43);
    CHECK(a != c);
}

TEST_CASE("empirical mean of 1e6 draws matches the configured mean") {
    const auto d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811));
    const auto samples = d.sample_sequence(1000000, 42);
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    CHECK(mean > 3.94);
    CHECK(mean < 4.02);
}

TEST_CASE("empirical cdf passes a Kolmogorov-Smirnov check") {
    const auto d = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    auto samples = d.sample_sequence(1000000, 7);
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = d.cdf(samples[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    }
    CHECK(ks < 0.002);
}
