#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fadelim/montecarlo.hpp"

using namespace fadelim;

namespace {
const Bandwidth kB20MHz(20e6);

// Degenerate SNR giving an exact ORA rate of `rate_bps`.
SnrDistribution fixed_rate_channel(double rate_bps, Bandwidth b) {
    return SnrDistribution::degenerate(std::exp2(rate_bps / b.hz()) - 1.0);
}
}  // namespace

TEST_CASE("simulate_mtt on a deterministic channel") {
    const double rate = 2.5e6;
    const auto dist = fixed_rate_channel(rate, kB20MHz);
    TransmissionSpec spec(1.1e6, kB20MHz, 50e-3);  // H/R = 0.44 s, 8.8 blocks

    const auto tr = simulate_mtt(spec, RatePolicy::ora(), dist, 1, 100);
    CHECK_FALSE(tr.censored);
    CHECK(tr.mtt_s == doctest::Approx(0.44).epsilon(1e-9));
    CHECK(tr.blocks_used == 9);  // ceil(H / (R*T_c))
    double sum = 0.0;
    for (double b : tr.per_block_bits) sum += b;
    CHECK(sum == doctest::Approx(spec.entropy_bits).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < tr.per_block_bits.size(); ++i)
        CHECK(tr.per_block_bits[i] ==
              doctest::Approx(spec.coherence_time_s * rate).epsilon(1e-12));
}

TEST_CASE("simulate_mtt censors when OPRA never transmits") {
    const auto dist = SnrDistribution::degenerate(0.1);
    const auto opra = RatePolicy::opra(0.5);  // fixed SNR below cutoff
    TransmissionSpec spec(1e5, kB20MHz, 1e-3);
    const auto tr = simulate_mtt(spec, opra, dist, 3, 16);
    CHECK(tr.censored);
    CHECK(tr.blocks_used == 16);
    CHECK(tr.mtt_s == doctest::Approx(16e-3).epsilon(1e-12));
}

TEST_CASE("single-block episode reduces to mtt_instantaneous") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    TransmissionSpec spec(1e3, kB20MHz, 1.0);  // finishes in block 1
    const auto tr = simulate_mtt(spec, RatePolicy::ora(), dist, 5, 8);
    REQUIRE(tr.blocks_used == 1);
    CHECK(tr.mtt_s ==
          doctest::Approx(mtt_instantaneous(spec, RatePolicy::ora(),
                                            tr.block_snrs[0]))
              .epsilon(1e-12));
}

TEST_CASE("estimate_dor on a deterministic channel is a step function") {
    const double rate = 2.5e6;
    const auto dist = fixed_rate_channel(rate, kB20MHz);
    TransmissionSpec spec(1.1e6, kB20MHz, 50e-3);  // H/R = 0.44 s
    CHECK(estimate_dor(spec, ThresholdDuration(0.3), RatePolicy::ora(), dist, 1000,
                       5)
              .probability == 1.0);
    CHECK(estimate_dor(spec, ThresholdDuration(0.6), RatePolicy::ora(), dist, 1000,
                       5)
              .probability == 0.0);
}

TEST_CASE("estimate_dor matches the single-block closed form") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    TransmissionSpec spec(4e5, kB20MHz, 1.0);  // T_c far above T_th
    const double t_th = 1e-2;
    const auto mc = estimate_dor(spec, ThresholdDuration(t_th), RatePolicy::ora(),
                                 dist, 1000000, 42);
    const double analytic =
        dor_single_block(spec, ThresholdDuration(t_th), dist, RatePolicy::ora());
    CHECK(std::abs(mc.probability - analytic) <= 3.0 * mc.std_error);
    CHECK(mc.ci95_low <= mc.probability);
    CHECK(mc.probability <= mc.ci95_high);
    CHECK(mc.std_error ==
          doctest::Approx(std::sqrt(mc.probability * (1.0 - mc.probability) / 1e6))
              .epsilon(1e-12));
}

TEST_CASE("estimate_dor is deterministic in the master seed") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    TransmissionSpec spec(4e5, kB20MHz, 2e-3);
    const auto a = estimate_dor(spec, ThresholdDuration(16e-3), RatePolicy::ora(),
                                dist, 50000, 77);
    const auto b = estimate_dor(spec, ThresholdDuration(16e-3), RatePolicy::ora(),
                                dist, 50000, 77);
    CHECK(a.probability == b.probability);
    const auto c = estimate_dor(spec, ThresholdDuration(16e-3), RatePolicy::ora(),
                                dist, 50000, 78);
    CHECK(a.probability != c.probability);
}

TEST_CASE("simulate_met") {
    const double rate = 2.5e6;
    const auto dist = fixed_rate_channel(rate, kB20MHz);
    SUBCASE("deterministic channel delivers duration times rate") {
        CHECK(simulate_met(0.25, 50e-3, RatePolicy::ora(), dist, kB20MHz, 1) ==
              doctest::Approx(0.25 * rate).epsilon(1e-12));
        CHECK(simulate_met(0.17, 50e-3, RatePolicy::ora(), dist, kB20MHz, 1) ==
              doctest::Approx(0.17 * rate).epsilon(1e-12));
    }
    SUBCASE("mean over many episodes approaches the ergodic value") {
        const auto ray = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
        const double t_c = 2e-3;
        const double duration = 3.5 * t_c;
        double mean = 0.0;
        const std::size_t n = 1000000;
        for (std::size_t ep = 0; ep < n; ++ep)
            mean += simulate_met(duration, t_c, RatePolicy::ora(), ray, kB20MHz,
                                 episode_seed(11, ep));
        mean /= static_cast<double>(n);
        const double expected =
            duration * ergodic_capacity(ray, RatePolicy::ora(), kB20MHz);
        CHECK(std::abs(mean - expected) < 5e-3 * expected);
    }
}

TEST_CASE("estimate_ior basics") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    const auto opra = RatePolicy::opra_waterfilling(dist);

    // tiny threshold: ORA never misses
    CHECK(estimate_ior(EntropyThreshold(1e-9), 30e-3, 1.0, RatePolicy::ora(), dist,
                       kB20MHz, 1000, 3)
              .probability == 0.0);

    // deterministic channel: 0/1 by threshold comparison
    const auto fixed = fixed_rate_channel(2.5e6, kB20MHz);
    CHECK(estimate_ior(EntropyThreshold(1e6), 0.3, 50e-3, RatePolicy::ora(), fixed,
                       kB20MHz, 1000, 3)
              .probability == 1.0);  // MET = 0.75e6 < 1e6
    CHECK(estimate_ior(EntropyThreshold(5e5), 0.3, 50e-3, RatePolicy::ora(), fixed,
                       kB20MHz, 1000, 3)
              .probability == 0.0);

    // single-block OPRA run against the closed form
    const auto mc = estimate_ior(EntropyThreshold(4e5), 20e-3, 1.0, opra, dist,
                                 kB20MHz, 1000000, 21);
    const double analytic =
        ior_single_block(EntropyThreshold(4e5), 20e-3, kB20MHz, dist, opra);
    CHECK(std::abs(mc.probability - analytic) <= 3.0 * mc.std_error);
}

TEST_CASE("DOR/IOR duality holds empirically in the single-block regime") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    TransmissionSpec spec(4e5, kB20MHz, 1.0);
    const double t = 1e-2;
    const auto dor = estimate_dor(spec, ThresholdDuration(t), RatePolicy::ora(),
                                  dist, 400000, 1001);
    const auto ior = estimate_ior(EntropyThreshold(4e5), t, 1.0, RatePolicy::ora(),
                                  dist, kB20MHz, 400000, 2002);
    const double combined =
        std::sqrt(dor.std_error * dor.std_error + ior.std_error * ior.std_error);
    CHECK(std::abs(dor.probability - ior.probability) <= 3.0 * combined);
}

TEST_CASE("raising max_blocks never decreases uncensored episodes") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(-5.0));
    TransmissionSpec spec(4e5, kB20MHz, 2e-3);
    const auto opra = RatePolicy::opra_waterfilling(dist);
    std::size_t prev_uncensored = 0;
    for (std::size_t cap : {4u, 8u, 16u, 32u}) {
        std::size_t uncensored = 0;
        for (std::uint64_t ep = 0; ep < 2000; ++ep)
            if (!simulate_mtt(spec, opra, dist, episode_seed(5, ep), cap).censored)
                ++uncensored;
        CHECK(uncensored >= prev_uncensored);
        prev_uncensored = uncensored;
    }
}

TEST_CASE("input validation") {
    const auto dist = SnrDistribution::rayleigh(AverageSnr::from_db(6.0));
    TransmissionSpec spec(4e5, kB20MHz, 2e-3);
    CHECK_THROWS_AS(estimate_dor(spec, ThresholdDuration(1e-2), RatePolicy::ora(),
                                 dist, 50, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_dor(spec, ThresholdDuration(1e-2), RatePolicy::ora(),
                                 dist, 1000, 1, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_mtt(spec, RatePolicy::ora(), dist, 1, 0),
                    std::invalid_argument);
}
