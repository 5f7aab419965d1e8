#include <cmath>
#include <numeric>
#include <stdexcept>

#include "airtype/tbma.hpp"
#include "doctest.h"

using namespace airtype;

namespace {

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

TEST_SUITE("tbma") {
    TEST_CASE("noiseless type is the normalized histogram") {
        Rng rng(401);
        const NoisyType t = form_type_symbol({1, 2, 2, 4}, 4, 0.0, rng);
        REQUIRE(t.resources() == 4);
        CHECK(t.k == 4);
        CHECK(t.r[0] == 0.25);
        CHECK(t.r[1] == 0.5);
        CHECK(t.r[2] == 0.0);
        CHECK(t.r[3] == 0.25);

        const NoisyType one = form_type_symbol({3}, 5, 0.0, rng);
        CHECK(one.r == std::vector<double>{0.0, 0.0, 1.0, 0.0, 0.0});
    }

    TEST_CASE("type noise variance is sigma2 over 2 k^2 per bin") {
        Rng rng(402);
        const int k = 10, l = 8, trials = 20000;
        const MeasurementVector s(k, 3);
        double acc = 0.0, acc2 = 0.0;
        long count = 0;
        for (int t = 0; t < trials; ++t) {
            const NoisyType type = form_type_symbol(s, l, 1.0, rng);
            for (int b = 0; b < l; ++b) {
                if (b == 2) continue;  // skip the loaded bin, noise only
                acc += type.r[b];
                acc2 += type.r[b] * type.r[b];
                ++count;
            }
        }
        const double mean = acc / count;
        const double var = acc2 / count - mean * mean;
        CHECK(std::abs(mean) < 5e-4);
        CHECK(var == doctest::Approx(1.0 / (2.0 * k * k)).epsilon(0.05));
    }

    TEST_CASE("waveform path equals the symbol path when noiseless") {
        const MeasurementVector s{1, 5, 5, 2, 7, 7, 7, 3};
        const int k = 8, l = 8, n = 16;
        const AttackSpec none;
        for (const Scheme scheme : {Scheme::Fsk, Scheme::Ppm}) {
            for (const ChannelModel model : {ChannelModel::Identity, ChannelModel::RayleighFlat}) {
                Rng rng(403);
                const ChannelGains g = draw_gains(k, l, model, rng);
                const NoisyType air = form_type_waveform(s, g, l, n, 0.0, scheme, none, rng);
                Rng rng2(404);
                const NoisyType ideal = form_type_symbol(s, l, 0.0, rng2);
                REQUIRE(air.resources() == l);
                for (int b = 0; b < l; ++b) {
                    CHECK(air.r[b] == doctest::Approx(ideal.r[b]).epsilon(1e-9));
                }
            }
        }
    }

    TEST_CASE("attacker transmissions land on the chosen resource") {
        const MeasurementVector s{2, 2, 3, 3};
        AttackSpec attack;
        attack.attackers = 3;
        attack.strategy = AttackStrategy::MaxDisplace;  // mean 2.5, L = 8: target 8
        Rng rng(405);
        const ChannelGains g = draw_gains(4, 8, ChannelModel::Identity, rng);
        const NoisyType t = form_type_waveform(s, g, 8, 8, 0.0, Scheme::Fsk, attack, rng);
        CHECK(t.r[7] == doctest::Approx(0.75).epsilon(1e-9));  // 3 attackers / 4 devices
        CHECK(t.r[1] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(sum(t.r) == doctest::Approx(7.0 / 4.0).epsilon(1e-9));
    }

    TEST_CASE("symbol-level corruption adds attacker mass on the target") {
        Rng rng(406);
        const MeasurementVector s{1, 2, 2, 4};
        const NoisyType clean = form_type_symbol(s, 4, 0.0, rng);
        AttackSpec attack;
        attack.attackers = 2;
        attack.strategy = AttackStrategy::FixedResource;
        attack.fixed_target = 4;
        const NoisyType bad = corrupt_type(clean, attack, compute_stats(s));
        CHECK(bad.r == std::vector<double>{0.25, 0.5, 0.0, 0.75});
        CHECK(sum(bad.r) == doctest::Approx(1.5));

        attack.attackers = 0;
        const NoisyType same = corrupt_type(clean, attack, compute_stats(s));
        CHECK(same.r == clean.r);

        attack.attackers = 2;
        attack.strategy = AttackStrategy::MaxDisplace;  // mean 2.25, L = 4: target 4
        const NoisyType bad2 = corrupt_type(clean, attack, compute_stats(s));
        CHECK(bad2.r[3] == 0.75);
    }

    TEST_CASE("clean types sum to one under noise on average") {
        Rng rng(407);
        const MeasurementVector s{1, 3, 3, 5, 6};
        double acc = 0.0;
        const int trials = 4000;
        for (int t = 0; t < trials; ++t) acc += sum(form_type_symbol(s, 6, 0.5, rng).r);
        CHECK(acc / trials == doctest::Approx(1.0).epsilon(0.01));
    }

    TEST_CASE("bad arguments are rejected") {
        Rng rng(408);
        CHECK_THROWS_AS(form_type_symbol({1, 9}, 4, 0.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(form_type_symbol({}, 4, 0.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(form_type_symbol({1}, 4, -1.0, rng), std::invalid_argument);
        const ChannelGains g = draw_gains(2, 4, ChannelModel::Identity, rng);
        CHECK_THROWS_AS(form_type_waveform({1, 2, 3}, g, 4, 8, 0.0, Scheme::Fsk, {}, rng),
                        std::invalid_argument);  // gains sized for 2 devices
    }
}
