#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airtype/model.hpp"
#include "airtype/rng.hpp"
#include "doctest.h"

using namespace airtype;

namespace {

// Edge-walking reference quantizer: clip, then scan the explicit edge
// list. Bin b spans [edge[b-1], edge[b]); the last bin keeps hi.
int quantize_by_edges(double value, double lo, double hi, int l) {
    const double x = std::clamp(value, lo, hi);
    for (int b = 1; b < l; ++b) {
        const double upper = lo + static_cast<double>(b) * (hi - lo) / l;
        if (x < upper) return b;
    }
    return l;
}

}  // namespace

TEST_SUITE("model") {
    TEST_CASE("quantize pins") {
        CHECK(quantize(0.0, -1.0, 1.0, 4) == 3);  // interior edge goes up
        CHECK(quantize(-1.0, -1.0, 1.0, 4) == 1);
        CHECK(quantize(1.0, -1.0, 1.0, 4) == 4);
        CHECK(quantize(-0.25, -1.0, 1.0, 4) == 2);
        CHECK(quantize(0.999, -1.0, 1.0, 4) == 4);
        // clipping
        CHECK(quantize(-7.0, -1.0, 1.0, 4) == 1);
        CHECK(quantize(42.0, -1.0, 1.0, 4) == 4);
    }

    TEST_CASE("quantize matches edge-walk reference on representable grids") {
        Rng rng(7001);
        // Exact binary edges so both formulations see identical boundaries.
        const struct { double lo, hi; int l; } grids[] = {
            {0.0, 8.0, 8}, {-1.0, 1.0, 4}, {-2.0, 2.0, 16}, {0.0, 1.0, 2},
        };
        for (const auto& g : grids) {
            for (int i = 0; i <= g.l; ++i) {  // every edge, ties included
                const double edge = g.lo + i * (g.hi - g.lo) / g.l;
                CHECK(quantize(edge, g.lo, g.hi, g.l) == quantize_by_edges(edge, g.lo, g.hi, g.l));
            }
            for (int t = 0; t < 500; ++t) {
                const double v = g.lo - 1.0 + (g.hi - g.lo + 2.0) * rng.uniform();
                CHECK(quantize(v, g.lo, g.hi, g.l) == quantize_by_edges(v, g.lo, g.hi, g.l));
            }
        }
    }

    TEST_CASE("quantize is monotone") {
        Rng rng(7002);
        for (int t = 0; t < 200; ++t) {
            const double a = -3.0 + 6.0 * rng.uniform();
            const double b = -3.0 + 6.0 * rng.uniform();
            const int qa = quantize(std::min(a, b), -3.0, 3.0, 12);
            const int qb = quantize(std::max(a, b), -3.0, 3.0, 12);
            CHECK(qa <= qb);
        }
    }

    TEST_CASE("dequantize pins and round trip") {
        CHECK(dequantize(1, 0.0, 1.0, 2) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(dequantize(3, -1.0, 1.0, 4) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(dequantize_real(3.0, -1.0, 1.0, 4) == doctest::Approx(0.25).epsilon(1e-15));
        // fractional coordinates interpolate linearly between centers
        CHECK(dequantize_real(1.5, 0.0, 1.0, 2) ==
              doctest::Approx(0.5 * (dequantize(1, 0, 1, 2) + dequantize(2, 0, 1, 2))));

        Rng rng(7003);
        const double lo = -2.0, hi = 3.0;
        const int l = 32;
        const double half = (hi - lo) / (2.0 * l);
        for (int t = 0; t < 1000; ++t) {
            const double v = lo + (hi - lo) * rng.uniform();
            const double back = dequantize(quantize(v, lo, hi, l), lo, hi, l);
            CHECK(std::abs(back - v) <= half + 1e-12);
        }
    }

    TEST_CASE("quantize and dequantize reject bad input") {
        CHECK_THROWS_AS(quantize(std::nan(""), 0.0, 1.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(quantize(0.5, 1.0, 0.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(quantize(0.5, 0.0, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(dequantize(0, 0.0, 1.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(dequantize(5, 0.0, 1.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(dequantize_real(std::nan(""), 0.0, 1.0, 4), std::invalid_argument);
    }

    TEST_CASE("stats and measurement validation") {
        const MeasurementVector s{3, 1, 4, 4};
        const DataStats st = compute_stats(s);
        CHECK(st.min == 1);
        CHECK(st.max == 4);
        CHECK(st.mean == doctest::Approx(3.0));
        CHECK_THROWS_AS(compute_stats({}), std::invalid_argument);
        CHECK_NOTHROW(validate_measurements(s, 4));
        CHECK_THROWS_AS(validate_measurements(s, 3), std::invalid_argument);
        CHECK_THROWS_AS(validate_measurements({0, 1}, 4), std::invalid_argument);
        CHECK_THROWS_AS(validate_measurements({}, 4), std::invalid_argument);
    }

    TEST_CASE("system config validation") {
        SystemConfig cfg;
        cfg.k = 10;
        cfg.l = 8;
        cfg.n = 8;
        CHECK_NOTHROW(cfg.validate());
        cfg.n = 4;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // n < l
        cfg.n = 12;
        cfg.scheme = Scheme::Ppm;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // 12 % 8 != 0
        cfg.n = 16;
        CHECK_NOTHROW(cfg.validate());
        cfg.k = 0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
}
