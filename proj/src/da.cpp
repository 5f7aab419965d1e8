#include "airtype/da.hpp"

#include <cmath>
#include <stdexcept>

namespace airtype {

static void check_fn(AggregationFn fn) {
    if (fn != AggregationFn::ArithmeticMean && fn != AggregationFn::GeometricMean)
        throw std::invalid_argument("da: only arithmetic and geometric mean are nomographic here");
}

double da_aggregate(const MeasurementVector& s, int l, AggregationFn fn,
                    const AttackSpec& attack, double sigma2, Rng& rng) {
    check_fn(fn);
    validate_measurements(s, l);
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw std::invalid_argument("da_aggregate: bad sigma2");
    const bool log_domain = fn == AggregationFn::GeometricMean;
    const double k = static_cast<double>(s.size());

    double obs = 0.0;
    for (int v : s) obs += log_domain ? std::log(static_cast<double>(v)) : static_cast<double>(v);
    if (attack.attackers > 0) {
        const int target = resolve_target(attack, compute_stats(s), l);
        const double g =
            log_domain ? std::log(static_cast<double>(target)) : static_cast<double>(target);
        obs += static_cast<double>(attack.attackers) * g;
    }
    if (sigma2 > 0.0) obs += std::sqrt(sigma2 / 2.0) * rng.normal();

    const double scaled = obs / k;
    return log_domain ? std::exp(scaled) : scaled;
}

double da_transmit_energy(const MeasurementVector& s, AggregationFn fn) {
    check_fn(fn);
    const bool log_domain = fn == AggregationFn::GeometricMean;
    double e = 0.0;
    for (int v : s) {
        const double g = log_domain ? std::log(static_cast<double>(v)) : static_cast<double>(v);
        e += g * g;
    }
    return e;
}

double tbma_transmit_energy(const MeasurementVector& s) {
    return static_cast<double>(s.size());
}

}  // namespace airtype
