#include "airtype/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airtype/robust.hpp"

namespace airtype {

static double mass_weighted(const std::vector<double>& r, bool log_domain) {
    double mass = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] <= 0.0) continue;
        const double ell = static_cast<double>(i) + 1.0;
        mass += r[i];
        acc += r[i] * (log_domain ? std::log(ell) : ell);
    }
    if (!(mass > 0.0)) throw std::domain_error("psi: no positive mass retained");
    return log_domain ? std::exp(acc / mass) : acc / mass;
}

double psi(const std::vector<double>& r, AggregationFn fn, double noise_floor) {
    if (r.empty()) throw std::invalid_argument("psi: empty type");
    switch (fn) {
        case AggregationFn::ArithmeticMean:
            return mass_weighted(r, false);
        case AggregationFn::GeometricMean:
            return mass_weighted(r, true);
        case AggregationFn::Min:
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r[i] > noise_floor) return static_cast<double>(i) + 1.0;
            }
            throw std::domain_error("psi: no entry above noise floor");
        case AggregationFn::Max:
            for (std::size_t i = r.size(); i > 0; --i) {
                if (r[i - 1] > noise_floor) return static_cast<double>(i);
            }
            throw std::domain_error("psi: no entry above noise floor");
        case AggregationFn::Median:
            return static_cast<double>(median_from_type(r));
    }
    throw std::logic_error("psi: bad aggregation function");
}

double oracle(const MeasurementVector& s, AggregationFn fn) {
    if (s.empty()) throw std::invalid_argument("oracle: empty measurements");
    const double k = static_cast<double>(s.size());
    switch (fn) {
        case AggregationFn::ArithmeticMean: {
            double sum = 0.0;
            for (int v : s) sum += v;
            return sum / k;
        }
        case AggregationFn::GeometricMean: {
            double sum = 0.0;
            for (int v : s) sum += std::log(static_cast<double>(v));
            return std::exp(sum / k);
        }
        case AggregationFn::Min:
            return static_cast<double>(*std::min_element(s.begin(), s.end()));
        case AggregationFn::Max:
            return static_cast<double>(*std::max_element(s.begin(), s.end()));
        case AggregationFn::Median: {
            MeasurementVector sorted = s;
            std::sort(sorted.begin(), sorted.end());
            return static_cast<double>(sorted[(sorted.size() - 1) / 2]);
        }
    }
    throw std::logic_error("oracle: bad aggregation function");
}

double nmse(double truth, double estimate) {
    if (truth == 0.0 || !std::isfinite(truth))
        throw std::invalid_argument("nmse: truth must be finite and nonzero");
    if (!std::isfinite(estimate)) throw std::invalid_argument("nmse: non-finite estimate");
    const double e = truth - estimate;
    return (e * e) / (truth * truth);
}

}  // namespace airtype
