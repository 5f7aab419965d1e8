#pragma once

#include <vector>

#include "airtype/model.hpp"

namespace airtype {

enum class AggregationFn { ArithmeticMean, GeometricMean, Min, Max, Median };

// Function estimate from a (possibly corrected, not renormalized) type.
// Mean forms divide by the retained positive mass, so zeroed entries drop
// out. Min and Max return the smallest / largest resource whose entry
// exceeds noise_floor; Median is the lower median of the positive mass.
// Throws std::domain_error when no mass qualifies.
double psi(const std::vector<double>& r, AggregationFn fn, double noise_floor = 0.0);

// Exact value of the target function over raw measurements. Median is the
// lower median, matching psi's convention.
double oracle(const MeasurementVector& s, AggregationFn fn);

// Squared error normalized by the squared truth. Truth must be nonzero.
double nmse(double truth, double estimate);

}  // namespace airtype
