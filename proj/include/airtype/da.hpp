#pragma once

#include "airtype/aggregate.hpp"
#include "airtype/attack.hpp"
#include "airtype/model.hpp"
#include "airtype/rng.hpp"

namespace airtype {

// Direct analog aggregation over one shared resource: devices transmit
// g(s_k) simultaneously, attackers add attackers * g(target), real noise
// of variance sigma2/2 lands on the sum, and the receiver returns
// psi(observation / k). l bounds the resource indices and anchors the
// MaxDisplace target. Supported nomographic pairs:
//   ArithmeticMean: g = identity, psi = identity
//   GeometricMean:  g = log,      psi = exp
double da_aggregate(const MeasurementVector& s, int l, AggregationFn fn,
                    const AttackSpec& attack, double sigma2, Rng& rng);

// Sum of squared transmit amplitudes for one round of direct aggregation;
// depends on the data through g, unlike the histogram path where every
// device spends unit energy.
double da_transmit_energy(const MeasurementVector& s, AggregationFn fn);

// Unit-power symbols: k, regardless of the data.
double tbma_transmit_energy(const MeasurementVector& s);

}  // namespace airtype
