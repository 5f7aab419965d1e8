#pragma once

#include <vector>

#include "airtype/attack.hpp"
#include "airtype/channel.hpp"
#include "airtype/model.hpp"
#include "airtype/rng.hpp"

namespace airtype {

// Receiver-side estimate of the data histogram. Entries can be slightly
// negative or exceed the clean mass once channel noise or attacker mass
// is in; clean entries are counts / k and sum to 1.
struct NoisyType {
    std::vector<double> r;  // length L, slot ell-1 holds resource ell
    int k = 1;              // legitimate-device count used for normalization

    int resources() const { return static_cast<int>(r.size()); }
};

// Symbol-level shortcut: r = counts/k plus i.i.d. real noise of variance
// sigma2 / (2 k^2) per bin. That is the exact law of the waveform path
// below (real part of a matched-filter output divided by k), so the two
// agree in distribution and coincide bit-for-bit at sigma2 = 0.
NoisyType form_type_symbol(const MeasurementVector& s, int l, double sigma2, Rng& rng);

// Full air interface: every device pre-inverts its flat channel gain,
// transmits the unit-energy waveform of its measurement, the signals add,
// AWGN of per-sample power sigma2 lands on top, and the receiver takes
// the real part of each matched-filter output over k. attack.attackers
// extra transmitters (own gains, also inverted) send the attack resource;
// the receiver still divides by k only.
NoisyType form_type_waveform(const MeasurementVector& s, const ChannelGains& gains, int l,
                             int n, double sigma2, Scheme scheme, const AttackSpec& attack,
                             Rng& rng);

// Symbol-level attack injection: adds attackers/k mass on the target
// resource. attackers == 0 returns the input unchanged.
NoisyType corrupt_type(const NoisyType& type, const AttackSpec& attack, const DataStats& stats);

}  // namespace airtype
