#pragma once

#include <complex>
#include <vector>

#include "airtype/model.hpp"

namespace airtype {

struct Waveform {
    std::vector<std::complex<double>> samples;
    Scheme scheme = Scheme::Fsk;
};

// Unit-energy symbol waveform for resource s, scaled by `amplitude`.
//
//   FSK: samples[t] = a / sqrt(N) * exp(j 2 pi s t / N)
//   PPM: a / sqrt(N/L) on the s-th of L disjoint slots, zero elsewhere
//
// Requires 1 <= s <= l <= n, and n divisible by l for PPM. The resulting
// templates (a = 1) are orthonormal across s.
Waveform synthesize(int s, Scheme scheme, int n, int l, std::complex<double> amplitude);

// Inner products of y against the L unit-amplitude templates. White noise
// of power sigma2 per sample keeps power sigma2 per output because the
// templates have unit energy.
std::vector<std::complex<double>> matched_filter_bank(
    const std::vector<std::complex<double>>& y, Scheme scheme, int l);

}  // namespace airtype
