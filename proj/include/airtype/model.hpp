#pragma once

#include <vector>

namespace airtype {

// Modulation used to put a measurement on the air.
enum class Scheme { Fsk, Ppm };

// A measurement is a resource index in [1, L]. Indices are 1-based
// throughout; vectors of per-resource values use slot ell-1.
using Measurement = int;
using MeasurementVector = std::vector<int>;

struct SystemConfig {
    int k = 1;                     // legitimate devices
    int l = 2;                     // orthogonal resources / bins
    double snr_db = 30.0;
    Scheme scheme = Scheme::Fsk;
    int n = 2;                     // waveform samples per symbol, n >= l
    void validate() const;         // throws std::invalid_argument
};

struct DataStats {
    int min = 0;
    int max = 0;
    double mean = 0.0;
};

// Throws if s is empty or any entry is outside [1, l].
void validate_measurements(const MeasurementVector& s, int l);

DataStats compute_stats(const MeasurementVector& s);

// Uniform quantizer over [lo, hi] with l bins. Bins are closed on the
// left, so a value on an interior edge goes to the upper bin; the last
// bin also includes hi. Out-of-range values clip to the end bins.
int quantize(double value, double lo, double hi, int l);

// Center of bin m.
double dequantize(int m, double lo, double hi, int l);

// Affine extension of dequantize to fractional bin coordinates, for
// mapping a real-valued aggregate of bin indices back to value space.
double dequantize_real(double bin, double lo, double hi, int l);

}  // namespace airtype
