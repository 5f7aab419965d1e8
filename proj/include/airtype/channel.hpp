#pragma once

#include <complex>
#include <vector>

#include "airtype/rng.hpp"

namespace airtype {

enum class ChannelModel { Identity, RayleighFlat };

// Per-device complex gains. Both supported models are flat across
// resources, so one gain per device describes the full K x L matrix.
struct ChannelGains {
    ChannelModel model = ChannelModel::Identity;
    std::vector<std::complex<double>> h;  // one gain per device

    std::complex<double> at(int device, int /*resource*/) const { return h[device]; }
    int devices() const { return static_cast<int>(h.size()); }
};

struct NoiseSpec {
    double sigma2 = 0.0;  // complex noise power at the matched-filter input
};

// Identity: h = 1 for every device. RayleighFlat: i.i.d. circularly
// symmetric complex Gaussian with unit average power.
ChannelGains draw_gains(int k, int l, ChannelModel model, Rng& rng);

// Transmit-side inversion under perfect CSI: returns a with a * h = 1.
// Throws std::domain_error when |h| < 1e-12.
std::complex<double> csi_invert(std::complex<double> h);

// Noise power for a given SNR with unit per-device transmit power.
double snr_to_sigma2(double snr_db);

// Adds circularly symmetric complex Gaussian noise of total power sigma2
// per sample, in place. sigma2 == 0 leaves x untouched.
void add_awgn(std::vector<std::complex<double>>& x, double sigma2, Rng& rng);

}  // namespace airtype
