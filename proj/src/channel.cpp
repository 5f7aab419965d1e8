#include "airtype/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace airtype {

ChannelGains draw_gains(int k, int l, ChannelModel model, Rng& rng) {
    if (k < 1) throw std::invalid_argument("draw_gains: k must be >= 1");
    if (l < 1) throw std::invalid_argument("draw_gains: l must be >= 1");
    ChannelGains g;
    g.model = model;
    g.h.resize(k);
    for (int i = 0; i < k; ++i) {
        g.h[i] = (model == ChannelModel::Identity) ? std::complex<double>(1.0, 0.0)
                                                   : rng.cnormal(1.0);
    }
    return g;
}

std::complex<double> csi_invert(std::complex<double> h) {
    const double mag2 = std::norm(h);
    if (std::sqrt(mag2) < 1e-12) throw std::domain_error("csi_invert: channel gain too small");
    return std::conj(h) / mag2;
}

double snr_to_sigma2(double snr_db) {
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_to_sigma2: non-finite SNR");
    return std::pow(10.0, -snr_db / 10.0);
}

void add_awgn(std::vector<std::complex<double>>& x, double sigma2, Rng& rng) {
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw std::invalid_argument("add_awgn: sigma2 must be finite and >= 0");
    if (sigma2 == 0.0) return;
    for (auto& v : x) v += rng.cnormal(sigma2);
}

}  // namespace airtype
