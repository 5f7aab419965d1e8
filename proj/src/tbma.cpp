#include "airtype/tbma.hpp"

#include <cmath>
#include <stdexcept>

#include "airtype/waveform.hpp"

namespace airtype {

NoisyType form_type_symbol(const MeasurementVector& s, int l, double sigma2, Rng& rng) {
    validate_measurements(s, l);
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw std::invalid_argument("form_type_symbol: bad sigma2");
    const int k = static_cast<int>(s.size());
    NoisyType t;
    t.k = k;
    t.r.assign(l, 0.0);
    for (int v : s) t.r[v - 1] += 1.0 / static_cast<double>(k);
    if (sigma2 > 0.0) {
        const double sd = std::sqrt(sigma2 / 2.0) / static_cast<double>(k);
        for (int i = 0; i < l; ++i) t.r[i] += sd * rng.normal();
    }
    return t;
}

NoisyType form_type_waveform(const MeasurementVector& s, const ChannelGains& gains, int l,
                             int n, double sigma2, Scheme scheme, const AttackSpec& attack,
                             Rng& rng) {
    validate_measurements(s, l);
    const int k = static_cast<int>(s.size());
    if (gains.devices() != k)
        throw std::invalid_argument("form_type_waveform: one gain per device required");
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw std::invalid_argument("form_type_waveform: bad sigma2");

    std::vector<std::complex<double>> y(n, {0.0, 0.0});
    auto transmit = [&](int resource, std::complex<double> h) {
        const std::complex<double> a = csi_invert(h);
        const Waveform wf = synthesize(resource, scheme, n, l, a);
        for (int t = 0; t < n; ++t) y[t] += h * wf.samples[t];
    };

    for (int i = 0; i < k; ++i) transmit(s[i], gains.at(i, 1));

    if (attack.attackers > 0) {
        const int target = resolve_target(attack, compute_stats(s), l);
        for (int m = 0; m < attack.attackers; ++m) {
            const std::complex<double> h = (gains.model == ChannelModel::Identity)
                                               ? std::complex<double>(1.0, 0.0)
                                               : rng.cnormal(1.0);
            transmit(target, h);
        }
    }

    add_awgn(y, sigma2, rng);
    const auto filtered = matched_filter_bank(y, scheme, l);

    NoisyType t;
    t.k = k;
    t.r.resize(l);
    for (int i = 0; i < l; ++i) t.r[i] = filtered[i].real() / static_cast<double>(k);
    return t;
}

NoisyType corrupt_type(const NoisyType& type, const AttackSpec& attack, const DataStats& stats) {
    if (attack.attackers < 0) throw std::invalid_argument("corrupt_type: attackers must be >= 0");
    NoisyType out = type;
    if (attack.attackers == 0) return out;
    const int target = resolve_target(attack, stats, type.resources());
    out.r[target - 1] += static_cast<double>(attack.attackers) / static_cast<double>(type.k);
    return out;
}

}  // namespace airtype
