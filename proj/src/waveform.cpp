#include "airtype/waveform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace airtype {

static void check_geometry(int s, Scheme scheme, int n, int l) {
    if (l < 1) throw std::invalid_argument("waveform: l must be >= 1");
    if (n < l) throw std::invalid_argument("waveform: n must be >= l");
    if (s < 1 || s > l) throw std::invalid_argument("waveform: s outside [1, L]");
    if (scheme == Scheme::Ppm && n % l != 0)
        throw std::invalid_argument("waveform: PPM needs n divisible by l");
}

Waveform synthesize(int s, Scheme scheme, int n, int l, std::complex<double> amplitude) {
    check_geometry(s, scheme, n, l);
    Waveform wf;
    wf.scheme = scheme;
    wf.samples.assign(n, {0.0, 0.0});
    if (scheme == Scheme::Fsk) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        const double step = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n);
        for (int t = 0; t < n; ++t) {
            wf.samples[t] = amplitude * std::polar(scale, step * static_cast<double>(t));
        }
    } else {
        const int width = n / l;
        const std::complex<double> v = amplitude / std::sqrt(static_cast<double>(width));
        for (int t = (s - 1) * width; t < s * width; ++t) wf.samples[t] = v;
    }
    return wf;
}

std::vector<std::complex<double>> matched_filter_bank(
    const std::vector<std::complex<double>>& y, Scheme scheme, int l) {
    const int n = static_cast<int>(y.size());
    check_geometry(1, scheme, n, l);
    std::vector<std::complex<double>> out(l);
    if (scheme == Scheme::Fsk) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (int s = 1; s <= l; ++s) {
            const double step = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n);
            std::complex<double> acc{0.0, 0.0};
            for (int t = 0; t < n; ++t) {
                acc += y[t] * std::polar(scale, -step * static_cast<double>(t));
            }
            out[s - 1] = acc;
        }
    } else {
        const int width = n / l;
        const double scale = 1.0 / std::sqrt(static_cast<double>(width));
        for (int s = 1; s <= l; ++s) {
            std::complex<double> acc{0.0, 0.0};
            for (int t = (s - 1) * width; t < s * width; ++t) acc += y[t];
            out[s - 1] = acc * scale;
        }
    }
    return out;
}

}  // namespace airtype
