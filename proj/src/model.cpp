#include "airtype/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace airtype {

void SystemConfig::validate() const {
    if (k < 1) throw std::invalid_argument("SystemConfig: k must be >= 1");
    if (l < 2) throw std::invalid_argument("SystemConfig: l must be >= 2");
    if (n < l) throw std::invalid_argument("SystemConfig: n must be >= l");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("SystemConfig: snr_db must be finite");
    if (scheme == Scheme::Ppm && n % l != 0)
        throw std::invalid_argument("SystemConfig: PPM needs n divisible by l");
}

void validate_measurements(const MeasurementVector& s, int l) {
    if (s.empty()) throw std::invalid_argument("measurements: empty vector");
    for (int v : s) {
        if (v < 1 || v > l) throw std::invalid_argument("measurements: value outside [1, L]");
    }
}

DataStats compute_stats(const MeasurementVector& s) {
    if (s.empty()) throw std::invalid_argument("compute_stats: empty vector");
    DataStats st;
    st.min = s[0];
    st.max = s[0];
    double sum = 0.0;
    for (int v : s) {
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
        sum += v;
    }
    st.mean = sum / static_cast<double>(s.size());
    return st;
}

static void check_range(double lo, double hi, int l, const char* who) {
    if (!(lo < hi)) throw std::invalid_argument(std::string(who) + ": lo must be < hi");
    if (l < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 bins");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument(std::string(who) + ": bounds must be finite");
}

int quantize(double value, double lo, double hi, int l) {
    if (!std::isfinite(value)) throw std::invalid_argument("quantize: non-finite value");
    check_range(lo, hi, l, "quantize");
    const double x = std::clamp(value, lo, hi);
    const int bin = 1 + static_cast<int>(std::floor((x - lo) / (hi - lo) * l));
    return std::clamp(bin, 1, l);
}

double dequantize(int m, double lo, double hi, int l) {
    check_range(lo, hi, l, "dequantize");
    if (m < 1 || m > l) throw std::invalid_argument("dequantize: bin outside [1, L]");
    return lo + (static_cast<double>(m) - 0.5) * (hi - lo) / static_cast<double>(l);
}

double dequantize_real(double bin, double lo, double hi, int l) {
    check_range(lo, hi, l, "dequantize");
    if (!std::isfinite(bin)) throw std::invalid_argument("dequantize: non-finite bin coordinate");
    return lo + (bin - 0.5) * (hi - lo) / static_cast<double>(l);
}

}  // namespace airtype
