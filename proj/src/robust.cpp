#include "airtype/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace airtype {

double RobustParams::effective_theta1(double sigma2, int k) const {
    switch (theta1_mode) {
        case Theta1Mode::TypeNoiseStd:
            return theta1_scale * std::sqrt(sigma2 / 2.0) / static_cast<double>(k);
        case Theta1Mode::NoisePower:
            return theta1_scale * sigma2;
        case Theta1Mode::Fixed:
            return theta1_value;
    }
    throw std::logic_error("effective_theta1: bad mode");
}

void RobustParams::validate() const {
    if (!(theta1_scale >= 0.0) || !std::isfinite(theta1_scale))
        throw std::invalid_argument("RobustParams: theta1_scale must be >= 0");
    if (theta1_mode == Theta1Mode::Fixed && (!(theta1_value >= 0.0) || !std::isfinite(theta1_value)))
        throw std::invalid_argument("RobustParams: theta1_value must be >= 0");
    if (!(theta2_counts >= 0.0))  // +inf allowed: disables step 3
        throw std::invalid_argument("RobustParams: theta2_counts must be >= 0");
    if (!(0.0 <= p_lo && p_lo <= p_hi && p_hi <= 1.0))
        throw std::invalid_argument("RobustParams: need 0 <= p_lo <= p_hi <= 1");
}

std::vector<double> threshold_noise(const std::vector<double>& r, double theta1) {
    if (theta1 < 0.0 || !std::isfinite(theta1))
        throw std::invalid_argument("threshold_noise: theta1 must be finite and >= 0");
    std::vector<double> out(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::abs(r[i]) >= theta1) out[i] = r[i];
    }
    return out;
}

// Quantile of a sorted sample by linear interpolation: rank p*(n-1) with
// fractional part interpolated between the straddling order statistics.
static double sorted_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(h), n - 2);
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

std::vector<double> percentile_truncate(const std::vector<double>& r, double p_lo, double p_hi) {
    if (!(0.0 <= p_lo && p_lo <= p_hi && p_hi <= 1.0))
        throw std::invalid_argument("percentile_truncate: need 0 <= p_lo <= p_hi <= 1");
    std::vector<double> nonzero;
    nonzero.reserve(r.size());
    for (double v : r) {
        if (v != 0.0) nonzero.push_back(v);
    }
    if (nonzero.empty()) return r;
    std::sort(nonzero.begin(), nonzero.end());
    const double q_lo = sorted_quantile(nonzero, p_lo);
    const double q_hi = sorted_quantile(nonzero, p_hi);
    std::vector<double> out = r;
    for (double& v : out) {
        if (v != 0.0 && (v < q_lo || v > q_hi)) v = 0.0;
    }
    return out;
}

std::vector<double> local_outlier_compensate(const std::vector<double>& r, double theta2_counts,
                                             int k) {
    if (k < 1) throw std::invalid_argument("local_outlier_compensate: k must be >= 1");
    if (std::isnan(theta2_counts) || theta2_counts < 0.0)
        throw std::invalid_argument("local_outlier_compensate: theta2 must be >= 0");
    const std::size_t n = r.size();
    if (n < 2) return r;
    const double kd = static_cast<double>(k);
    std::vector<double> out = r;
    for (std::size_t i = 0; i < n; ++i) {
        // Deviations measured in device counts against the input vector.
        bool near_left = i > 0 && std::abs(r[i] - r[i - 1]) * kd <= theta2_counts;
        bool near_right = i + 1 < n && std::abs(r[i] - r[i + 1]) * kd <= theta2_counts;
        if (near_left || near_right) continue;
        if (i == 0) {
            out[i] = r[1];
        } else if (i + 1 == n) {
            out[i] = r[n - 2];
        } else {
            out[i] = 0.5 * (r[i - 1] + r[i + 1]);
        }
    }
    return out;
}

CorrectedType robust_correct(const NoisyType& type, const RobustParams& params, double sigma2) {
    params.validate();
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw std::invalid_argument("robust_correct: bad sigma2");
    const double theta1 = params.effective_theta1(sigma2, type.k);
    std::vector<double> v = threshold_noise(type.r, theta1);
    v = percentile_truncate(v, params.p_lo, params.p_hi);
    v = local_outlier_compensate(v, params.theta2_counts, type.k);
    return CorrectedType{std::move(v), type.k};
}

int median_from_type(const std::vector<double>& r) {
    double mass = 0.0;
    for (double v : r) {
        if (v > 0.0) mass += v;
    }
    if (!(mass > 0.0)) throw std::domain_error("median_from_type: no positive mass");
    // Slack of 1e-9 keeps exact-half splits (cumulative fraction j/K = 1/2,
    // perturbed an ulp either way by accumulation) on the lower bin. Any
    // genuine sub-half fraction sits at least 1/(2K) below, far outside it.
    double cum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > 0.0) cum += r[i];
        if (cum / mass >= 0.5 - 1e-9) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(r.size());  // unreachable barring rounding
}

}  // namespace airtype
