#pragma once

#include <vector>

#include "airtype/tbma.hpp"

namespace airtype {

// How the noise-floor threshold theta1 is obtained.
//   TypeNoiseStd:  scale times the per-bin type-noise standard deviation
//                  sqrt(sigma2/2)/k (adapts to SNR and device count).
//   NoisePower:    scale times sigma2 itself.
//   Fixed:         an explicit value in type units.
enum class Theta1Mode { TypeNoiseStd, NoisePower, Fixed };

struct RobustParams {
    Theta1Mode theta1_mode = Theta1Mode::TypeNoiseStd;
    double theta1_scale = 3.0;
    double theta1_value = 0.0;   // used when theta1_mode == Fixed
    double theta2_counts = 5.0;  // neighbor-deviation threshold, in device counts
    double p_lo = 0.01;          // percentile window over nonzero entries
    double p_hi = 0.99;

    double effective_theta1(double sigma2, int k) const;
    void validate() const;
};

struct CorrectedType {
    std::vector<double> r_hat;
    int k = 1;
};

// Step 1: zero every entry with |r| below theta1.
std::vector<double> threshold_noise(const std::vector<double>& r, double theta1);

// Step 2: zero nonzero entries lying outside the [p_lo, p_hi] empirical
// quantile window of the nonzero entries (sorted, linearly interpolated).
// Zeros pass through untouched; boundary-equal values are kept.
std::vector<double> percentile_truncate(const std::vector<double>& r, double p_lo, double p_hi);

// Step 3: an entry deviating by more than theta2 device counts from every
// existing neighbor is replaced by the mean of its neighbors (the single
// neighbor value at the edges). Tests read the input vector only, so one
// isolated spike changes exactly one entry and never drags its neighbors.
std::vector<double> local_outlier_compensate(const std::vector<double>& r, double theta2_counts,
                                             int k);

// Steps 1 -> 2 -> 3, once, no renormalization. Downstream aggregation
// divides by the retained mass instead.
CorrectedType robust_correct(const NoisyType& type, const RobustParams& params, double sigma2);

// Smallest resource whose cumulative share of the positive mass reaches
// one half (the lower median). Negative entries count as zero.
int median_from_type(const std::vector<double>& r);

}  // namespace airtype
