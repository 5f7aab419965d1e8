#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "airtype/experiment.hpp"
#include "airtype/model.hpp"
#include "airtype/robust.hpp"

namespace airtype {

// Small bundled classification task: isotropic Gaussian blobs, one per
// class, balanced train and test splits, generated from a seed.
struct FlDataset {
    int features = 0;
    int classes = 0;
    std::vector<double> train_x;  // rows of `features` values
    std::vector<int> train_y;
    std::vector<double> test_x;
    std::vector<int> test_y;

    int train_count() const { return static_cast<int>(train_y.size()); }
    int test_count() const { return static_cast<int>(test_y.size()); }
};

FlDataset make_blobs_dataset(std::uint64_t seed);

// Multinomial logistic regression, weights row-major per class with the
// bias in the last column.
struct ToyModel {
    int features = 0;
    int classes = 0;
    std::vector<double> w;

    int dim() const { return classes * (features + 1); }
};

ToyModel make_model(int features, int classes);

// Sparse-histogram defaults: the per-parameter types of a few dozen
// devices are spiky, so the neighbor and percentile rules of the dense
// regime are switched off and everything rides on a mass threshold set
// just above the expected attacker fraction.
RobustParams fl_robust_defaults(int devices, int attackers);

struct FlConfig {
    int devices = 50;
    int attackers = 3;
    int rounds = 30;
    int local_epochs = 2;
    double learning_rate = 0.15;
    double clip = 1.0;  // parameters quantized over [-clip, clip]
    int bins = 64;      // resources per parameter
    double snr_db = 30.0;
    bool noiseless = false;
    Method method = Method::TbmaRobust;  // da, tbma-plain, or tbma-robust
    Fidelity fidelity = Fidelity::Symbol;
    Scheme scheme = Scheme::Fsk;
    int waveform_samples = 64;
    RobustParams robust = fl_robust_defaults(50, 3);
    std::uint64_t master_seed = 12345;

    void validate() const;  // throws ConfigError
};

// Full-batch gradient descent on the softmax cross-entropy over one
// shard; `epochs` steps of rate `lr`. Throws if the loss goes non-finite.
ToyModel local_train(const ToyModel& model, const FlDataset& data, const std::vector<int>& shard,
                     int epochs, double lr);

// Accuracy on the test split; score ties resolve to the lowest class.
double evaluate(const ToyModel& model, const FlDataset& data);

// IID split: a seeded shuffle of the training indices dealt into
// `devices` near-equal shards.
std::vector<std::vector<int>> make_shards(int train_count, int devices, std::uint64_t seed);

struct FlRoundResult {
    ToyModel model;
    long resources_used = 0;  // parameter count times bins
};

// One aggregation round: every device trains locally and quantizes its
// parameters; per parameter the server receives a type (or the direct
// analog sum), with the attackers piling onto the displacing bin of that
// parameter; the corrected arithmetic mean maps back to value space.
FlRoundResult fl_round(const ToyModel& global, const FlDataset& data,
                       const std::vector<std::vector<int>>& shards, const FlConfig& cfg,
                       int round_index, int threads = 1);

struct FlRunResult {
    std::vector<double> accuracy;  // test accuracy after round 1, 2, ...
    long resources_per_round = 0;
};

FlRunResult run_fl(const FlConfig& cfg, int threads = 1);

// CSV with `# key=value` metadata followed by `round,method,accuracy`.
std::string fl_csv(const FlConfig& cfg, const FlRunResult& result);

}  // namespace airtype
