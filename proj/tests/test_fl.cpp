#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "airtype/fl.hpp"
#include "airtype/model.hpp"
#include "airtype/rng.hpp"
#include "doctest.h"

using namespace airtype;

namespace {

// Softmax cross-entropy of a model over a shard, recomputed from scratch.
double shard_loss(const ToyModel& m, const FlDataset& data, const std::vector<int>& shard) {
    const int stride = m.features + 1;
    double loss = 0.0;
    for (int idx : shard) {
        const double* x = &data.train_x[static_cast<std::size_t>(idx) * m.features];
        std::vector<double> score(m.classes);
        double mx = score[0];
        for (int c = 0; c < m.classes; ++c) {
            score[c] = m.w[static_cast<std::size_t>(c) * stride + m.features];
            for (int j = 0; j < m.features; ++j)
                score[c] += m.w[static_cast<std::size_t>(c) * stride + j] * x[j];
            mx = std::max(mx, score[c]);
        }
        double z = 0.0;
        for (int c = 0; c < m.classes; ++c) z += std::exp(score[c] - mx);
        loss += std::log(z) - (score[data.train_y[idx]] - mx);
    }
    return loss / static_cast<double>(shard.size());
}

std::vector<int> all_train_indices(const FlDataset& data) {
    std::vector<int> idx(data.train_count());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

FlConfig small_config(int devices, int attackers) {
    FlConfig cfg;
    cfg.devices = devices;
    cfg.attackers = attackers;
    cfg.robust = fl_robust_defaults(devices, attackers);
    return cfg;
}

}  // namespace

TEST_SUITE("fl") {
    TEST_CASE("dataset is balanced, shaped, and seed-stable") {
        const FlDataset a = make_blobs_dataset(42);
        CHECK(a.features == 6);
        CHECK(a.classes == 4);
        CHECK(a.train_count() == 1500);
        CHECK(a.test_count() == 400);
        CHECK(a.train_x.size() == 1500u * 6u);
        int per_class[4] = {0, 0, 0, 0};
        for (int y : a.test_y) per_class[y]++;
        for (int c = 0; c < 4; ++c) CHECK(per_class[c] == 100);

        const FlDataset b = make_blobs_dataset(42);
        CHECK(a.train_x == b.train_x);
        CHECK(a.test_x == b.test_x);
        CHECK(make_blobs_dataset(43).train_x != a.train_x);

        // class means sit on their own axis
        double m00 = 0.0, m01 = 0.0;
        int n0 = 0;
        for (int i = 0; i < a.train_count(); ++i) {
            if (a.train_y[i] != 0) continue;
            m00 += a.train_x[static_cast<std::size_t>(i) * 6];
            m01 += a.train_x[static_cast<std::size_t>(i) * 6 + 1];
            ++n0;
        }
        CHECK(m00 / n0 == doctest::Approx(2.5).epsilon(0.1));
        CHECK(std::abs(m01 / n0) < 0.2);
    }

    TEST_CASE("shards partition the training set evenly") {
        const auto shards = make_shards(1500, 50, 7);
        CHECK(shards.size() == 50);
        std::set<int> seen;
        for (const auto& s : shards) {
            CHECK(s.size() == 30);
            seen.insert(s.begin(), s.end());
        }
        CHECK(seen.size() == 1500);
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == 1499);

        const auto uneven = make_shards(10, 3, 7);
        CHECK(uneven[0].size() == 4);
        CHECK(uneven[2].size() == 3);
        CHECK(make_shards(1500, 50, 7) == shards);
        CHECK_THROWS_AS(make_shards(2, 3, 7), std::invalid_argument);
    }

    TEST_CASE("local training descends the loss and respects no-op settings") {
        const FlDataset data = make_blobs_dataset(11);
        const auto shards = make_shards(data.train_count(), 50, 11);
        const ToyModel zero = make_model(data.features, data.classes);

        CHECK(local_train(zero, data, shards[0], 0, 0.3).w == zero.w);
        CHECK(local_train(zero, data, shards[0], 3, 0.0).w == zero.w);

        const ToyModel once = local_train(zero, data, shards[0], 1, 0.2);
        const ToyModel more = local_train(zero, data, shards[0], 8, 0.2);
        CHECK(shard_loss(once, data, shards[0]) < shard_loss(zero, data, shards[0]));
        CHECK(shard_loss(more, data, shards[0]) < shard_loss(once, data, shards[0]));
        CHECK(local_train(zero, data, shards[0], 8, 0.2).w == more.w);
        CHECK_THROWS_AS(local_train(zero, data, {}, 1, 0.2), std::invalid_argument);
    }

    TEST_CASE("accuracy evaluation: ties, a trained model, random weights") {
        const FlDataset data = make_blobs_dataset(21);
        const ToyModel zero = make_model(data.features, data.classes);
        CHECK(evaluate(zero, data) == 0.25);  // all scores tie, lowest class wins

        const ToyModel trained = local_train(zero, data, all_train_indices(data), 200, 0.2);
        CHECK(evaluate(trained, data) > 0.8);

        double acc = 0.0;
        for (int seed = 0; seed < 10; ++seed) {
            Rng rng(900 + seed);
            ToyModel noise = zero;
            for (auto& w : noise.w) w = 0.5 * rng.normal();
            acc += evaluate(noise, data);
        }
        CHECK(acc / 10.0 == doctest::Approx(0.25).epsilon(0.2));

        ToyModel wrong = make_model(3, 4);
        CHECK_THROWS_AS(evaluate(wrong, data), std::invalid_argument);
    }

    TEST_CASE("a clean noiseless round averages the quantized local models") {
        const FlDataset data = make_blobs_dataset(31);
        FlConfig cfg = small_config(10, 0);
        cfg.noiseless = true;
        cfg.method = Method::TbmaPlain;
        cfg.local_epochs = 1;
        cfg.learning_rate = 0.1;
        const auto shards = make_shards(data.train_count(), cfg.devices, 31);
        const ToyModel global = make_model(data.features, data.classes);

        const FlRoundResult round = fl_round(global, data, shards, cfg, 1);
        CHECK(round.resources_used == static_cast<long>(global.dim()) * cfg.bins);

        for (int d = 0; d < global.dim(); ++d) {
            double mean_bin = 0.0;
            for (int dev = 0; dev < cfg.devices; ++dev) {
                const ToyModel local =
                    local_train(global, data, shards[dev], cfg.local_epochs, cfg.learning_rate);
                mean_bin += quantize(local.w[d], -cfg.clip, cfg.clip, cfg.bins);
            }
            mean_bin /= cfg.devices;
            const double expect = dequantize_real(mean_bin, -cfg.clip, cfg.clip, cfg.bins);
            CHECK(round.model.w[d] == doctest::Approx(expect).epsilon(1e-9));
        }
    }

    TEST_CASE("fine quantization tracks the unquantized average") {
        const FlDataset data = make_blobs_dataset(32);
        FlConfig cfg = small_config(10, 0);
        cfg.noiseless = true;
        cfg.method = Method::TbmaPlain;
        cfg.local_epochs = 1;
        cfg.learning_rate = 0.1;
        cfg.bins = 1024;
        const auto shards = make_shards(data.train_count(), cfg.devices, 32);
        const ToyModel global = make_model(data.features, data.classes);

        std::vector<double> fedavg(global.dim(), 0.0);
        for (int dev = 0; dev < cfg.devices; ++dev) {
            const ToyModel local =
                local_train(global, data, shards[dev], cfg.local_epochs, cfg.learning_rate);
            for (int d = 0; d < global.dim(); ++d) fedavg[d] += local.w[d] / cfg.devices;
        }
        const FlRoundResult round = fl_round(global, data, shards, cfg, 1);
        for (int d = 0; d < global.dim(); ++d) {
            CHECK(std::abs(round.model.w[d] - fedavg[d]) <= 2.0 * cfg.clip / cfg.bins);
        }
    }

    TEST_CASE("the mass threshold strips a coordinated attack from every parameter") {
        const FlDataset data = make_blobs_dataset(33);
        const int devices = 50;
        const auto shards = make_shards(data.train_count(), devices, 33);
        const ToyModel global = make_model(data.features, data.classes);

        FlConfig clean_cfg = small_config(devices, 0);
        clean_cfg.noiseless = true;
        clean_cfg.method = Method::TbmaPlain;
        const ToyModel clean = fl_round(global, data, shards, clean_cfg, 1).model;

        FlConfig attacked_cfg = small_config(devices, 3);
        attacked_cfg.noiseless = true;
        attacked_cfg.method = Method::TbmaPlain;
        const ToyModel attacked = fl_round(global, data, shards, attacked_cfg, 1).model;

        FlConfig defended_cfg = small_config(devices, 3);
        defended_cfg.noiseless = true;
        defended_cfg.method = Method::TbmaRobust;
        const ToyModel defended = fl_round(global, data, shards, defended_cfg, 1).model;

        int robust_wins = 0;
        for (int d = 0; d < global.dim(); ++d) {
            const double err_attacked = std::abs(attacked.w[d] - clean.w[d]);
            const double err_defended = std::abs(defended.w[d] - clean.w[d]);
            if (err_defended < err_attacked) ++robust_wins;
            CHECK(err_defended < 0.1);  // a few bins at most
        }
        CHECK(robust_wins >= global.dim() * 9 / 10);
    }

    TEST_CASE("federated runs are deterministic across thread counts") {
        FlConfig cfg = small_config(10, 2);
        cfg.rounds = 2;
        cfg.noiseless = true;
        const FlRunResult a = run_fl(cfg, 1);
        const FlRunResult b = run_fl(cfg, 4);
        CHECK(a.accuracy == b.accuracy);
        CHECK(a.resources_per_round == 4 * 7 * 64);
        CHECK(fl_csv(cfg, a) == fl_csv(cfg, b));
    }

    TEST_CASE("waveform rounds match symbol rounds without noise") {
        const FlDataset data = make_blobs_dataset(34);
        FlConfig cfg = small_config(6, 1);
        cfg.noiseless = true;
        cfg.bins = 8;
        cfg.waveform_samples = 8;
        cfg.local_epochs = 1;
        const auto shards = make_shards(data.train_count(), cfg.devices, 34);
        const ToyModel global = make_model(data.features, data.classes);

        cfg.fidelity = Fidelity::Symbol;
        const ToyModel symbol = fl_round(global, data, shards, cfg, 1).model;
        for (const Scheme scheme : {Scheme::Fsk, Scheme::Ppm}) {
            cfg.fidelity = Fidelity::Waveform;
            cfg.scheme = scheme;
            const ToyModel air = fl_round(global, data, shards, cfg, 1).model;
            for (int d = 0; d < global.dim(); ++d) {
                CHECK(air.w[d] == doctest::Approx(symbol.w[d]).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("csv reports the run shape") {
        FlConfig cfg = small_config(10, 2);
        cfg.rounds = 3;
        cfg.noiseless = true;
        const FlRunResult res = run_fl(cfg);
        const std::string csv = fl_csv(cfg, res);
        CHECK(csv.rfind("# airtype federated demo", 0) == 0);
        CHECK(csv.find("# snr_db=none") != std::string::npos);
        CHECK(csv.find("round,method,accuracy\n") != std::string::npos);
        CHECK(csv.find("\n1,tbma-robust,") != std::string::npos);
        CHECK(csv.find("\n3,tbma-robust,") != std::string::npos);
    }

    TEST_CASE("invalid federated configurations are rejected") {
        FlConfig cfg = small_config(10, 10);
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg = small_config(10, 2);
        cfg.method = Method::TbmaMedian;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg = small_config(10, 2);
        cfg.fidelity = Fidelity::Waveform;
        cfg.bins = 64;
        cfg.waveform_samples = 32;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg.waveform_samples = 96;
        cfg.scheme = Scheme::Ppm;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg.scheme = Scheme::Fsk;
        CHECK_NOTHROW(cfg.validate());
    }
}
