#include "airtype/fl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "airtype/aggregate.hpp"
#include "airtype/attack.hpp"
#include "airtype/channel.hpp"
#include "airtype/da.hpp"
#include "airtype/parallel.hpp"
#include "airtype/tbma.hpp"

namespace airtype {

namespace {
constexpr int kFeatures = 6;
constexpr int kClasses = 4;
constexpr int kTrain = 1500;
constexpr int kTest = 400;
constexpr double kSeparation = 2.5;  // class-mean offset along its own axis
}  // namespace

FlDataset make_blobs_dataset(std::uint64_t seed) {
    Rng rng(seed);
    FlDataset d;
    d.features = kFeatures;
    d.classes = kClasses;
    auto fill = [&](std::vector<double>& x, std::vector<int>& y, int count) {
        x.resize(static_cast<std::size_t>(count) * kFeatures);
        y.resize(count);
        for (int i = 0; i < count; ++i) {
            const int label = i % kClasses;
            y[i] = label;
            for (int j = 0; j < kFeatures; ++j) {
                x[static_cast<std::size_t>(i) * kFeatures + j] =
                    (j == label ? kSeparation : 0.0) + rng.normal();
            }
        }
    };
    fill(d.train_x, d.train_y, kTrain);
    fill(d.test_x, d.test_y, kTest);
    return d;
}

ToyModel make_model(int features, int classes) {
    if (features < 1 || classes < 2) throw std::invalid_argument("make_model: bad shape");
    ToyModel m;
    m.features = features;
    m.classes = classes;
    m.w.assign(static_cast<std::size_t>(m.dim()), 0.0);
    return m;
}

RobustParams fl_robust_defaults(int devices, int attackers) {
    RobustParams p;
    p.theta1_mode = Theta1Mode::Fixed;
    p.theta1_value = (static_cast<double>(attackers) + 0.5) / static_cast<double>(devices);
    p.theta2_counts = std::numeric_limits<double>::infinity();  // neighbor rule off
    p.p_lo = 0.0;                                               // percentile window off
    p.p_hi = 1.0;
    return p;
}

void FlConfig::validate() const {
    if (devices < 1) throw ConfigError("fl config: devices must be >= 1");
    if (attackers < 0 || attackers >= devices)
        throw ConfigError("fl config: attackers must be in [0, devices)");
    if (rounds < 1) throw ConfigError("fl config: rounds must be >= 1");
    if (local_epochs < 0) throw ConfigError("fl config: local_epochs must be >= 0");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw ConfigError("fl config: bad learning rate");
    if (!(clip > 0.0) || !std::isfinite(clip)) throw ConfigError("fl config: clip must be > 0");
    if (bins < 2) throw ConfigError("fl config: bins must be >= 2");
    if (!std::isfinite(snr_db)) throw ConfigError("fl config: bad snr");
    if (method == Method::TbmaMedian)
        throw ConfigError("fl config: supported methods are da, tbma-plain, tbma-robust");
    if (fidelity == Fidelity::Waveform) {
        if (waveform_samples < bins) throw ConfigError("fl config: waveform samples must be >= bins");
        if (scheme == Scheme::Ppm && waveform_samples % bins != 0)
            throw ConfigError("fl config: PPM needs samples divisible by bins");
    }
    try {
        robust.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("fl config: ") + e.what());
    }
}

ToyModel local_train(const ToyModel& model, const FlDataset& data, const std::vector<int>& shard,
                     int epochs, double lr) {
    if (shard.empty()) throw std::invalid_argument("local_train: empty shard");
    if (epochs < 0 || !(lr >= 0.0) || !std::isfinite(lr))
        throw std::invalid_argument("local_train: bad epochs or rate");
    ToyModel m = model;
    const int f = m.features;
    const int stride = f + 1;
    const double inv_n = 1.0 / static_cast<double>(shard.size());
    std::vector<double> grad(m.w.size());
    std::vector<double> p(m.classes);

    for (int e = 0; e < epochs; ++e) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (int idx : shard) {
            const double* x = &data.train_x[static_cast<std::size_t>(idx) * f];
            const int y = data.train_y[idx];
            double mx = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < m.classes; ++c) {
                const double* row = &m.w[static_cast<std::size_t>(c) * stride];
                double score = row[f];
                for (int j = 0; j < f; ++j) score += row[j] * x[j];
                p[c] = score;
                mx = std::max(mx, score);
            }
            double z = 0.0;
            for (int c = 0; c < m.classes; ++c) {
                p[c] = std::exp(p[c] - mx);
                z += p[c];
            }
            loss -= std::log(p[y] / z);
            for (int c = 0; c < m.classes; ++c) {
                const double coef = p[c] / z - (c == y ? 1.0 : 0.0);
                double* g = &grad[static_cast<std::size_t>(c) * stride];
                for (int j = 0; j < f; ++j) g[j] += coef * x[j];
                g[f] += coef;
            }
        }
        if (!std::isfinite(loss * inv_n)) throw std::runtime_error("local_train: loss diverged");
        for (std::size_t i = 0; i < m.w.size(); ++i) m.w[i] -= lr * inv_n * grad[i];
    }
    return m;
}

static int predict(const ToyModel& m, const double* x) {
    const int stride = m.features + 1;
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < m.classes; ++c) {
        const double* row = &m.w[static_cast<std::size_t>(c) * stride];
        double score = row[m.features];
        for (int j = 0; j < m.features; ++j) score += row[j] * x[j];
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

double evaluate(const ToyModel& model, const FlDataset& data) {
    if (model.features != data.features || model.classes != data.classes)
        throw std::invalid_argument("evaluate: model does not match dataset");
    int hits = 0;
    for (int i = 0; i < data.test_count(); ++i) {
        if (predict(model, &data.test_x[static_cast<std::size_t>(i) * data.features]) ==
            data.test_y[i])
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.test_count());
}

std::vector<std::vector<int>> make_shards(int train_count, int devices, std::uint64_t seed) {
    if (devices < 1 || train_count < devices)
        throw std::invalid_argument("make_shards: need at least one sample per device");
    std::vector<int> order(train_count);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (int i = train_count - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<std::vector<int>> shards(devices);
    const int base = train_count / devices;
    const int extra = train_count % devices;
    int pos = 0;
    for (int d = 0; d < devices; ++d) {
        const int take = base + (d < extra ? 1 : 0);
        shards[d].assign(order.begin() + pos, order.begin() + pos + take);
        pos += take;
    }
    return shards;
}

FlRoundResult fl_round(const ToyModel& global, const FlDataset& data,
                       const std::vector<std::vector<int>>& shards, const FlConfig& cfg,
                       int round_index, int threads) {
    cfg.validate();
    if (static_cast<int>(shards.size()) != cfg.devices)
        throw std::invalid_argument("fl_round: one shard per device required");
    const int dim = global.dim();
    const double sigma2 = cfg.noiseless ? 0.0 : snr_to_sigma2(cfg.snr_db);

    std::vector<ToyModel> locals(cfg.devices);
    parallel_for(static_cast<std::size_t>(cfg.devices), threads, [&](std::size_t i) {
        locals[i] = local_train(global, data, shards[i], cfg.local_epochs, cfg.learning_rate);
    });

    // One quantized bin per device and parameter.
    std::vector<int> q(static_cast<std::size_t>(cfg.devices) * dim);
    for (int dev = 0; dev < cfg.devices; ++dev) {
        for (int d = 0; d < dim; ++d) {
            q[static_cast<std::size_t>(dev) * dim + d] =
                quantize(locals[dev].w[d], -cfg.clip, cfg.clip, cfg.bins);
        }
    }

    AttackSpec attack;
    attack.attackers = cfg.attackers;
    attack.strategy = AttackStrategy::MaxDisplace;

    FlRoundResult out;
    out.model = global;
    out.resources_used = static_cast<long>(dim) * cfg.bins;
    std::vector<double> estimate(dim);
    parallel_for(static_cast<std::size_t>(dim), threads, [&](std::size_t d) {
        MeasurementVector col(cfg.devices);
        for (int dev = 0; dev < cfg.devices; ++dev)
            col[dev] = q[static_cast<std::size_t>(dev) * dim + d];
        Rng rng(SeedChain()
                    .mix(cfg.master_seed)
                    .mix("fl-round")
                    .mix(round_index)
                    .mix("param")
                    .mix(static_cast<int>(d))
                    .value());
        double est_bin = 0.0;
        if (cfg.method == Method::Da) {
            est_bin = da_aggregate(col, cfg.bins, AggregationFn::ArithmeticMean, attack, sigma2, rng);
        } else {
            NoisyType type;
            if (cfg.fidelity == Fidelity::Symbol) {
                type = corrupt_type(form_type_symbol(col, cfg.bins, sigma2, rng), attack,
                                    compute_stats(col));
            } else {
                const ChannelGains gains =
                    draw_gains(cfg.devices, cfg.bins, ChannelModel::Identity, rng);
                type = form_type_waveform(col, gains, cfg.bins, cfg.waveform_samples, sigma2,
                                          cfg.scheme, attack, rng);
            }
            const double floor = cfg.robust.effective_theta1(sigma2, type.k);
            if (cfg.method == Method::TbmaRobust) {
                const CorrectedType corrected = robust_correct(type, cfg.robust, sigma2);
                est_bin = psi(corrected.r_hat, AggregationFn::ArithmeticMean, floor);
            } else {
                est_bin = psi(type.r, AggregationFn::ArithmeticMean, floor);
            }
        }
        estimate[d] = est_bin;
    });
    for (int d = 0; d < dim; ++d)
        out.model.w[d] = dequantize_real(estimate[d], -cfg.clip, cfg.clip, cfg.bins);
    return out;
}

FlRunResult run_fl(const FlConfig& cfg, int threads) {
    cfg.validate();
    const FlDataset data =
        make_blobs_dataset(SeedChain().mix(cfg.master_seed).mix("fl-dataset").value());
    const auto shards = make_shards(data.train_count(), cfg.devices,
                                    SeedChain().mix(cfg.master_seed).mix("fl-shards").value());
    ToyModel model = make_model(data.features, data.classes);

    FlRunResult res;
    res.resources_per_round = static_cast<long>(model.dim()) * cfg.bins;
    res.accuracy.reserve(cfg.rounds);
    for (int round = 1; round <= cfg.rounds; ++round) {
        FlRoundResult rr = fl_round(model, data, shards, cfg, round, threads);
        model = std::move(rr.model);
        res.accuracy.push_back(evaluate(model, data));
    }
    return res;
}

std::string fl_csv(const FlConfig& cfg, const FlRunResult& result) {
    std::ostringstream out;
    out << "# airtype federated demo\n";
    out << "# devices=" << cfg.devices << "\n";
    out << "# attackers=" << cfg.attackers << "\n";
    out << "# rounds=" << cfg.rounds << "\n";
    out << "# local_epochs=" << cfg.local_epochs << "\n";
    out << "# learning_rate=" << format_double(cfg.learning_rate) << "\n";
    out << "# clip=" << format_double(cfg.clip) << "\n";
    out << "# bins=" << cfg.bins << "\n";
    out << "# snr_db=" << (cfg.noiseless ? "none" : format_double(cfg.snr_db)) << "\n";
    out << "# method=" << method_name(cfg.method) << "\n";
    out << "# fidelity=" << fidelity_name(cfg.fidelity) << "\n";
    out << "# scheme=" << scheme_name(cfg.scheme) << "\n";
    out << "# theta1=" << theta1_name(cfg.robust) << "\n";
    out << "# theta2_counts=" << format_double(cfg.robust.theta2_counts) << "\n";
    out << "# p_lo=" << format_double(cfg.robust.p_lo) << "\n";
    out << "# p_hi=" << format_double(cfg.robust.p_hi) << "\n";
    out << "# master_seed=" << cfg.master_seed << "\n";
    out << "# dataset=blobs:features=" << kFeatures << ":classes=" << kClasses
        << ":train=" << kTrain << ":test=" << kTest << "\n";
    out << "# quantization_range=[-" << format_double(cfg.clip) << "," << format_double(cfg.clip)
        << "]\n";
    out << "# resources_per_round=" << result.resources_per_round << "\n";
    out << "round,method,accuracy\n";
    for (std::size_t i = 0; i < result.accuracy.size(); ++i) {
        out << (i + 1) << ',' << method_name(cfg.method) << ','
            << format_double(result.accuracy[i]) << "\n";
    }
    return out.str();
}

}  // namespace airtype
