#include "airtype/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "airtype/da.hpp"
#include "airtype/parallel.hpp"
#include "airtype/tbma.hpp"

namespace airtype {

void ExperimentConfig::validate() const {
    if (k < 1) throw ConfigError("config: k must be >= 1");
    if (l < 2) throw ConfigError("config: l must be >= 2");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    if (methods.empty()) throw ConfigError("config: no methods selected");
    if (snr_db_list.empty()) throw ConfigError("config: empty snr list");
    if (attacker_ratio_list.empty()) throw ConfigError("config: empty attacker ratio list");
    for (double v : snr_db_list) {
        if (!std::isfinite(v)) throw ConfigError("config: non-finite snr");
    }
    for (double v : attacker_ratio_list) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("config: attacker ratio must be >= 0");
    }
    if (fidelity == Fidelity::Waveform) {
        if (n < l) throw ConfigError("config: n must be >= l for waveform runs");
        if (scheme == Scheme::Ppm && n % l != 0)
            throw ConfigError("config: PPM needs n divisible by l");
    }
    for (Method m : methods) {
        if (m == Method::Da && fn != AggregationFn::ArithmeticMean &&
            fn != AggregationFn::GeometricMean)
            throw ConfigError("config: da supports arithmetic-mean and geometric-mean only");
    }
    switch (data_law.kind) {
        case DataLaw::Kind::GaussianBins:
            if (!(data_law.b >= 0.0) || !std::isfinite(data_law.a) || !std::isfinite(data_law.b))
                throw ConfigError("config: gaussian law needs finite mean and std >= 0");
            break;
        case DataLaw::Kind::UniformBins:
            if (!(data_law.a <= data_law.b) || !std::isfinite(data_law.a) ||
                !std::isfinite(data_law.b))
                throw ConfigError("config: uniform law needs lo <= hi");
            break;
        case DataLaw::Kind::Dirac:
            if (!std::isfinite(data_law.a)) throw ConfigError("config: dirac law needs a finite value");
            break;
    }
    try {
        robust.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

MeasurementVector draw_data(const DataLaw& law, int k, int l, Rng& rng) {
    if (k < 1 || l < 2) throw std::invalid_argument("draw_data: bad k or l");
    MeasurementVector s(k);
    auto to_bin = [l](double x) {
        const long b = std::lround(x);
        return static_cast<int>(std::clamp(b, 1l, static_cast<long>(l)));
    };
    switch (law.kind) {
        case DataLaw::Kind::GaussianBins:
            for (int i = 0; i < k; ++i) s[i] = to_bin(law.a + law.b * rng.normal());
            break;
        case DataLaw::Kind::UniformBins:
            for (int i = 0; i < k; ++i) s[i] = to_bin(law.a + (law.b - law.a) * rng.uniform());
            break;
        case DataLaw::Kind::Dirac:
            for (int i = 0; i < k; ++i) s[i] = to_bin(law.a);
            break;
    }
    return s;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, Method method, double snr_db,
                                double attacker_ratio, int trial_index) {
    return SeedChain()
        .mix(master_seed)
        .mix(method_name(method))
        .mix(snr_db)
        .mix(attacker_ratio)
        .mix(trial_index)
        .value();
}

double run_trial(const ExperimentConfig& cfg, Method method, double snr_db,
                 double attacker_ratio, int trial_index) {
    Rng rng(derive_trial_seed(cfg.master_seed, method, snr_db, attacker_ratio, trial_index));
    const MeasurementVector s = draw_data(cfg.data_law, cfg.k, cfg.l, rng);
    const DataStats stats = compute_stats(s);
    const double sigma2 = snr_to_sigma2(snr_db);

    AttackSpec attack;
    attack.attackers = static_cast<int>(std::llround(attacker_ratio * cfg.k));
    attack.strategy = AttackStrategy::MaxDisplace;

    const double truth = oracle(s, cfg.fn);
    double estimate = 0.0;
    if (method == Method::Da) {
        estimate = da_aggregate(s, cfg.l, cfg.fn, attack, sigma2, rng);
    } else {
        NoisyType type;
        if (cfg.fidelity == Fidelity::Symbol) {
            type = corrupt_type(form_type_symbol(s, cfg.l, sigma2, rng), attack, stats);
        } else {
            const ChannelGains gains = draw_gains(cfg.k, cfg.l, cfg.channel, rng);
            type = form_type_waveform(s, gains, cfg.l, cfg.n, sigma2, cfg.scheme, attack, rng);
        }
        const double floor = cfg.robust.effective_theta1(sigma2, type.k);
        switch (method) {
            case Method::TbmaPlain:
                estimate = psi(type.r, cfg.fn, floor);
                break;
            case Method::TbmaMedian:
                estimate = static_cast<double>(median_from_type(type.r));
                break;
            case Method::TbmaRobust: {
                const CorrectedType corrected = robust_correct(type, cfg.robust, sigma2);
                estimate = psi(corrected.r_hat, cfg.fn, floor);
                break;
            }
            case Method::Da:
                break;  // handled above
        }
    }
    return nmse(truth, estimate);
}

std::vector<ResultRecord> run_sweep(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    struct Cell {
        Method method;
        double snr_db;
        double ratio;
    };
    std::vector<Cell> cells;
    for (Method m : cfg.methods) {
        for (double snr : cfg.snr_db_list) {
            for (double ratio : cfg.attacker_ratio_list) cells.push_back({m, snr, ratio});
        }
    }

    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    std::vector<double> samples(cells.size() * trials);
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        const Cell& c = cells[i / trials];
        samples[i] = run_trial(cfg, c.method, c.snr_db, c.ratio, static_cast<int>(i % trials));
    });

    // Reduce in trial order so the mean does not depend on scheduling.
    std::vector<ResultRecord> records;
    records.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const double* x = samples.data() + c * trials;
        double sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) sum += x[t];
        const double mean = sum / static_cast<double>(trials);
        double var = 0.0;
        if (trials > 1) {
            for (std::size_t t = 0; t < trials; ++t) var += (x[t] - mean) * (x[t] - mean);
            var /= static_cast<double>(trials - 1);
        }
        records.push_back({cells[c].method, cfg.fn, cells[c].snr_db, cells[c].ratio, cfg.trials,
                           mean, std::sqrt(var / static_cast<double>(trials))});
    }
    return records;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T, typename F>
static std::string join(const std::vector<T>& v, F f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += f(v[i]);
    }
    return out;
}

std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<ResultRecord>& records) {
    std::ostringstream out;
    out << "# airtype nmse sweep\n";
    out << "# k=" << cfg.k << "\n";
    out << "# l=" << cfg.l << "\n";
    out << "# n=" << cfg.n << "\n";
    out << "# scheme=" << scheme_name(cfg.scheme) << "\n";
    out << "# channel=" << channel_name(cfg.channel) << "\n";
    out << "# fidelity=" << fidelity_name(cfg.fidelity) << "\n";
    out << "# fn=" << fn_name(cfg.fn) << "\n";
    out << "# methods=" << join(cfg.methods, method_name) << "\n";
    out << "# snr_db=" << join(cfg.snr_db_list, format_double) << "\n";
    out << "# attacker_ratio=" << join(cfg.attacker_ratio_list, format_double) << "\n";
    out << "# trials=" << cfg.trials << "\n";
    out << "# data_law=" << data_law_name(cfg.data_law) << "\n";
    out << "# theta1=" << theta1_name(cfg.robust) << "\n";
    out << "# theta2_counts=" << format_double(cfg.robust.theta2_counts) << "\n";
    out << "# p_lo=" << format_double(cfg.robust.p_lo) << "\n";
    out << "# p_hi=" << format_double(cfg.robust.p_hi) << "\n";
    out << "# master_seed=" << cfg.master_seed << "\n";
    out << "# snr_convention=sigma2_equals_10^(-snr_db/10)_per_unit_device_power\n";
    out << "# attacker_convention=ratio_times_k_extra_devices_normalization_still_1_over_k\n";
    out << "# resource_indexing=1_based\n";
    out << "method,fn,snr_db,attacker_ratio,trials,mean_nmse,stderr_nmse\n";
    for (const ResultRecord& r : records) {
        out << method_name(r.method) << ',' << fn_name(r.fn) << ',' << format_double(r.snr_db)
            << ',' << format_double(r.attacker_ratio) << ',' << r.trials << ','
            << format_double(r.mean_nmse) << ',' << format_double(r.stderr_nmse) << "\n";
    }
    return out.str();
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Da: return "da";
        case Method::TbmaPlain: return "tbma-plain";
        case Method::TbmaMedian: return "tbma-median";
        case Method::TbmaRobust: return "tbma-robust";
    }
    throw std::logic_error("method_name: bad method");
}

std::string fn_name(AggregationFn fn) {
    switch (fn) {
        case AggregationFn::ArithmeticMean: return "arithmetic-mean";
        case AggregationFn::GeometricMean: return "geometric-mean";
        case AggregationFn::Min: return "min";
        case AggregationFn::Max: return "max";
        case AggregationFn::Median: return "median";
    }
    throw std::logic_error("fn_name: bad fn");
}

std::string scheme_name(Scheme s) { return s == Scheme::Fsk ? "fsk" : "ppm"; }

std::string channel_name(ChannelModel c) {
    return c == ChannelModel::Identity ? "identity" : "rayleigh-flat";
}

std::string fidelity_name(Fidelity f) { return f == Fidelity::Symbol ? "symbol" : "waveform"; }

std::string data_law_name(const DataLaw& law) {
    switch (law.kind) {
        case DataLaw::Kind::GaussianBins:
            return "gaussian:" + format_double(law.a) + ":" + format_double(law.b);
        case DataLaw::Kind::UniformBins:
            return "uniform:" + format_double(law.a) + ":" + format_double(law.b);
        case DataLaw::Kind::Dirac:
            return "dirac:" + format_double(law.a);
    }
    throw std::logic_error("data_law_name: bad law");
}

Method parse_method(const std::string& name) {
    if (name == "da") return Method::Da;
    if (name == "tbma-plain") return Method::TbmaPlain;
    if (name == "tbma-median") return Method::TbmaMedian;
    if (name == "tbma-robust") return Method::TbmaRobust;
    throw ConfigError("unknown method: " + name);
}

AggregationFn parse_fn(const std::string& name) {
    if (name == "arithmetic-mean") return AggregationFn::ArithmeticMean;
    if (name == "geometric-mean") return AggregationFn::GeometricMean;
    if (name == "min") return AggregationFn::Min;
    if (name == "max") return AggregationFn::Max;
    if (name == "median") return AggregationFn::Median;
    throw ConfigError("unknown aggregation function: " + name);
}

Scheme parse_scheme(const std::string& name) {
    if (name == "fsk") return Scheme::Fsk;
    if (name == "ppm") return Scheme::Ppm;
    throw ConfigError("unknown scheme: " + name);
}

ChannelModel parse_channel(const std::string& name) {
    if (name == "identity") return ChannelModel::Identity;
    if (name == "rayleigh-flat") return ChannelModel::RayleighFlat;
    throw ConfigError("unknown channel model: " + name);
}

Fidelity parse_fidelity(const std::string& name) {
    if (name == "symbol") return Fidelity::Symbol;
    if (name == "waveform") return Fidelity::Waveform;
    throw ConfigError("unknown fidelity: " + name);
}

static std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

static double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad number in ") + what + ": " + text);
    }
}

DataLaw parse_data_law(const std::string& text) {
    const auto parts = split(text, ':');
    DataLaw law;
    if (parts[0] == "gaussian" && parts.size() == 3) {
        law.kind = DataLaw::Kind::GaussianBins;
        law.a = parse_number(parts[1], "data law");
        law.b = parse_number(parts[2], "data law");
        return law;
    }
    if (parts[0] == "uniform" && parts.size() == 3) {
        law.kind = DataLaw::Kind::UniformBins;
        law.a = parse_number(parts[1], "data law");
        law.b = parse_number(parts[2], "data law");
        return law;
    }
    if (parts[0] == "dirac" && parts.size() == 2) {
        law.kind = DataLaw::Kind::Dirac;
        law.a = parse_number(parts[1], "data law");
        law.b = 0.0;
        return law;
    }
    throw ConfigError("bad data law (want gaussian:m:s, uniform:a:b, or dirac:c): " + text);
}

void parse_theta1(const std::string& text, RobustParams& params) {
    const auto parts = split(text, ':');
    if (parts[0] == "auto" && parts.size() <= 2) {
        params.theta1_mode = Theta1Mode::TypeNoiseStd;
        params.theta1_scale = parts.size() == 2 ? parse_number(parts[1], "theta1") : 3.0;
        return;
    }
    if (parts[0] == "power" && parts.size() <= 2) {
        params.theta1_mode = Theta1Mode::NoisePower;
        params.theta1_scale = parts.size() == 2 ? parse_number(parts[1], "theta1") : 3.0;
        return;
    }
    if (parts[0] == "fixed" && parts.size() == 2) {
        params.theta1_mode = Theta1Mode::Fixed;
        params.theta1_value = parse_number(parts[1], "theta1");
        return;
    }
    if (parts.size() == 1) {
        params.theta1_mode = Theta1Mode::Fixed;
        params.theta1_value = parse_number(parts[0], "theta1");
        return;
    }
    throw ConfigError("bad theta1 (want auto[:scale], power[:scale], fixed:value): " + text);
}

std::string theta1_name(const RobustParams& params) {
    switch (params.theta1_mode) {
        case Theta1Mode::TypeNoiseStd: return "auto:" + format_double(params.theta1_scale);
        case Theta1Mode::NoisePower: return "power:" + format_double(params.theta1_scale);
        case Theta1Mode::Fixed: return "fixed:" + format_double(params.theta1_value);
    }
    throw std::logic_error("theta1_name: bad mode");
}

}  // namespace airtype
