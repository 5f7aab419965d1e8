#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "airtype/aggregate.hpp"
#include "airtype/channel.hpp"
#include "airtype/model.hpp"
#include "airtype/robust.hpp"

namespace airtype {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { Da, TbmaPlain, TbmaMedian, TbmaRobust };

// Symbol works on exact per-bin statistics; Waveform synthesizes every
// transmission, mixes channel gains and AWGN on air, and matched-filters.
enum class Fidelity { Symbol, Waveform };

struct DataLaw {
    enum class Kind { GaussianBins, UniformBins, Dirac } kind = Kind::GaussianBins;
    // GaussianBins: a = mean, b = std. UniformBins: a = lo, b = hi.
    // Dirac: a = the constant. All in bin units; draws round to the
    // nearest bin and clip to [1, L].
    double a = 32.0;
    double b = 8.0;
};

struct ExperimentConfig {
    int k = 1000;
    int l = 64;
    int n = 64;
    Scheme scheme = Scheme::Fsk;
    ChannelModel channel = ChannelModel::Identity;
    Fidelity fidelity = Fidelity::Symbol;
    AggregationFn fn = AggregationFn::ArithmeticMean;
    std::vector<Method> methods = {Method::Da, Method::TbmaMedian, Method::TbmaRobust};
    std::vector<double> snr_db_list = {30.0, 5.0};
    std::vector<double> attacker_ratio_list = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    int trials = 200;
    DataLaw data_law;
    RobustParams robust;
    std::uint64_t master_seed = 12345;

    void validate() const;  // throws ConfigError
};

struct ResultRecord {
    Method method;
    AggregationFn fn;
    double snr_db;
    double attacker_ratio;
    int trials;
    double mean_nmse;
    double stderr_nmse;
};

MeasurementVector draw_data(const DataLaw& law, int k, int l, Rng& rng);

// Every trial owns a private stream derived from the cell coordinates, so
// a result depends only on (master_seed, method, snr, ratio, trial).
std::uint64_t derive_trial_seed(std::uint64_t master_seed, Method method, double snr_db,
                                double attacker_ratio, int trial_index);

double run_trial(const ExperimentConfig& cfg, Method method, double snr_db,
                 double attacker_ratio, int trial_index);

// Full grid in configuration order (method-major, then SNR, then ratio).
// Trials run across `threads` workers into per-trial slots and reduce in
// trial order, so the records match a single-threaded run exactly.
std::vector<ResultRecord> run_sweep(const ExperimentConfig& cfg, int threads = 1);

// CSV with `# key=value` metadata lines (config, seed, conventions), then
// the header `method,fn,snr_db,attacker_ratio,trials,mean_nmse,stderr_nmse`
// and one row per record at full precision.
std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<ResultRecord>& records);

// Name <-> enum helpers shared by the CLI, the CSV writer, and seeding.
// Parsers throw ConfigError on unknown names.
std::string method_name(Method m);
std::string fn_name(AggregationFn fn);
std::string scheme_name(Scheme s);
std::string channel_name(ChannelModel c);
std::string fidelity_name(Fidelity f);
std::string data_law_name(const DataLaw& law);
Method parse_method(const std::string& name);
AggregationFn parse_fn(const std::string& name);
Scheme parse_scheme(const std::string& name);
ChannelModel parse_channel(const std::string& name);
Fidelity parse_fidelity(const std::string& name);
DataLaw parse_data_law(const std::string& text);
// theta1 spec: "auto[:scale]", "power[:scale]", or "fixed:<value>".
void parse_theta1(const std::string& text, RobustParams& params);
std::string theta1_name(const RobustParams& params);

std::string format_double(double v);  // shortest round-trippable decimal

}  // namespace airtype
