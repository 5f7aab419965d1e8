#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "airtype/da.hpp"
#include "airtype/experiment.hpp"
#include "airtype/fl.hpp"
#include "airtype/tbma.hpp"

using namespace airtype;

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad number in ") + what + ": " + text);
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

struct SweepArgs {
    ExperimentConfig cfg;
    std::string methods = "da,tbma-median,tbma-robust";
    std::string snr = "30,5";
    std::string ratios = "0,0.1,0.2,0.3,0.4,0.5";
    std::string fn = "arithmetic-mean";
    std::string scheme = "fsk";
    std::string channel = "identity";
    std::string fidelity = "symbol";
    std::string data_law = "gaussian:32:8";
    std::string theta1 = "auto";
    std::string out;
    int threads = 1;
};

void run_sweep_command(SweepArgs& a) {
    a.cfg.fn = parse_fn(a.fn);
    a.cfg.scheme = parse_scheme(a.scheme);
    a.cfg.channel = parse_channel(a.channel);
    a.cfg.fidelity = parse_fidelity(a.fidelity);
    a.cfg.data_law = parse_data_law(a.data_law);
    parse_theta1(a.theta1, a.cfg.robust);
    a.cfg.methods.clear();
    for (const auto& m : split_list(a.methods)) a.cfg.methods.push_back(parse_method(m));
    a.cfg.snr_db_list.clear();
    for (const auto& s : split_list(a.snr)) a.cfg.snr_db_list.push_back(parse_double(s, "snr"));
    a.cfg.attacker_ratio_list.clear();
    for (const auto& r : split_list(a.ratios))
        a.cfg.attacker_ratio_list.push_back(parse_double(r, "ratios"));
    a.cfg.validate();
    const auto records = run_sweep(a.cfg, a.threads);
    write_output(a.out, sweep_csv(a.cfg, records));
}

struct TypeDemoArgs {
    int k = 100;
    int l = 32;
    int attackers = 20;
    double snr_db = 20.0;
    std::uint64_t seed = 1;
    std::string data_law;  // defaults derived from l when empty
    std::string theta1 = "auto";
    double theta2 = 5.0;
    double p_lo = 0.01;
    double p_hi = 0.99;
};

void run_type_demo(TypeDemoArgs& a) {
    RobustParams params;
    parse_theta1(a.theta1, params);
    params.theta2_counts = a.theta2;
    params.p_lo = a.p_lo;
    params.p_hi = a.p_hi;
    params.validate();
    const DataLaw law = parse_data_law(
        a.data_law.empty() ? "gaussian:" + format_double(a.l / 2.0) + ":" +
                                 format_double(a.l / 8.0)
                           : a.data_law);

    Rng rng(a.seed);
    const MeasurementVector s = draw_data(law, a.k, a.l, rng);
    const DataStats stats = compute_stats(s);
    const double sigma2 = snr_to_sigma2(a.snr_db);

    AttackSpec attack;
    attack.attackers = a.attackers;
    attack.strategy = AttackStrategy::MaxDisplace;

    const NoisyType clean = form_type_symbol(s, a.l, sigma2, rng);
    const NoisyType bad = corrupt_type(clean, attack, stats);
    const CorrectedType fixed = robust_correct(bad, params, sigma2);
    const double theta1 = params.effective_theta1(sigma2, clean.k);

    std::printf("devices=%d resources=%d attackers=%d snr_db=%s sigma2=%s\n", a.k, a.l,
                a.attackers, format_double(a.snr_db).c_str(), format_double(sigma2).c_str());
    std::printf("data_law=%s target=%d theta1=%s theta2_counts=%s window=[%s,%s]\n",
                data_law_name(law).c_str(), resolve_target(attack, stats, a.l),
                format_double(theta1).c_str(), format_double(params.theta2_counts).c_str(),
                format_double(params.p_lo).c_str(), format_double(params.p_hi).c_str());
    std::printf("%8s  %12s  %12s  %12s\n", "resource", "clean", "attacked", "corrected");
    for (int b = 0; b < a.l; ++b) {
        std::printf("%8d  %12.6f  %12.6f  %12.6f\n", b + 1, clean.r[b], bad.r[b],
                    fixed.r_hat[b]);
    }
    const double truth = oracle(s, AggregationFn::ArithmeticMean);
    std::printf("true_mean=%s\n", format_double(truth).c_str());
    std::printf("plain_mean=%s\n", format_double(psi(bad.r, AggregationFn::ArithmeticMean,
                                                     theta1))
                                       .c_str());
    std::printf("median_estimate=%d\n", median_from_type(bad.r));
    std::printf("corrected_mean=%s\n",
                format_double(psi(fixed.r_hat, AggregationFn::ArithmeticMean, theta1)).c_str());
}

struct FlArgs {
    FlConfig cfg;
    std::string method = "tbma-robust";
    std::string fidelity = "symbol";
    std::string scheme = "fsk";
    std::string theta1;
    double theta2 = -1.0;
    double p_lo = -1.0;
    double p_hi = -1.0;
    std::string out;
    int threads = 1;
};

void run_fl_command(FlArgs& a) {
    a.cfg.method = parse_method(a.method);
    a.cfg.fidelity = parse_fidelity(a.fidelity);
    a.cfg.scheme = parse_scheme(a.scheme);
    a.cfg.robust = fl_robust_defaults(a.cfg.devices, a.cfg.attackers);
    if (!a.theta1.empty()) parse_theta1(a.theta1, a.cfg.robust);
    if (a.theta2 >= 0.0) a.cfg.robust.theta2_counts = a.theta2;
    if (a.p_lo >= 0.0) a.cfg.robust.p_lo = a.p_lo;
    if (a.p_hi >= 0.0) a.cfg.robust.p_hi = a.p_hi;
    a.cfg.validate();
    const FlRunResult res = run_fl(a.cfg, a.threads);
    write_output(a.out, fl_csv(a.cfg, res));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"over-the-air histogram aggregation simulator"};
    app.require_subcommand(1);

    SweepArgs sweep;
    CLI::App* sc = app.add_subcommand("nmse-sweep", "NMSE grid over SNR and attacker ratio");
    sc->add_option("--k", sweep.cfg.k, "legitimate devices");
    sc->add_option("--l", sweep.cfg.l, "orthogonal resources");
    sc->add_option("--n", sweep.cfg.n, "waveform samples");
    sc->add_option("--scheme", sweep.scheme, "fsk or ppm");
    sc->add_option("--channel", sweep.channel, "identity or rayleigh-flat");
    sc->add_option("--fidelity", sweep.fidelity, "symbol or waveform");
    sc->add_option("--fn", sweep.fn, "aggregation function");
    sc->add_option("--methods", sweep.methods, "comma list of methods");
    sc->add_option("--snr-db", sweep.snr, "comma list of SNR points");
    sc->add_option("--ratios", sweep.ratios, "comma list of attacker ratios");
    sc->add_option("--trials", sweep.cfg.trials, "Monte Carlo trials per cell");
    sc->add_option("--data-law", sweep.data_law, "gaussian:m:s, uniform:a:b, or dirac:c");
    sc->add_option("--seed", sweep.cfg.master_seed, "master seed");
    sc->add_option("--theta1", sweep.theta1, "auto[:scale], power[:scale], or fixed:value");
    sc->add_option("--theta2", sweep.cfg.robust.theta2_counts, "neighbor threshold in counts");
    sc->add_option("--p-lo", sweep.cfg.robust.p_lo, "lower percentile");
    sc->add_option("--p-hi", sweep.cfg.robust.p_hi, "upper percentile");
    sc->add_option("--threads", sweep.threads, "worker threads");
    sc->add_option("--out", sweep.out, "output CSV path (default stdout)");

    TypeDemoArgs demo;
    CLI::App* dc = app.add_subcommand("type-demo", "print one corrupted histogram correction");
    dc->add_option("--k", demo.k, "legitimate devices");
    dc->add_option("--l", demo.l, "orthogonal resources");
    dc->add_option("--attackers", demo.attackers, "attacker count");
    dc->add_option("--snr-db", demo.snr_db, "SNR in dB");
    dc->add_option("--seed", demo.seed, "seed");
    dc->add_option("--data-law", demo.data_law, "data law (default gaussian over the range)");
    dc->add_option("--theta1", demo.theta1, "auto[:scale], power[:scale], or fixed:value");
    dc->add_option("--theta2", demo.theta2, "neighbor threshold in counts");
    dc->add_option("--p-lo", demo.p_lo, "lower percentile");
    dc->add_option("--p-hi", demo.p_hi, "upper percentile");

    FlArgs fl;
    CLI::App* fc = app.add_subcommand("fl-demo", "federated averaging over typed uplinks");
    fc->add_option("--devices", fl.cfg.devices, "devices");
    fc->add_option("--attackers", fl.cfg.attackers, "attacker count");
    fc->add_option("--rounds", fl.cfg.rounds, "aggregation rounds");
    fc->add_option("--epochs", fl.cfg.local_epochs, "local epochs per round");
    fc->add_option("--lr", fl.cfg.learning_rate, "local learning rate");
    fc->add_option("--clip", fl.cfg.clip, "quantization half-range");
    fc->add_option("--bins", fl.cfg.bins, "resources per parameter");
    fc->add_option("--snr-db", fl.cfg.snr_db, "SNR in dB");
    fc->add_flag("--noiseless", fl.cfg.noiseless, "disable channel noise");
    fc->add_option("--method", fl.method, "da, tbma-plain, or tbma-robust");
    fc->add_option("--fidelity", fl.fidelity, "symbol or waveform");
    fc->add_option("--scheme", fl.scheme, "fsk or ppm");
    fc->add_option("--samples", fl.cfg.waveform_samples, "waveform samples per symbol");
    fc->add_option("--theta1", fl.theta1, "override the mass threshold");
    fc->add_option("--theta2", fl.theta2, "override the neighbor threshold");
    fc->add_option("--p-lo", fl.p_lo, "override the lower percentile");
    fc->add_option("--p-hi", fl.p_hi, "override the upper percentile");
    fc->add_option("--seed", fl.cfg.master_seed, "master seed");
    fc->add_option("--threads", fl.threads, "worker threads");
    fc->add_option("--out", fl.out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
        if (sc->parsed()) run_sweep_command(sweep);
        if (dc->parsed()) run_type_demo(demo);
        if (fc->parsed()) run_fl_command(fl);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
