// Command-line surface: simulate | binarize | partition | select | predict |
// loocv | study | posterior-alpha. Every parameter can come from a flat
// key=value config file (--config); explicit flags win.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selnb/datagen.hpp"
#include "selnb/harness.hpp"
#include "selnb/io.hpp"
#include "selnb/model.hpp"
#include "selnb/rng.hpp"
#include "selnb/selection.hpp"

namespace {

using namespace selnb;

struct CommonOpts {
    std::string prior = "1,1,0.5,5";
    int alpha_nodes = 30;
    int theta_nodes = 21;
    std::uint64_t seed = 0;
    std::string corrected = "both";
    bool serial = false;
    int threads = 0;
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_corrected) {
    cmd->add_option("--prior", c.prior,
                    "class pseudo-counts and concentration prior: f0,f1,a,b");
    cmd->add_option("--alpha-nodes", c.alpha_nodes, "alpha quadrature nodes (K)");
    cmd->add_option("--theta-nodes", c.theta_nodes, "theta Simpson nodes (M, odd)");
    cmd->add_option("--seed", c.seed, "random seed");
    if (with_corrected)
        cmd->add_option("--corrected", c.corrected, "which methods to run")
            ->check(CLI::IsMember({"both", "on", "off"}));
    cmd->add_flag("--serial", c.serial, "force serial execution");
    cmd->add_option("--threads", c.threads, "thread count (0 = default)");
    cmd->add_option("--config", c.config, "flat key=value config file; flags win");
}

// Reads a flat key=value config file and returns synthesized --key=value
// tokens for every key the command line did not set, so the values flow
// through the same option parsing and validation as explicit flags (and
// explicit flags win). Later duplicates of a key override earlier ones.
std::vector<std::string> config_tokens(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    const auto strip = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::string> order;          // first-appearance order of keys
    std::map<std::string, std::string> kv;   // last value wins
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        if (kv.find(key) == kv.end()) order.push_back(key);
        kv[key] = value;
    }
    std::vector<std::string> tokens;
    for (const std::string& key : order) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::runtime_error(path + ": unknown key '" + key + "' for subcommand '" +
                                     sub->get_name() + "'");
        if (opt->count() > 0) continue;  // the explicit flag wins
        tokens.push_back("--" + key + "=" + kv[key]);
    }
    return tokens;
}

void require_path(const std::string& v, const char* flag) {
    if (v.empty())
        throw std::runtime_error(std::string("give ") + flag +
                                 " (on the command line or in the config file)");
}

PriorConfig parse_prior(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    std::vector<double> v;
    while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 4)
        throw std::invalid_argument("--prior expects four comma-separated values: f0,f1,a,b");
    PriorConfig p{v[0], v[1], v[2], v[3]};
    p.validate();
    return p;
}

ExperimentConfig make_config(const CommonOpts& c) {
    ExperimentConfig cfg;
    cfg.prior = parse_prior(c.prior);
    cfg.quad.K = c.alpha_nodes;
    cfg.quad.M = c.theta_nodes;
    cfg.seed = c.seed;
    cfg.exec = c.serial ? Exec::serial() : Exec::parallel(c.threads);
    cfg.corrected = c.corrected == "both" ? CorrectedMode::both
                    : c.corrected == "on" ? CorrectedMode::on
                                          : CorrectedMode::off;
    return cfg;
}

SelectionResult select_for(const BinaryDataset& ds, long k, double gamma, bool have_k,
                           bool have_gamma, std::uint64_t seed, const Exec& ex) {
    if (have_k == have_gamma)
        throw std::invalid_argument("give exactly one of --k and --gamma");
    if (have_k) return select_top_k(ds, k, derive_seed(seed, 0x5e1ec7u), ex);
    return select_by_threshold(ds, gamma, ex);
}

int run_simulate(const CommonOpts& c, double alpha_true, long p, long n_train, long n_test,
                 bool unbalanced, const std::string& train_out, const std::string& test_out,
                 const std::string& latent_out) {
    SyntheticSpec spec;
    spec.alpha_true = alpha_true;
    spec.p = p;
    spec.n_train = n_train;
    spec.n_test = n_test;
    spec.balanced = !unbalanced;
    spec.seed = c.seed;
    const Exec ex = c.serial ? Exec::serial() : Exec::parallel(c.threads);
    const SimulatedData sim = simulate(spec, ex);
    write_binary_dataset(sim.train, train_out);
    write_binary_dataset(sim.test, test_out);
    if (!latent_out.empty()) {
        std::ofstream out(latent_out);
        if (!out) throw std::runtime_error("cannot write file: " + latent_out);
        out.precision(17);
        out << "feature\ttheta\tphi0\tphi1\n";
        for (long j = 0; j < spec.p; ++j)
            out << sim.train.feature_ids[j] << '\t' << sim.theta[j] << '\t' << sim.phi0[j]
                << '\t' << sim.phi1[j] << '\n';
    }
    std::cout << "wrote " << train_out << " (" << sim.train.n << "x" << sim.train.p << ") and "
              << test_out << " (" << sim.test.n << "x" << sim.test.p << ")\n";
    return 0;
}

int run_predict(const CommonOpts& c, const std::string& train_path, const std::string& test_path,
                const std::string& sel_path, long k, double gamma, bool have_k, bool have_gamma,
                const std::string& out_path) {
    const ExperimentConfig cfg = make_config(c);
    const BinaryDataset train = read_binary_dataset(train_path);
    const BinaryDataset test = read_binary_dataset(test_path);
    SelectionResult sel;
    if (!sel_path.empty())
        sel = read_selection(sel_path);
    else
        sel = select_for(train, k, gamma, have_k, have_gamma, cfg.seed, cfg.exec);
    if (test.p != train.p)
        throw std::invalid_argument("train and test feature counts differ");
    const CountsSummary summary = summarize(train, cfg.exec);
    const AlphaGrid grid = build_alpha_grid(summary, sel, cfg.prior, cfg.quad, cfg.exec);
    std::vector<double> pc(test.n, 0.0), pu(test.n, 0.0);
    parallel_for(cfg.exec, test.n, [&](std::int64_t i) {
        std::vector<std::uint8_t> bits(sel.k);
        for (long j = 0; j < sel.k; ++j) bits[j] = test.at(i, sel.retained[j]);
        if (cfg.corrected != CorrectedMode::off) pc[i] = predict(grid, bits, true).p1;
        if (cfg.corrected != CorrectedMode::on) pu[i] = predict(grid, bits, false).p1;
    });
    write_predictions(pc, pu, test.labels, true, cfg.corrected, out_path);
    std::cout << "wrote " << out_path << " (" << test.n << " cases, k=" << sel.k
              << ", gamma=" << sel.gamma << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bias-corrected Bayesian naive Bayes for binary features"};
    app.require_subcommand(1);

    // --- simulate ---
    CommonOpts sim_c;
    double sim_alpha = 300.0;
    long sim_p = 1000, sim_ntrain = 200, sim_ntest = 1000;
    bool sim_unbalanced = false;
    std::string sim_train = "train.tsv", sim_test = "test.tsv", sim_latent;
    auto* sim = app.add_subcommand("simulate", "draw a synthetic train/test pair");
    add_common(sim, sim_c, false);
    sim->add_option("--alpha-true", sim_alpha, "true concentration");
    sim->add_option("--p", sim_p, "feature count");
    sim->add_option("--n-train", sim_ntrain, "training cases");
    sim->add_option("--n-test", sim_ntest, "test cases");
    sim->add_flag("--unbalanced", sim_unbalanced, "sample labels from a random class probability");
    sim->add_option("--train-out", sim_train, "training set output path");
    sim->add_option("--test-out", sim_test, "test set output path");
    sim->add_option("--latent-out", sim_latent, "optional per-feature latent table");

    // --- binarize ---
    std::string bin_in, bin_out = "binary.tsv", bin_cfg;
    bool bin_serial = false;
    auto* bin = app.add_subcommand("binarize", "threshold each feature at its median");
    bin->add_option("--in", bin_in, "real-valued dataset");
    bin->add_option("--out", bin_out, "binary dataset output path");
    bin->add_flag("--serial", bin_serial, "force serial execution");
    bin->add_option("--config", bin_cfg, "flat key=value config file; flags win");

    // --- partition ---
    std::string part_in, part_prefix = "part", part_cfg;
    long part_groups = 10;
    std::uint64_t part_seed = 0;
    auto* part = app.add_subcommand("partition", "split features into random equal groups");
    part->add_option("--in", part_in, "binary dataset");
    part->add_option("--groups", part_groups, "number of groups");
    part->add_option("--seed", part_seed, "shuffle seed");
    part->add_option("--out-prefix", part_prefix, "output path prefix");
    part->add_option("--config", part_cfg, "flat key=value config file; flags win");

    // --- select ---
    CommonOpts sel_c;
    std::string sel_in, sel_out = "selection.json";
    long sel_k = 0;
    double sel_gamma = 0.0;
    auto* sel = app.add_subcommand("select", "screen features by |correlation|");
    add_common(sel, sel_c, false);
    sel->add_option("--in", sel_in, "binary dataset");
    auto* sel_k_opt = sel->add_option("--k", sel_k, "keep the k strongest features");
    auto* sel_g_opt = sel->add_option("--gamma", sel_gamma, "keep features with |cor| > gamma");
    sel->add_option("--out", sel_out, "selection output path");
    sel_k_opt->excludes(sel_g_opt);

    // --- predict ---
    CommonOpts pred_c;
    std::string pred_train, pred_test, pred_sel, pred_out = "predictions.tsv";
    long pred_k = 0;
    double pred_gamma = 0.0;
    auto* pred = app.add_subcommand("predict", "predictive probabilities for a test set");
    add_common(pred, pred_c, true);
    pred->add_option("--train", pred_train, "binary training set");
    pred->add_option("--test", pred_test, "binary test set");
    pred->add_option("--selection", pred_sel, "selection document from `select`");
    auto* pred_k_opt = pred->add_option("--k", pred_k, "top-k selection on the training set");
    auto* pred_g_opt = pred->add_option("--gamma", pred_gamma, "threshold selection");
    pred->add_option("--out", pred_out, "predictions output path");
    pred_k_opt->excludes(pred_g_opt);

    // --- loocv ---
    CommonOpts lo_c;
    std::string lo_in, lo_out = "loocv.json";
    long lo_k = 5;
    auto* lo = app.add_subcommand("loocv", "leave-one-out study with per-fold reselection");
    add_common(lo, lo_c, true);
    lo->add_option("--in", lo_in, "binary dataset");
    lo->add_option("--k", lo_k, "features reselected per fold");
    lo->add_option("--out", lo_out, "report output path");

    // --- study ---
    CommonOpts st_c;
    double st_alpha = 300.0;
    long st_p = 1000, st_ntrain = 200, st_ntest = 1000;
    bool st_unbalanced = false, st_all = false;
    std::vector<long> st_sizes{1, 10, 100, 1000};
    std::string st_out = "study.json";
    auto* st = app.add_subcommand("study", "synthetic calibration study over subset sizes");
    add_common(st, st_c, true);
    st->add_option("--alpha-true", st_alpha, "true concentration");
    st->add_option("--p", st_p, "feature count");
    st->add_option("--n-train", st_ntrain, "training cases");
    st->add_option("--n-test", st_ntest, "test cases");
    st->add_flag("--unbalanced", st_unbalanced, "sample labels from a random class probability");
    st->add_option("--subset-sizes", st_sizes, "selected-feature counts")->delimiter(',');
    st->add_flag("--all-features", st_all, "also run with every feature");
    st->add_option("--out", st_out, "report output path");

    // --- posterior-alpha ---
    CommonOpts pa_c;
    std::string pa_in, pa_out = "posterior_alpha.tsv";
    long pa_k = 0;
    double pa_gamma = 0.0;
    bool pa_corrected = false;
    auto* pa = app.add_subcommand("posterior-alpha", "posterior density of log(alpha)");
    add_common(pa, pa_c, false);
    pa->add_option("--in", pa_in, "binary dataset");
    auto* pa_k_opt = pa->add_option("--k", pa_k, "top-k selection (default: all features)");
    auto* pa_g_opt = pa->add_option("--gamma", pa_gamma, "threshold selection");
    pa->add_flag("--apply-correction", pa_corrected, "condition on the selection event");
    pa->add_option("--out", pa_out, "curve output path (log_alpha, density)");
    pa_k_opt->excludes(pa_g_opt);

    CLI11_PARSE(app, argc, argv);

    // Apply a config file, if one was given, by re-parsing with the file's
    // keys appended as --key=value tokens after the original arguments.
    try {
        CLI::App* active = nullptr;
        for (CLI::App* s : {sim, bin, part, sel, pred, lo, st, pa})
            if (s->parsed()) active = s;
        const CLI::Option* copt =
            active != nullptr ? active->get_option_no_throw("--config") : nullptr;
        if (copt != nullptr && copt->count() > 0) {
            const std::vector<std::string> extra =
                config_tokens(active, copt->as<std::string>());
            if (!extra.empty()) {
                std::vector<std::string> tokens;
                for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);
                tokens.insert(tokens.end(), extra.begin(), extra.end());
                std::reverse(tokens.begin(), tokens.end());  // parse() wants reversed args
                app.parse(std::move(tokens));
            }
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*sim)
            return run_simulate(sim_c, sim_alpha, sim_p, sim_ntrain, sim_ntest, sim_unbalanced,
                                sim_train, sim_test, sim_latent);
        if (*bin) {
            require_path(bin_in, "--in");
            const Exec ex = bin_serial ? Exec::serial() : Exec::parallel(0);
            const BinaryDataset ds = binarize_by_median(read_real_dataset(bin_in), ex);
            write_binary_dataset(ds, bin_out);
            std::cout << "wrote " << bin_out << " (" << ds.n << "x" << ds.p << ")\n";
            return 0;
        }
        if (*part) {
            require_path(part_in, "--in");
            const BinaryDataset ds = read_binary_dataset(part_in);
            const auto parts = partition_features(ds, part_groups, part_seed);
            for (std::size_t g = 0; g < parts.size(); ++g) {
                const std::string path = part_prefix + "-" + std::to_string(g) + ".tsv";
                write_binary_dataset(parts[g], path);
                std::cout << "wrote " << path << " (" << parts[g].n << "x" << parts[g].p
                          << ")\n";
            }
            return 0;
        }
        if (*sel) {
            require_path(sel_in, "--in");
            const ExperimentConfig cfg = make_config(sel_c);
            const BinaryDataset ds = read_binary_dataset(sel_in);
            const SelectionResult r =
                select_for(ds, sel_k, sel_gamma, sel_k_opt->count() > 0,
                           sel_g_opt->count() > 0, cfg.seed, cfg.exec);
            write_selection(r, sel_out);
            std::cout << "wrote " << sel_out << " (k=" << r.k << " of p=" << r.p
                      << ", gamma=" << r.gamma << ")\n";
            return 0;
        }
        if (*pred) {
            require_path(pred_train, "--train");
            require_path(pred_test, "--test");
            return run_predict(pred_c, pred_train, pred_test, pred_sel, pred_k, pred_gamma,
                               pred_k_opt->count() > 0, pred_g_opt->count() > 0, pred_out);
        }
        if (*lo) {
            require_path(lo_in, "--in");
            ExperimentConfig cfg = make_config(lo_c);
            cfg.k = lo_k;
            const BinaryDataset ds = read_binary_dataset(lo_in);
            const LoocvResult res = loocv(ds, cfg);
            write_loocv_report(res, cfg, lo_out);
            std::cout << "wrote " << lo_out << ": error corrected=" << res.corrected.error_rate
                      << " uncorrected=" << res.uncorrected.error_rate
                      << " (skipped " << res.skipped << " of " << ds.n << " folds)\n";
            return 0;
        }
        if (*st) {
            ExperimentConfig cfg = make_config(st_c);
            SyntheticSpec spec;
            spec.alpha_true = st_alpha;
            spec.p = st_p;
            spec.n_train = st_ntrain;
            spec.n_test = st_ntest;
            spec.balanced = !st_unbalanced;
            spec.seed = cfg.seed;
            const StudyReport report = run_simulation_study(spec, st_sizes, cfg, st_all);
            write_study_report(report, st_out);
            for (const auto& e : report.entries)
                std::cout << "k=" << e.k << " gamma=" << e.gamma
                          << " err_c=" << e.metrics_corrected.error_rate
                          << " exp_c=" << e.metrics_corrected.expected_error_rate
                          << " err_u=" << e.metrics_uncorrected.error_rate
                          << " exp_u=" << e.metrics_uncorrected.expected_error_rate << "\n";
            std::cout << "wrote " << st_out << "\n";
            return 0;
        }
        if (*pa) {
            require_path(pa_in, "--in");
            const ExperimentConfig cfg = make_config(pa_c);
            const BinaryDataset ds = read_binary_dataset(pa_in);
            SelectionResult r;
            const bool have_k = pa_k_opt->count() > 0, have_g = pa_g_opt->count() > 0;
            if (have_k || have_g)
                r = select_for(ds, pa_k, pa_gamma, have_k, have_g, cfg.seed, cfg.exec);
            else
                r = select_top_k(ds, ds.p, derive_seed(cfg.seed, 0x5e1ec7u), cfg.exec);
            const CountsSummary summary = summarize(ds, cfg.exec);
            const auto curve = posterior_alpha_density(summary, r, cfg.prior, cfg.quad,
                                                       pa_corrected, cfg.exec);
            write_posterior_curve(curve, pa_out);
            std::cout << "wrote " << pa_out << " (k=" << r.k << " of p=" << r.p << ")\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
