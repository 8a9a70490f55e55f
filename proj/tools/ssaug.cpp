// command-line frontend: decompose | augment | fidelity | train | predict | synth-demo
// exit codes: 0 ok, 1 usage, 2 data error, 3 numeric failure

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "ssaug/augment.hpp"
#include "ssaug/cnn.hpp"
#include "ssaug/io.hpp"
#include "ssaug/metrics.hpp"
#include "ssaug/ssa.hpp"
#include "ssaug/synth.hpp"

namespace fs = std::filesystem;
using namespace ssaug;

namespace {

SelectorSpec parse_selector(const std::string& s) {
    if (s == "knee") return ScreeKnee{};
    if (s.rfind("fixed:", 0) == 0) return FixedK{std::stoi(s.substr(6))};
    if (s.rfind("var:", 0) == 0) return VarianceThreshold{std::stod(s.substr(4))};
    throw Error("unknown selector '" + s + "' (expected fixed:K, var:FRAC or knee)");
}

std::string two_digit(int k) {
    std::string s = std::to_string(k);
    return s.size() < 2 ? "0" + s : s;
}

int cmd_decompose(const std::string& input, int window, const std::string& select,
                  const std::string& out_dir) {
    const TimeSeries s = read_series(input);
    const SsaConfig cfg{window};
    const SsaDecomposition d = decompose(s, cfg);
    const ComponentGrouping g = select_significant(d, parse_selector(select));
    const TimeSeries shape = reconstruct(d, g.signal_set);
    const TimeSeries irregular(s.values - shape.values);

    fs::create_directories(out_dir);
    {
        std::ofstream ev(fs::path(out_dir) / "eigenvalues.txt");
        ev << "# component eigenvalue (scree data)\n";
        for (int k = 0; k < window; ++k) ev << k + 1 << ' ' << format_double(d.eigenvalues[k]) << '\n';
    }
    write_series(shape, (fs::path(out_dir) / "shape.txt").string(),
                 "shape: components 1.." + std::to_string(g.signal_set.size()));
    write_series(irregular, (fs::path(out_dir) / "irregular.txt").string(), "irregular: residual");
    for (int k = 0; k < window; ++k)
        write_series(reconstruct(d, {k}), (fs::path(out_dir) / ("rc_" + two_digit(k + 1) + ".txt")).string(),
                     "reconstructed component " + std::to_string(k + 1));

    std::cout << "window " << window << ", " << window << " eigenvalues, signal set size "
              << g.signal_set.size() << "\n";
    for (int k = 0; k < window; ++k)
        std::cout << "lambda_" << k + 1 << " = " << format_double(d.eigenvalues[k]) << "\n";
    return 0;
}

AugmentMethod make_method(const std::string& name, int window, const std::string& select,
                          double keep_fraction, double window_fraction,
                          const std::vector<double>& warp_ratios) {
    if (name == "ssa-surrogate") return SsaSurrogateMethod{SsaConfig{window}, parse_selector(select)};
    if (name == "surrogate") return SurrogateOnlyMethod{};
    if (name == "slice") return WindowSliceMethod{SliceConfig{keep_fraction}};
    if (name == "warp") return WindowWarpMethod{WarpConfig{window_fraction, warp_ratios}};
    throw Error("unknown method '" + name + "'");
}

int cmd_augment(const std::string& dataset_path, const AugmentMethod& method,
                std::size_t fold_majority, std::uint64_t seed, const std::string& out) {
    const Dataset d = read_dataset(dataset_path);
    const auto counts = d.class_counts();
    AugmentPlan plan;
    plan.method = method;
    plan.base_seed = seed;
    plan.per_class_fold = derive_fold_plan(counts, fold_majority);
    if (fold_majority == 0) std::cerr << "warning: fold-majority 0 produces an empty dataset\n";

    const Dataset augmented = augment_dataset(d, plan);
    write_dataset(augmented, out);

    const auto out_counts = augmented.class_counts();
    std::cout << "score\toriginal\tfold\tsynthesized\n";
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        const auto synth = out_counts.count(it->first) ? out_counts.at(it->first) : 0;
        std::cout << it->first << '\t' << it->second << '\t' << plan.per_class_fold.at(it->first) << '\t'
                  << synth << '\n';
    }
    std::cout << "total\t" << d.size() << "\t\t" << augmented.size() << '\n';
    return 0;
}

int cmd_fidelity(const std::string& original, const std::string& synthetic, int max_lag,
                 const std::string& acf_out) {
    const TimeSeries a = read_series(original);
    const TimeSeries b = read_series(synthetic);
    const int lag = max_lag > 0 ? max_lag : default_max_lag(std::min(a.length(), b.length()));
    const FidelityReport r = fidelity_report(a, b, lag);
    std::cout << fidelity_to_json(r) << '\n';
    if (!acf_out.empty() && !r.acf_rmsd) std::cerr << "warning: ACF degenerate, no plot data written\n";
    if (!acf_out.empty() && r.acf_rmsd) {
        const auto fa = acf(a, lag), fb = acf(b, lag);
        std::ofstream plot(acf_out);
        plot << "# lag acf_original acf_synthetic\n";
        for (int l = 0; l <= lag; ++l)
            plot << l << ' ' << format_double(fa[static_cast<std::size_t>(l)]) << ' '
                 << format_double(fb[static_cast<std::size_t>(l)]) << '\n';
    }
    return 0;
}

int cmd_train(const std::string& dataset_path, const TrainConfig& cfg, const std::string& labels,
              const std::string& pool, const std::string& model_out, const std::string& history_out) {
    const Dataset d = read_dataset(dataset_path);
    const LabelScheme scheme = labels == "identity"  ? LabelScheme::Identity
                               : labels == "merge01" ? LabelScheme::MergeLowScores
                                                     : LabelScheme::Auto;
    (void)pool;  // reference model is built inside train(); pooling mode is max
    TrainResult result = train(d, cfg, scheme);
    std::cout << "parameters: " << result.model.param_count() << '\n';
    std::cout << "epoch\ttrain_loss\ttrain_acc\tval_acc\n";
    std::ostringstream table;
    for (std::size_t e = 0; e < result.history.size(); ++e) {
        const auto& h = result.history[e];
        table << e + 1 << '\t' << format_double(h.train_loss) << '\t' << format_double(h.train_accuracy)
              << '\t' << format_double(h.val_accuracy) << '\n';
    }
    std::cout << table.str();
    if (!history_out.empty()) {
        std::ofstream hf(history_out);
        hf << "# epoch train_loss train_acc val_acc\n" << table.str();
    }
    save_model(result.model, model_out);
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input, const std::string& dataset_path,
                const std::string& labels, const std::string& history_path) {
    const CnnModel model = load_model(model_path);
    if (!input.empty()) {
        const TimeSeries s = read_series(input);
        const Eigen::VectorXd probs = model.forward(canonicalize_length(s, model.input_len).values);
        Eigen::Index pred;
        probs.maxCoeff(&pred);
        std::cout << "class " << pred << " p " << format_double(probs[pred]) << '\n';
        return 0;
    }
    const Dataset d = read_dataset(dataset_path);
    const LabelScheme scheme = labels == "identity"  ? LabelScheme::Identity
                               : labels == "merge01" ? LabelScheme::MergeLowScores
                                                     : LabelScheme::Auto;
    for (const auto& item : d.items) {
        const Eigen::VectorXd probs =
            model.forward(canonicalize_length(item.series, model.input_len).values);
        Eigen::Index pred;
        probs.maxCoeff(&pred);
        std::cout << item.subject_id << '/' << item.trial_id << '\t' << pred << '\t'
                  << format_double(probs[pred]) << '\n';
    }
    const EvalResult ev = evaluate(model, d, scheme);
    std::cout << "Predict accuracy\t" << format_double(ev.accuracy) << '\n';
    if (!history_path.empty()) {
        // last row of the training history supplies the other two Table rows
        std::ifstream hf(history_path);
        if (!hf) throw Error("cannot open history file: " + history_path);
        std::string line, last;
        while (std::getline(hf, line))
            if (!line.empty() && line[0] != '#') last = line;
        std::istringstream ls(last);
        std::string epoch, loss, train_acc, val_acc;
        ls >> epoch >> loss >> train_acc >> val_acc;
        std::cout << "Validate accuracy\t" << val_acc << '\n';
        std::cout << "Train accuracy\t" << train_acc << '\n';
    }
    std::cout << "confusion:\n" << ev.confusion << '\n';
    return 0;
}

int cmd_synth_demo(int per_class, Eigen::Index length, double noise_amp, double ar_coeff,
                   std::uint64_t seed, const std::string& out) {
    SynthSpec spec;
    spec.per_class_count = per_class;
    spec.length = length;
    spec.noise_amp = noise_amp;
    spec.ar_coeff = ar_coeff;
    spec.seed = seed;
    const Dataset d = generate(spec);
    write_dataset(d, out);
    std::cout << "wrote " << d.size() << " series (" << per_class << " per class) to " << out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-preserving time-series augmentation toolkit"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "SSA-decompose a series into shape and irregular parts");
    std::string dec_input, dec_select = "var:0.9", dec_out;
    int dec_window = 17;
    dec->add_option("--input", dec_input, "series file, one value per line")->required();
    dec->add_option("--window", dec_window, "SSA window M");
    dec->add_option("--select", dec_select, "selector: fixed:K | var:FRAC | knee");
    dec->add_option("--out", dec_out, "output directory")->required();

    // augment
    auto* aug = app.add_subcommand("augment", "expand a dataset with synthetic series");
    std::string aug_dataset, aug_method, aug_out, aug_select = "var:0.9";
    std::size_t aug_fold = 10;
    std::uint64_t aug_seed = 0;
    int aug_window = 17;
    double aug_keep = 0.9, aug_wfrac = 0.1;
    std::vector<double> aug_ratios = {0.5, 2.0};
    aug->add_option("--dataset", aug_dataset, "dataset file (JSON lines)")->required();
    aug->add_option("--method", aug_method, "ssa-surrogate | surrogate | slice | warp")->required();
    aug->add_option("--fold-majority", aug_fold, "fold factor for the majority class")->required();
    aug->add_option("--seed", aug_seed, "base RNG seed")->required();
    aug->add_option("--out", aug_out, "output dataset file")->required();
    aug->add_option("--window", aug_window, "SSA window (ssa-surrogate)");
    aug->add_option("--select", aug_select, "component selector (ssa-surrogate)");
    aug->add_option("--keep-fraction", aug_keep, "kept fraction (slice)");
    aug->add_option("--window-fraction", aug_wfrac, "warped window fraction (warp)");
    aug->add_option("--warp-ratios", aug_ratios, "warp ratio choices (warp)");

    // fidelity
    auto* fid = app.add_subcommand("fidelity", "compare an original and a synthetic series");
    std::string fid_orig, fid_synth, fid_acf_out;
    int fid_lag = 0;
    fid->add_option("--original", fid_orig)->required();
    fid->add_option("--synthetic", fid_synth)->required();
    fid->add_option("--max-lag", fid_lag, "ACF lag range (default min(N-1,40))");
    fid->add_option("--acf-out", fid_acf_out, "write plot-ready ACF overlay data");

    // train
    auto* tr = app.add_subcommand("train", "train the 1D CNN classifier");
    std::string tr_dataset, tr_model_out, tr_history_out, tr_labels = "auto", tr_pool = "max";
    TrainConfig tr_cfg;
    tr->add_option("--dataset", tr_dataset)->required();
    tr->add_option("--epochs", tr_cfg.epochs);
    tr->add_option("--batch", tr_cfg.batch_size);
    tr->add_option("--lr", tr_cfg.learning_rate);
    tr->add_option("--decay", tr_cfg.decay);
    tr->add_option("--input-len", tr_cfg.input_len);
    tr->add_option("--dropout", tr_cfg.dropout_rate);
    tr->add_option("--seed", tr_cfg.seed)->required();
    tr->add_option("--labels", tr_labels, "auto | identity | merge01");
    tr->add_option("--pool", tr_pool, "max | average");
    tr->add_option("--model-out", tr_model_out)->required();
    tr->add_option("--history-out", tr_history_out, "write the epoch table to a file");

    // predict
    auto* pr = app.add_subcommand("predict", "classify a series or a labeled dataset");
    std::string pr_model, pr_input, pr_dataset, pr_labels = "auto", pr_history;
    pr->add_option("--model", pr_model)->required();
    auto* pr_in_opt = pr->add_option("--input", pr_input, "single series file");
    auto* pr_ds_opt = pr->add_option("--dataset", pr_dataset, "labeled dataset file");
    pr_in_opt->excludes(pr_ds_opt);
    pr->add_option("--labels", pr_labels, "auto | identity | merge01");
    pr->add_option("--history", pr_history, "training history file for the three-row summary");

    // synth-demo
    auto* sy = app.add_subcommand("synth-demo", "generate a deterministic 3-class demo dataset");
    int sy_per_class = 200;
    Eigen::Index sy_length = 91;
    double sy_noise = 0.05, sy_ar = 0.8;
    std::uint64_t sy_seed = 0;
    std::string sy_out;
    sy->add_option("--per-class", sy_per_class);
    sy->add_option("--length", sy_length);
    sy->add_option("--noise-amp", sy_noise);
    sy->add_option("--ar-coeff", sy_ar);
    sy->add_option("--seed", sy_seed)->required();
    sy->add_option("--out", sy_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dec->parsed()) return cmd_decompose(dec_input, dec_window, dec_select, dec_out);
        if (aug->parsed())
            return cmd_augment(aug_dataset,
                               make_method(aug_method, aug_window, aug_select, aug_keep, aug_wfrac, aug_ratios),
                               aug_fold, aug_seed, aug_out);
        if (fid->parsed()) return cmd_fidelity(fid_orig, fid_synth, fid_lag, fid_acf_out);
        if (tr->parsed()) return cmd_train(tr_dataset, tr_cfg, tr_labels, tr_pool, tr_model_out, tr_history_out);
        if (pr->parsed()) {
            if (pr_input.empty() && pr_dataset.empty()) {
                std::cerr << "predict: one of --input or --dataset is required\n";
                return 1;
            }
            return cmd_predict(pr_model, pr_input, pr_dataset, pr_labels, pr_history);
        }
        if (sy->parsed()) return cmd_synth_demo(sy_per_class, sy_length, sy_noise, sy_ar, sy_seed, sy_out);
    } catch (const EigenFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
