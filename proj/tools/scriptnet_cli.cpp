// Command-line front end for the script classification pipeline:
// normalize, gen-corpus, train, evaluate, predict, sweep, gradcheck.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scriptnet/checkpoint.hpp"
#include "scriptnet/corpus.hpp"
#include "scriptnet/evaluator.hpp"
#include "scriptnet/gradcheck_presets.hpp"
#include "scriptnet/io_util.hpp"
#include "scriptnet/models.hpp"
#include "scriptnet/normalizer.hpp"
#include "scriptnet/trainer.hpp"

namespace fs = std::filesystem;
using namespace scriptnet;

namespace {

// Flat key=value file; '#' starts a comment line.
std::map<std::string, std::string> parse_config_file(const fs::path& path) {
    std::map<std::string, std::string> out;
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

std::uint64_t cfg_u64(const std::map<std::string, std::string>& cfg, const std::string& key,
                      std::uint64_t fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : std::stoull(it->second);
}

double cfg_double(const std::map<std::string, std::string>& cfg, const std::string& key,
                  double fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : std::stod(it->second);
}

LampConfig lamp_config_from(const std::map<std::string, std::string>& cfg) {
    LampConfig c;
    c.embed_dim = cfg_u64(cfg, "embed_dim", c.embed_dim);
    c.hidden = cfg_u64(cfg, "hidden_size", c.hidden);
    c.lstm_layers = cfg_u64(cfg, "lstm_layers", c.lstm_layers);
    c.classifier_layers = cfg_u64(cfg, "classifier_layers", c.classifier_layers);
    c.classifier_width = cfg_u64(cfg, "classifier_width", c.classifier_width);
    c.max_len = cfg_u64(cfg, "max_len", c.max_len);
    return c;
}

CpolsConfig cpols_config_from(const std::map<std::string, std::string>& cfg) {
    CpolsConfig c;
    c.embed_dim = cfg_u64(cfg, "embed_dim", c.embed_dim);
    c.hidden = cfg_u64(cfg, "hidden_size", c.hidden);
    c.lstm_layers = cfg_u64(cfg, "lstm_layers", c.lstm_layers);
    c.classifier_layers = cfg_u64(cfg, "classifier_layers", c.classifier_layers);
    c.classifier_width = cfg_u64(cfg, "classifier_width", c.classifier_width);
    c.partition_len = cfg_u64(cfg, "partition_len", c.partition_len);
    c.window = cfg_u64(cfg, "window", c.window);
    c.stride = cfg_u64(cfg, "stride", c.stride);
    c.n_filters = cfg_u64(cfg, "filters", c.n_filters);
    c.max_len = cfg_u64(cfg, "max_len", c.max_len);
    return c;
}

TrainConfig train_config_from(const std::map<std::string, std::string>& cfg) {
    TrainConfig t;
    t.batch_size = cfg_u64(cfg, "minibatch_size", t.batch_size);
    t.max_epochs = cfg_u64(cfg, "max_epochs", t.max_epochs);
    t.learning_rate = cfg_double(cfg, "learning_rate", t.learning_rate);
    t.patience = cfg_u64(cfg, "patience", t.patience);
    t.seed = cfg_u64(cfg, "seed", t.seed);
    return t;
}

int cmd_normalize(const std::string& in, const std::string& out_dir, std::size_t max_len) {
    fs::create_directories(out_dir);
    std::vector<fs::path> inputs;
    if (fs::is_directory(in)) {
        for (const auto& entry : fs::directory_iterator(in)) {
            if (entry.is_regular_file()) inputs.push_back(entry.path());
        }
        std::sort(inputs.begin(), inputs.end());
    } else {
        inputs.push_back(in);
    }
    for (const fs::path& path : inputs) {
        RawScript raw{read_file(path), path.filename().string()};
        const EncodedSequence seq = encode(normalize(raw), max_len);
        atomic_write_file(fs::path(out_dir) / (path.stem().string() + ".enc"),
                          encoded_to_string(seq));
    }
    std::cout << "normalized " << inputs.size() << " file(s) into " << out_dir << "\n";
    return 0;
}

int cmd_gen_corpus(std::size_t n, double malicious_frac, std::uint64_t seed,
                   const std::string& out_dir, std::size_t min_len, std::size_t max_len) {
    SyntheticSpec spec = default_synthetic_spec();
    spec.n_examples = n;
    spec.malicious_fraction = malicious_frac;
    spec.seed = seed;
    spec.min_length = min_len;
    spec.max_length = max_len;
    const auto examples = generate_synthetic(spec);
    write_corpus(examples, out_dir);
    std::cout << "wrote " << examples.size() << " examples and manifest.csv to " << out_dir
              << "\n";
    return 0;
}

template <class Model>
int run_training(Model& model, const DatasetSplit& split, const TrainConfig& tcfg,
                 const std::string& out_ckpt) {
    const TrainHistory history = train(model, split, tcfg);
    for (const EpochRecord& r : history.epochs) {
        std::cout << "epoch " << r.epoch << "  train_loss " << r.mean_train_loss
                  << "  val_error " << r.validation_error << "\n";
    }
    std::cout << "best epoch " << history.best_epoch << "  val_error "
              << history.best_validation_error << "\n";
    save_checkpoint(model, out_ckpt, history.best_epoch, history.best_validation_error);
    std::cout << "checkpoint written to " << out_ckpt << "\n";
    return 0;
}

int cmd_train(const std::string& model_kind, const std::string& manifest,
              const std::string& config_path, const std::string& out_ckpt) {
    const auto cfg = parse_config_file(config_path);
    const TrainConfig tcfg = train_config_from(cfg);
    const auto examples = load_manifest_examples(manifest);
    const DatasetSplit split = split_dataset(examples, 0.7, 0.1, 0.2, tcfg.seed);
    if (model_kind == "lamp") {
        LampModel<float> model(lamp_config_from(cfg), tcfg.seed);
        return run_training(model, split, tcfg, out_ckpt);
    }
    CpolsModel<float> model(cpols_config_from(cfg), tcfg.seed);
    return run_training(model, split, tcfg, out_ckpt);
}

int cmd_evaluate(const std::string& ckpt, const std::string& manifest,
                 const std::vector<double>& fprs, const std::string& out_path) {
    LoadedCheckpoint loaded = load_checkpoint(ckpt);
    const auto examples = load_manifest_examples(manifest);
    const MetricsReport rep = std::visit(
        [&](const auto& model) { return report(model, examples, fprs); }, loaded.model);
    const std::string json = report_to_json(rep);
    if (!out_path.empty()) atomic_write_file(out_path, json);
    std::cout << json;
    return 0;
}

int cmd_predict(const std::string& ckpt, const std::string& in_path) {
    LoadedCheckpoint loaded = load_checkpoint(ckpt);
    RawScript raw{read_file(in_path), in_path};
    const double p = std::visit(
        [&](const auto& model) { return static_cast<double>(predict(model, raw)); },
        loaded.model);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", p);
    std::cout << buf << "\n";
    return 0;
}

std::vector<SweepPoint> parse_sweep_grid(const std::vector<std::string>& vary) {
    std::vector<SweepPoint> grid;
    for (const std::string& spec : vary) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos) throw DataError("--vary expects key=v1,v2,...");
        const std::string key = spec.substr(0, eq);
        std::istringstream values(spec.substr(eq + 1));
        std::string token;
        while (std::getline(values, token, ',')) {
            grid.push_back({key, std::stoull(token)});
        }
    }
    if (grid.empty()) throw DataError("--vary produced an empty grid");
    return grid;
}

int cmd_sweep(const std::string& model_kind, const std::string& manifest,
              const std::string& config_path, const std::vector<std::string>& vary,
              const std::string& out_path) {
    const auto cfg = parse_config_file(config_path);
    const TrainConfig tcfg = train_config_from(cfg);
    const auto examples = load_manifest_examples(manifest);
    const DatasetSplit split = split_dataset(examples, 0.7, 0.1, 0.2, tcfg.seed);
    const auto grid = parse_sweep_grid(vary);
    std::vector<SweepRow> rows;
    if (model_kind == "lamp") {
        rows = sweep<LampModel<float>>(lamp_config_from(cfg), grid, split, tcfg);
    } else {
        rows = sweep<CpolsModel<float>>(cpols_config_from(cfg), grid, split, tcfg);
    }
    std::string table = "parameter,value,validation_error,best_train_loss\n";
    for (const SweepRow& r : rows) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s,%llu,%.6f,%.6f\n", r.parameter.c_str(),
                      static_cast<unsigned long long>(r.value), r.validation_error,
                      r.best_train_loss);
        table += buf;
    }
    if (!out_path.empty()) atomic_write_file(out_path, table);
    std::cout << table;
    return 0;
}

int cmd_gradcheck(const std::string& model_kind) {
    GradCheckReport rep;
    if (model_kind == "dense") {
        rep = gradcheck_dense_sigmoid();
    } else if (model_kind == "lamp") {
        rep = gradcheck_lamp_tiny();
    } else {
        rep = gradcheck_cpols_tiny();
    }
    std::cout << "max relative error " << rep.max_rel_error << " over " << rep.n_checked
              << " entries (worst: " << rep.worst_param << ")\n";
    return rep.max_rel_error < 1e-4 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Byte-level malicious-script classifier pipeline"};
    app.require_subcommand(1);

    auto* norm = app.add_subcommand("normalize", "Normalize and encode raw script files");
    std::string norm_in, norm_out;
    std::size_t norm_max_len = 200;
    norm->add_option("--in", norm_in, "Input file or directory")->required();
    norm->add_option("--out", norm_out, "Output directory")->required();
    norm->add_option("--max-len", norm_max_len, "Truncate encoded sequences to this length");

    auto* gen = app.add_subcommand("gen-corpus", "Generate a synthetic labeled corpus");
    std::size_t gen_n = 1000;
    double gen_frac = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    std::size_t gen_min_len = 60, gen_max_len = 200;
    gen->add_option("--n", gen_n, "Number of examples")->required();
    gen->add_option("--malicious-frac", gen_frac, "Fraction of malicious examples")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--min-len", gen_min_len, "Minimum sequence length");
    gen->add_option("--max-len", gen_max_len, "Maximum sequence length");

    auto* tr = app.add_subcommand("train", "Train a model from a manifest");
    std::string tr_model, tr_manifest, tr_config, tr_out;
    tr->add_option("--model", tr_model, "lamp or cpols")
        ->required()
        ->check(CLI::IsMember({"lamp", "cpols"}));
    tr->add_option("--manifest", tr_manifest, "Corpus manifest path")->required();
    tr->add_option("--config", tr_config, "key=value config file")->required();
    tr->add_option("--out", tr_out, "Checkpoint output path")->required();

    auto* ev = app.add_subcommand("evaluate", "Score a manifest and report metrics");
    std::string ev_ckpt, ev_manifest, ev_out;
    std::vector<double> ev_fprs{0.01};
    ev->add_option("--ckpt", ev_ckpt, "Checkpoint path")->required();
    ev->add_option("--manifest", ev_manifest, "Corpus manifest path")->required();
    ev->add_option("--fpr", ev_fprs, "Target FPR values")->delimiter(',');
    ev->add_option("--out", ev_out, "Report JSON output path");

    auto* pr = app.add_subcommand("predict", "Score a single raw script file");
    std::string pr_ckpt, pr_in;
    pr->add_option("--ckpt", pr_ckpt, "Checkpoint path")->required();
    pr->add_option("--in", pr_in, "Raw script file")->required();

    auto* sw = app.add_subcommand("sweep", "One-at-a-time hyperparameter sweep");
    std::string sw_model, sw_manifest, sw_config, sw_out;
    std::vector<std::string> sw_vary;
    sw->add_option("--model", sw_model, "lamp or cpols")
        ->required()
        ->check(CLI::IsMember({"lamp", "cpols"}));
    sw->add_option("--manifest", sw_manifest, "Corpus manifest path")->required();
    sw->add_option("--config", sw_config, "key=value base config file")->required();
    sw->add_option("--vary", sw_vary, "Parameter grid, e.g. lstm_layers=1,2")->required();
    sw->add_option("--out", sw_out, "CSV output path");

    auto* gc = app.add_subcommand("gradcheck", "Finite-difference gradient check");
    std::string gc_model = "lamp";
    bool gc_tiny = true;
    gc->add_option("--model", gc_model, "dense, lamp, or cpols")
        ->check(CLI::IsMember({"dense", "lamp", "cpols"}));
    gc->add_flag("--tiny", gc_tiny, "Use the tiny configuration (always on)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (norm->parsed()) return cmd_normalize(norm_in, norm_out, norm_max_len);
        if (gen->parsed()) {
            return cmd_gen_corpus(gen_n, gen_frac, gen_seed, gen_out, gen_min_len, gen_max_len);
        }
        if (tr->parsed()) return cmd_train(tr_model, tr_manifest, tr_config, tr_out);
        if (ev->parsed()) return cmd_evaluate(ev_ckpt, ev_manifest, ev_fprs, ev_out);
        if (pr->parsed()) return cmd_predict(pr_ckpt, pr_in);
        if (sw->parsed()) return cmd_sweep(sw_model, sw_manifest, sw_config, sw_vary, sw_out);
        if (gc->parsed()) return cmd_gradcheck(gc_model);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
