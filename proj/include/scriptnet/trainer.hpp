#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scriptnet/corpus.hpp"
#include "scriptnet/models.hpp"

namespace scriptnet {

struct TrainConfig {
    std::size_t batch_size = 32;
    std::size_t max_epochs = 15;
    double learning_rate = 1e-3;
    std::size_t patience = 3;  // epochs without validation improvement
    std::uint64_t seed = 0;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double mean_train_loss = 0.0;
    double validation_error = 0.0;
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
    double best_validation_error = 1.0;
    std::size_t best_epoch = 0;
};

// Fraction of examples where (p >= 0.5) disagrees with the label.
template <class Model>
double evaluate_validation_error(const Model& model, const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw DataError("evaluate_validation_error: empty example set");
    std::size_t wrong = 0;
    for (const LabeledExample& ex : examples) {
        const auto p = model.predict_prob(ex.sequence);
        const int predicted = p >= 0.5f ? 1 : 0;
        if (predicted != ex.label) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(examples.size());
}

namespace detail {

template <class Real>
std::vector<std::vector<Real>> snapshot_params(const std::vector<NodePtr<Real>>& params) {
    std::vector<std::vector<Real>> out;
    out.reserve(params.size());
    for (const auto& p : params) out.push_back(p->values);
    return out;
}

template <class Real>
void restore_params(const std::vector<NodePtr<Real>>& params,
                    const std::vector<std::vector<Real>>& snapshot) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i]->values = snapshot[i];
}

}  // namespace detail

inline constexpr double kGradClipNorm = 5.0;

// Minibatch cross-entropy training with per-epoch validation, keep-best
// parameters, and patience-based early stopping. The model is left holding
// the best-validation parameters.
template <class Model>
TrainHistory train(Model& model, const DatasetSplit& split, const TrainConfig& cfg) {
    using Real = float;
    if (split.train.empty() || split.validation.empty()) {
        throw DataError("train: empty train or validation split");
    }
    if (cfg.max_epochs < 1 || cfg.batch_size < 1) {
        throw DataError("train: max_epochs and batch_size must be >= 1");
    }

    const auto params = model.parameters();
    nn::AdamConfig adam_cfg;
    adam_cfg.learning_rate = cfg.learning_rate;
    nn::AdamOptimizer<Real> optimizer(params, adam_cfg);

    TrainHistory history;
    history.best_validation_error = 2.0;  // above any reachable error rate
    auto best = detail::snapshot_params(params);
    std::size_t epochs_since_improvement = 0;
    const std::size_t seq_len = model.config().max_len;

    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double loss_sum = 0.0;
        std::size_t loss_count = 0;
        const auto epoch_batches =
            batches(split.train, cfg.batch_size, seq_len, cfg.seed + epoch);
        for (const Minibatch& mb : epoch_batches) {
            nn::zero_grads(params);
            nn::Tape<Real> tape;
            for (std::size_t i = 0; i < mb.size(); ++i) {
                EncodedSequence seq;
                seq.codes.assign(mb.row(i), mb.row(i) + mb.seq_len);
                seq.valid_length = mb.valid_lengths[i];
                auto p = model.forward(seq, &tape);
                auto loss = nn::cross_entropy(p, mb.labels[i], &tape);
                const double loss_value = loss->values[0];
                if (!std::isfinite(loss_value)) {
                    throw NumericError("train: non-finite loss at epoch " +
                                       std::to_string(epoch) + ", example " + mb.ids[i]);
                }
                loss_sum += loss_value;
                ++loss_count;
                nn::backward(loss, tape);
            }
            nn::scale_grads(params, Real{1} / static_cast<Real>(mb.size()));
            nn::clip_grad_norm(params, static_cast<Real>(kGradClipNorm));
            optimizer.step();
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.mean_train_loss = loss_sum / static_cast<double>(loss_count);
        rec.validation_error = evaluate_validation_error(model, split.validation);
        history.epochs.push_back(rec);

        if (rec.validation_error < history.best_validation_error) {
            history.best_validation_error = rec.validation_error;
            history.best_epoch = epoch;
            best = detail::snapshot_params(params);
            epochs_since_improvement = 0;
        } else {
            ++epochs_since_improvement;
            if (epochs_since_improvement > cfg.patience) break;
        }
    }

    detail::restore_params(params, best);
    return history;
}

struct SweepRow {
    std::string parameter;
    std::uint64_t value = 0;
    double validation_error = 0.0;
    double best_train_loss = 0.0;
};

// One-at-a-time hyperparameter variation: every grid entry changes a single
// config field of a fresh model, all else held at the base configuration.
// Rows come back sorted by validation error.
struct SweepPoint {
    std::string parameter;  // config field name
    std::uint64_t value = 0;
};

template <class Config>
void apply_sweep_value(Config& cfg, const std::string& parameter, std::uint64_t value);

template <>
inline void apply_sweep_value(LampConfig& cfg, const std::string& parameter, std::uint64_t value) {
    if (parameter == "embed_dim") cfg.embed_dim = value;
    else if (parameter == "hidden_size") cfg.hidden = value;
    else if (parameter == "lstm_layers") cfg.lstm_layers = value;
    else if (parameter == "classifier_layers") cfg.classifier_layers = value;
    else if (parameter == "classifier_width") cfg.classifier_width = value;
    else if (parameter == "max_len") cfg.max_len = value;
    else throw DataError("sweep: unknown parameter " + parameter);
}

template <>
inline void apply_sweep_value(CpolsConfig& cfg, const std::string& parameter, std::uint64_t value) {
    if (parameter == "embed_dim") cfg.embed_dim = value;
    else if (parameter == "hidden_size") cfg.hidden = value;
    else if (parameter == "lstm_layers") cfg.lstm_layers = value;
    else if (parameter == "classifier_layers") cfg.classifier_layers = value;
    else if (parameter == "classifier_width") cfg.classifier_width = value;
    else if (parameter == "max_len") cfg.max_len = value;
    else if (parameter == "partition_len") cfg.partition_len = value;
    else if (parameter == "window") cfg.window = value;
    else if (parameter == "stride") cfg.stride = value;
    else if (parameter == "filters") cfg.n_filters = value;
    else throw DataError("sweep: unknown parameter " + parameter);
}

template <class Model, class Config>
std::vector<SweepRow> sweep(const Config& base_config, const std::vector<SweepPoint>& grid,
                            const DatasetSplit& split, const TrainConfig& train_cfg) {
    std::vector<SweepRow> rows;
    for (const SweepPoint& point : grid) {
        Config cfg = base_config;
        apply_sweep_value(cfg, point.parameter, point.value);
        Model model(cfg, train_cfg.seed);
        const TrainHistory history = train(model, split, train_cfg);
        SweepRow row;
        row.parameter = point.parameter;
        row.value = point.value;
        row.validation_error = history.best_validation_error;
        double best_loss = history.epochs.empty() ? 0.0 : history.epochs[0].mean_train_loss;
        for (const EpochRecord& r : history.epochs) best_loss = std::min(best_loss, r.mean_train_loss);
        row.best_train_loss = best_loss;
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.validation_error < b.validation_error;
    });
    return rows;
}

}  // namespace scriptnet
