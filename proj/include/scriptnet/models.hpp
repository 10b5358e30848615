#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scriptnet/nn.hpp"
#include "scriptnet/normalizer.hpp"

namespace scriptnet {

enum class ModelKind { lamp, cpols };

struct LampConfig {
    std::size_t embed_dim = 8;
    std::size_t hidden = 16;
    std::size_t lstm_layers = 1;
    std::size_t classifier_layers = 1;
    std::size_t classifier_width = 64;
    std::size_t max_len = 200;
};

struct CpolsConfig {
    std::size_t embed_dim = 8;
    std::size_t hidden = 16;
    std::size_t lstm_layers = 1;
    std::size_t classifier_layers = 1;
    std::size_t classifier_width = 64;
    std::size_t partition_len = 100;
    std::size_t window = 10;
    std::size_t stride = 5;
    std::size_t n_filters = 32;
    std::size_t max_len = 1000;
};

struct CpolsForwardStats {
    std::size_t n_partitions = 0;
    std::size_t recurrent_steps = 0;
};

namespace detail {

// Stacks single-row vectors into [n x k]; backward scatters grad rows back.
template <class Real>
NodePtr<Real> stack_rows(const std::vector<NodePtr<Real>>& rows, std::type_identity_t<nn::Tape<Real>>* tape) {
    if (rows.empty()) throw ShapeError("stack_rows: empty");
    const std::size_t k = rows[0]->size();
    auto out = make_node<Real>({rows.size(), k});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i]->size() != k) throw ShapeError("stack_rows: ragged rows");
        std::copy(rows[i]->values.begin(), rows[i]->values.end(), out->row(i));
    }
    if (tape != nullptr) {
        tape->record([rows, out, k]() {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                kernels::axpy(Real{1}, out->grad.data() + i * k, rows[i]->grad.data(), k);
            }
        });
    }
    return out;
}

template <class Real>
NodePtr<Real> classifier_head(const std::vector<NodePtr<Real>>& classifier,
                              const NodePtr<Real>& w_out, NodePtr<Real> x,
                              std::type_identity_t<nn::Tape<Real>>* tape) {
    for (const auto& w : classifier) x = nn::dense_relu(w, x, tape);
    return nn::sigmoid_output(w_out, x, tape);
}

}  // namespace detail

// Embedding -> stacked LSTM -> temporal max pool -> dense ReLU chain -> sigmoid.
template <class Real>
class LampModel {
public:
    LampModel(const LampConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
        validate(cfg);
        Rng rng(seed);
        embedding_ = nn::make_embedding<Real>(cfg.embed_dim, rng);
        std::size_t in = cfg.embed_dim;
        for (std::size_t l = 0; l < cfg.lstm_layers; ++l) {
            lstm_.push_back(nn::make_lstm<Real>(in, cfg.hidden, rng));
            in = cfg.hidden;
        }
        std::size_t cin = cfg.hidden;
        for (std::size_t l = 0; l < cfg.classifier_layers; ++l) {
            classifier_.push_back(nn::make_dense<Real>(cfg.classifier_width, cin, rng));
            cin = cfg.classifier_width;
        }
        w_out_ = nn::make_dense<Real>(1, cin, rng);
    }

    static void validate(const LampConfig& cfg) {
        if (cfg.embed_dim < 1 || cfg.hidden < 1 || cfg.lstm_layers < 1 ||
            cfg.classifier_layers < 1 || cfg.classifier_width < 1 || cfg.max_len < 1) {
            throw DataError("LampConfig: all dimensions must be >= 1");
        }
    }

    NodePtr<Real> forward(const EncodedSequence& seq, std::type_identity_t<nn::Tape<Real>>* tape) const {
        const std::size_t valid = std::min(seq.valid_length, cfg_.max_len);
        if (valid == 0) throw DataError("lamp_forward: empty input sequence");
        // Padded timesteps (up to max_len) are still run through the LSTM but
        // masked out of the pool, so they cannot affect the prediction.
        const std::size_t steps = std::min(seq.codes.size(), cfg_.max_len);
        auto embedded = nn::embedding_forward(embedding_, seq.codes.data(), steps, tape);
        auto states = nn::lstm_sequence(lstm_, embedded, tape);
        auto pooled = nn::temporal_max_pool(states, valid, tape);
        return detail::classifier_head(classifier_, w_out_, pooled, tape);
    }

    Real predict_prob(const EncodedSequence& seq) const {
        return forward(seq, nullptr)->values[0];
    }

    const LampConfig& config() const { return cfg_; }

    std::vector<std::pair<std::string, NodePtr<Real>>> named_parameters() const {
        std::vector<std::pair<std::string, NodePtr<Real>>> out;
        out.emplace_back("embedding.table", embedding_.table);
        for (std::size_t l = 0; l < lstm_.size(); ++l) {
            const std::string p = "lstm" + std::to_string(l) + ".";
            const auto& q = lstm_[l];
            out.emplace_back(p + "w_xi", q.w_xi);
            out.emplace_back(p + "w_xf", q.w_xf);
            out.emplace_back(p + "w_xo", q.w_xo);
            out.emplace_back(p + "w_xc", q.w_xc);
            out.emplace_back(p + "w_hi", q.w_hi);
            out.emplace_back(p + "w_hf", q.w_hf);
            out.emplace_back(p + "w_ho", q.w_ho);
            out.emplace_back(p + "w_hc", q.w_hc);
            out.emplace_back(p + "b_i", q.b_i);
            out.emplace_back(p + "b_f", q.b_f);
            out.emplace_back(p + "b_o", q.b_o);
            out.emplace_back(p + "b_c", q.b_c);
        }
        for (std::size_t l = 0; l < classifier_.size(); ++l) {
            out.emplace_back("classifier" + std::to_string(l) + ".w", classifier_[l]);
        }
        out.emplace_back("output.w", w_out_);
        return out;
    }

    std::vector<NodePtr<Real>> parameters() const {
        std::vector<NodePtr<Real>> out;
        for (auto& [name, p] : named_parameters()) out.push_back(p);
        return out;
    }

    // Direct access for composition tests.
    const nn::EmbeddingParams<Real>& embedding() const { return embedding_; }
    const std::vector<nn::LstmParams<Real>>& lstm_layers() const { return lstm_; }
    const std::vector<NodePtr<Real>>& classifier_weights() const { return classifier_; }
    const NodePtr<Real>& output_weights() const { return w_out_; }

private:
    LampConfig cfg_;
    nn::EmbeddingParams<Real> embedding_;
    std::vector<nn::LstmParams<Real>> lstm_;
    std::vector<NodePtr<Real>> classifier_;
    NodePtr<Real> w_out_;
};

// Fixed-length partitioning, per-partition embedding + conv + max pool, then
// a LaMP-style head over the partition vectors.
template <class Real>
class CpolsModel {
public:
    CpolsModel(const CpolsConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
        validate(cfg);
        Rng rng(seed);
        embedding_ = nn::make_embedding<Real>(cfg.embed_dim, rng);
        conv_ = nn::make_conv<Real>(cfg.n_filters, cfg.window, cfg.embed_dim, cfg.stride, rng);
        std::size_t in = cfg.n_filters;
        for (std::size_t l = 0; l < cfg.lstm_layers; ++l) {
            lstm_.push_back(nn::make_lstm<Real>(in, cfg.hidden, rng));
            in = cfg.hidden;
        }
        std::size_t cin = cfg.hidden;
        for (std::size_t l = 0; l < cfg.classifier_layers; ++l) {
            classifier_.push_back(nn::make_dense<Real>(cfg.classifier_width, cin, rng));
            cin = cfg.classifier_width;
        }
        w_out_ = nn::make_dense<Real>(1, cin, rng);
    }

    static void validate(const CpolsConfig& cfg) {
        if (cfg.embed_dim < 1 || cfg.hidden < 1 || cfg.lstm_layers < 1 ||
            cfg.classifier_layers < 1 || cfg.classifier_width < 1 || cfg.max_len < 1 ||
            cfg.n_filters < 1 || cfg.stride < 1) {
            throw DataError("CpolsConfig: all dimensions must be >= 1");
        }
        if (cfg.window > cfg.partition_len) {
            throw DataError("CpolsConfig: window must not exceed partition_len");
        }
    }

    NodePtr<Real> forward(const EncodedSequence& seq, std::type_identity_t<nn::Tape<Real>>* tape,
                          CpolsForwardStats* stats = nullptr) const {
        const std::size_t valid = std::min(seq.valid_length, cfg_.max_len);
        if (valid == 0) throw DataError("cpols_forward: empty input sequence");
        const std::size_t p_len = cfg_.partition_len;
        const std::size_t n_parts = (valid + p_len - 1) / p_len;
        if (stats != nullptr) {
            stats->n_partitions = n_parts;
            stats->recurrent_steps = n_parts;
        }

        // Only the valid prefix of the input is ever read; the short final
        // partition is padded with the pad code and its padded tail masked
        // out of the per-partition pool.
        std::vector<NodePtr<Real>> piece_vectors;
        piece_vectors.reserve(n_parts);
        std::vector<std::uint16_t> piece(p_len, kPadCode);
        for (std::size_t i = 0; i < n_parts; ++i) {
            const std::size_t begin = i * p_len;
            const std::size_t piece_valid = std::min(p_len, valid - begin);
            std::fill(piece.begin(), piece.end(), kPadCode);
            std::copy(seq.codes.begin() + static_cast<std::ptrdiff_t>(begin),
                      seq.codes.begin() + static_cast<std::ptrdiff_t>(begin + piece_valid),
                      piece.begin());
            auto embedded = nn::embedding_forward(embedding_, piece.data(), p_len, tape);
            auto convolved = nn::conv1d_forward(conv_, embedded, tape);
            // Conv positions whose window starts inside the valid prefix.
            const std::size_t conv_len = convolved->extent(0);
            const std::size_t conv_valid =
                std::min(conv_len, (piece_valid - 1) / cfg_.stride + 1);
            piece_vectors.push_back(nn::temporal_max_pool(convolved, conv_valid, tape));
        }

        auto partition_seq = detail::stack_rows(piece_vectors, tape);
        auto states = nn::lstm_sequence(lstm_, partition_seq, tape);
        auto pooled = nn::temporal_max_pool(states, n_parts, tape);
        return detail::classifier_head(classifier_, w_out_, pooled, tape);
    }

    Real predict_prob(const EncodedSequence& seq) const {
        return forward(seq, nullptr)->values[0];
    }

    const CpolsConfig& config() const { return cfg_; }

    std::size_t partition_count(std::size_t valid_length) const {
        const std::size_t valid = std::min(valid_length, cfg_.max_len);
        return (valid + cfg_.partition_len - 1) / cfg_.partition_len;
    }

    std::vector<std::pair<std::string, NodePtr<Real>>> named_parameters() const {
        std::vector<std::pair<std::string, NodePtr<Real>>> out;
        out.emplace_back("embedding.table", embedding_.table);
        out.emplace_back("conv.filters", conv_.filters);
        out.emplace_back("conv.bias", conv_.bias);
        for (std::size_t l = 0; l < lstm_.size(); ++l) {
            const std::string p = "lstm" + std::to_string(l) + ".";
            const auto& q = lstm_[l];
            out.emplace_back(p + "w_xi", q.w_xi);
            out.emplace_back(p + "w_xf", q.w_xf);
            out.emplace_back(p + "w_xo", q.w_xo);
            out.emplace_back(p + "w_xc", q.w_xc);
            out.emplace_back(p + "w_hi", q.w_hi);
            out.emplace_back(p + "w_hf", q.w_hf);
            out.emplace_back(p + "w_ho", q.w_ho);
            out.emplace_back(p + "w_hc", q.w_hc);
            out.emplace_back(p + "b_i", q.b_i);
            out.emplace_back(p + "b_f", q.b_f);
            out.emplace_back(p + "b_o", q.b_o);
            out.emplace_back(p + "b_c", q.b_c);
        }
        for (std::size_t l = 0; l < classifier_.size(); ++l) {
            out.emplace_back("classifier" + std::to_string(l) + ".w", classifier_[l]);
        }
        out.emplace_back("output.w", w_out_);
        return out;
    }

    std::vector<NodePtr<Real>> parameters() const {
        std::vector<NodePtr<Real>> out;
        for (auto& [name, p] : named_parameters()) out.push_back(p);
        return out;
    }

private:
    CpolsConfig cfg_;
    nn::EmbeddingParams<Real> embedding_;
    nn::ConvParams<Real> conv_;
    std::vector<nn::LstmParams<Real>> lstm_;
    std::vector<NodePtr<Real>> classifier_;
    NodePtr<Real> w_out_;
};

// normalize -> encode(max_len) -> forward.
template <class Model>
auto predict(const Model& model, const RawScript& raw) {
    const EncodedSequence seq = encode(normalize(raw), model.config().max_len);
    return model.predict_prob(seq);
}

// Published hyperparameter presets (per-corpus models).
inline LampConfig lamp_preset_js() { return {.embed_dim = 64, .hidden = 1500, .max_len = 200}; }
inline LampConfig lamp_preset_vbs() { return {.embed_dim = 128, .hidden = 1500, .max_len = 200}; }
inline CpolsConfig cpols_preset_js() {
    return {.embed_dim = 64, .hidden = 1500, .window = 10, .stride = 5, .n_filters = 128,
            .max_len = 1000};
}
inline CpolsConfig cpols_preset_vbs() {
    return {.embed_dim = 128, .hidden = 1500, .window = 10, .stride = 5, .n_filters = 128,
            .max_len = 1000};
}

}  // namespace scriptnet
