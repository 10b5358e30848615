#pragma once

#include "scriptnet/gradcheck.hpp"
#include "scriptnet/models.hpp"

// Canned 64-bit gradient checks used by the CLI and the verification suite.

namespace scriptnet {

inline GradCheckReport gradcheck_dense_sigmoid() {
    Rng rng(7);
    auto w = nn::make_dense<double>(3, 4, rng);
    auto w_out = nn::make_dense<double>(1, 3, rng);
    auto x = make_node<double>({std::size_t{4}});
    nn::init_uniform(*x, -1.0, 1.0, rng);
    std::vector<std::pair<std::string, NodePtr<double>>> params = {
        {"dense.w", w}, {"output.w", w_out}};
    auto loss_fn = [&](nn::Tape<double>* tape) {
        auto hidden = nn::dense_relu(w, x, tape);
        auto p = nn::sigmoid_output(w_out, hidden, tape);
        return nn::cross_entropy(p, 1, tape);
    };
    return finite_difference_check(params, loss_fn);
}

inline LampConfig tiny_lamp_config() {
    return {.embed_dim = 3, .hidden = 4, .lstm_layers = 1, .classifier_layers = 1,
            .classifier_width = 4, .max_len = 6};
}

inline CpolsConfig tiny_cpols_config() {
    return {.embed_dim = 3, .hidden = 4, .lstm_layers = 1, .classifier_layers = 1,
            .classifier_width = 4, .partition_len = 6, .window = 3, .stride = 2,
            .n_filters = 5, .max_len = 24};
}

inline EncodedSequence tiny_sequence(std::size_t len) {
    EncodedSequence seq;
    for (std::size_t i = 0; i < len; ++i) {
        seq.codes.push_back(static_cast<std::uint16_t>(97 + i % 26));
    }
    seq.valid_length = len;
    return seq;
}

inline GradCheckReport gradcheck_lamp_tiny() {
    LampModel<double> model(tiny_lamp_config(), 42);
    const EncodedSequence seq = tiny_sequence(6);
    auto loss_fn = [&](nn::Tape<double>* tape) {
        return nn::cross_entropy(model.forward(seq, tape), 1, tape);
    };
    return finite_difference_check(model.named_parameters(), loss_fn);
}

inline GradCheckReport gradcheck_cpols_tiny() {
    CpolsModel<double> model(tiny_cpols_config(), 42);
    const EncodedSequence seq = tiny_sequence(15);  // 3 partitions, last one partial
    auto loss_fn = [&](nn::Tape<double>* tape) {
        return nn::cross_entropy(model.forward(seq, tape), 0, tape);
    };
    return finite_difference_check(model.named_parameters(), loss_fn);
}

}  // namespace scriptnet
