#include <doctest.h>

#include <cmath>

#include "scriptnet/models.hpp"
#include "scriptnet/rng.hpp"

using namespace scriptnet;

namespace {

EncodedSequence seq_of_length(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    EncodedSequence seq;
    seq.codes.resize(n);
    for (auto& c : seq.codes) c = static_cast<std::uint16_t>(97 + rng.below(26));
    seq.valid_length = n;
    return seq;
}

void zero_all(const std::vector<NodePtr<float>>& params) {
    for (const auto& p : params) std::fill(p->values.begin(), p->values.end(), 0.0f);
}

}  // namespace

TEST_CASE("zeroed models output exactly 0.5") {
    LampModel<float> lamp(LampConfig{}, 1);
    zero_all(lamp.parameters());
    CHECK(lamp.predict_prob(seq_of_length(20, 2)) == 0.5f);

    CpolsModel<float> cpols(CpolsConfig{}, 1);
    zero_all(cpols.parameters());
    CHECK(cpols.predict_prob(seq_of_length(250, 3)) == 0.5f);
}

TEST_CASE("lamp forward equals the manual layer composition") {
    LampConfig cfg;
    cfg.embed_dim = 3;
    cfg.hidden = 4;
    cfg.classifier_width = 5;
    cfg.max_len = 16;
    LampModel<float> model(cfg, 42);
    const auto seq = seq_of_length(10, 7);

    auto embedded =
        nn::embedding_forward(model.embedding(), seq.codes.data(), seq.codes.size(), nullptr);
    auto states = nn::lstm_sequence(model.lstm_layers(), embedded, nullptr);
    auto pooled = nn::temporal_max_pool(states, seq.valid_length, nullptr);
    NodePtr<float> x = pooled;
    for (const auto& w : model.classifier_weights()) x = nn::dense_relu(w, x, nullptr);
    const float manual = nn::sigmoid_output(model.output_weights(), x, nullptr)->values[0];

    CHECK(std::abs(model.predict_prob(seq) - manual) <= 1e-6f);
}

TEST_CASE("lamp output is a probability and rejects empty input") {
    LampModel<float> model(LampConfig{}, 5);
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const float p = model.predict_prob(seq_of_length(1 + rng.below(200), rng.next()));
        CHECK(p > 0.0f);
        CHECK(p < 1.0f);
    }
    CHECK_THROWS_AS(model.predict_prob(EncodedSequence{}), DataError);
}

TEST_CASE("lamp prediction ignores padding beyond valid_length") {
    LampModel<float> model(LampConfig{}, 9);
    auto seq = seq_of_length(30, 10);
    seq.codes.resize(120, kPadCode);  // padded buffer, valid_length still 30
    const float base = model.predict_prob(seq);

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto mutated = seq;
        for (std::size_t i = seq.valid_length; i < mutated.codes.size(); ++i) {
            mutated.codes[i] = static_cast<std::uint16_t>(rng.below(256));
        }
        CHECK(model.predict_prob(mutated) == base);  // bitwise identical
    }
}

TEST_CASE("lamp truncates sequences longer than max_len") {
    LampConfig cfg;
    cfg.max_len = 8;
    LampModel<float> model(cfg, 13);
    auto seq = seq_of_length(8, 14);
    const float base = model.predict_prob(seq);

    auto longer = seq;
    longer.codes.resize(40);
    for (std::size_t i = 8; i < 40; ++i) longer.codes[i] = 122;
    longer.valid_length = 40;
    CHECK(model.predict_prob(longer) == base);
}

TEST_CASE("cpols partition counting") {
    CpolsConfig cfg;
    cfg.partition_len = 100;
    cfg.max_len = 2000;
    CpolsModel<float> model(cfg, 1);
    CHECK(model.partition_count(1000) == 10);
    CHECK(model.partition_count(1005) == 11);
    CHECK(model.partition_count(1) == 1);
    CHECK(model.partition_count(100) == 1);
    CHECK(model.partition_count(101) == 2);
    CHECK(model.partition_count(5000) == 20);  // clamped to max_len first

    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(2000);
        CHECK(model.partition_count(n) == (n + 99) / 100);
    }
}

TEST_CASE("cpols forward reports one recurrent step per partition") {
    CpolsConfig cfg;
    cfg.partition_len = 50;
    cfg.max_len = 1000;
    CpolsModel<float> model(cfg, 3);
    const auto seq = seq_of_length(16 * 50, 4);
    CpolsForwardStats stats;
    model.forward(seq, nullptr, &stats);
    CHECK(stats.n_partitions == 16);
    CHECK(stats.recurrent_steps == 16);
}

TEST_CASE("cpols prediction ignores padding beyond valid_length") {
    CpolsModel<float> model(CpolsConfig{}, 21);
    auto seq = seq_of_length(230, 22);  // last partition partially filled
    const float base = model.predict_prob(seq);

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto mutated = seq;
        mutated.codes.resize(400);
        for (std::size_t i = seq.valid_length; i < mutated.codes.size(); ++i) {
            mutated.codes[i] = static_cast<std::uint16_t>(rng.below(256));
        }
        CHECK(model.predict_prob(mutated) == base);
    }
}

TEST_CASE("cpols output is a probability and rejects empty input") {
    CpolsModel<float> model(CpolsConfig{}, 31);
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const float p = model.predict_prob(seq_of_length(1 + rng.below(1000), rng.next()));
        CHECK(p > 0.0f);
        CHECK(p < 1.0f);
    }
    CHECK_THROWS_AS(model.predict_prob(EncodedSequence{}), DataError);
}

TEST_CASE("config validation rejects zero dimensions") {
    LampConfig bad_lamp;
    bad_lamp.hidden = 0;
    CHECK_THROWS_AS(LampModel<float>(bad_lamp, 1), DataError);

    CpolsConfig bad_cpols;
    bad_cpols.window = 200;  // larger than partition_len
    CHECK_THROWS_AS(CpolsModel<float>(bad_cpols, 1), DataError);
}

TEST_CASE("end-to-end predict runs normalization first") {
    LampModel<float> model(LampConfig{}, 41);
    // differ only in whitespace/case, so they normalize identically
    const float a = predict(model, RawScript{"Eval (X);", "a"});
    const float b = predict(model, RawScript{"eval(x);", "b"});
    CHECK(a == b);
}

TEST_CASE("published hyperparameter presets instantiate with correct shapes") {
    const LampConfig js = lamp_preset_js();
    CHECK(js.embed_dim == 64);
    CHECK(js.hidden == 1500);
    CHECK(js.max_len == 200);
    const LampConfig vbs = lamp_preset_vbs();
    CHECK(vbs.embed_dim == 128);
    CHECK(vbs.hidden == 1500);

    const CpolsConfig cjs = cpols_preset_js();
    CHECK(cjs.embed_dim == 64);
    CHECK(cjs.hidden == 1500);
    CHECK(cjs.window == 10);
    CHECK(cjs.stride == 5);
    CHECK(cjs.n_filters == 128);
    CHECK(cjs.max_len == 1000);
    const CpolsConfig cvbs = cpols_preset_vbs();
    CHECK(cvbs.embed_dim == 128);
    CHECK(cvbs.n_filters == 128);
}
