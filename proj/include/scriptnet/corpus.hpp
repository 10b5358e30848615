#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scriptnet/normalizer.hpp"

namespace scriptnet {

struct LabeledExample {
    EncodedSequence sequence;
    int label = 0;  // 0 = benign, 1 = malicious
    std::string id;
};

struct DatasetSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> validation;
    std::vector<LabeledExample> test;
};

struct Minibatch {
    std::vector<std::uint16_t> padded_codes;  // [batch x seq_len], row-major
    std::size_t seq_len = 0;
    std::vector<std::size_t> valid_lengths;
    std::vector<int> labels;
    std::vector<std::string> ids;

    std::size_t size() const { return labels.size(); }
    const std::uint16_t* row(std::size_t i) const { return padded_codes.data() + i * seq_len; }
};

struct SyntheticSpec {
    std::size_t n_examples = 0;
    double malicious_fraction = 0.5;
    std::vector<std::string> motif_set;  // planted only in malicious examples
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    std::string noise_alphabet;
    std::uint64_t seed = 0;
};

// Sizes are round(n * ratio) for train and validation, remainder to test.
// Assignment is a deterministic function of the seed.
DatasetSplit split_dataset(const std::vector<LabeledExample>& examples,
                           double train_ratio, double val_ratio, double test_ratio,
                           std::uint64_t seed);

// Labeled corpus with motifs planted only in malicious examples; benign
// examples are rejection-sampled until motif-free.
std::vector<LabeledExample> generate_synthetic(const SyntheticSpec& spec);

// One epoch of minibatches; rows padded to seq_len with kPadCode.
std::vector<Minibatch> batches(const std::vector<LabeledExample>& examples,
                               std::size_t batch_size, std::size_t seq_len,
                               std::uint64_t shuffle_seed);

SyntheticSpec default_synthetic_spec();

// Manifest: one "<id>,<label>,<relative-path>" record per line, '#' comments.
struct ManifestEntry {
    std::string id;
    int label = 0;
    std::string path;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);
std::vector<LabeledExample> load_manifest_examples(const std::filesystem::path& manifest_path);
void write_corpus(const std::vector<LabeledExample>& examples,
                  const std::filesystem::path& out_dir);

}  // namespace scriptnet
