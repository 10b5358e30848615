#include "scriptnet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scriptnet/errors.hpp"
#include "scriptnet/io_util.hpp"
#include "scriptnet/rng.hpp"

namespace scriptnet {

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DatasetSplit split_dataset(const std::vector<LabeledExample>& examples,
                           double train_ratio, double val_ratio, double test_ratio,
                           std::uint64_t seed) {
    if (examples.empty()) throw DataError("split_dataset: empty input");
    if (train_ratio <= 0 || val_ratio <= 0 || test_ratio <= 0) {
        throw DataError("split_dataset: ratios must be positive");
    }
    if (std::abs(train_ratio + val_ratio + test_ratio - 1.0) > 1e-9) {
        throw DataError("split_dataset: ratios must sum to 1");
    }
    const std::size_t n = examples.size();
    const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_ratio));
    const auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * val_ratio));
    if (n_train + n_val > n) throw DataError("split_dataset: degenerate ratios");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    DatasetSplit split;
    split.train.reserve(n_train);
    split.validation.reserve(n_val);
    split.test.reserve(n - n_train - n_val);
    for (std::size_t i = 0; i < n; ++i) {
        const LabeledExample& ex = examples[order[i]];
        if (i < n_train) {
            split.train.push_back(ex);
        } else if (i < n_train + n_val) {
            split.validation.push_back(ex);
        } else {
            split.test.push_back(ex);
        }
    }
    return split;
}

namespace {

bool contains_motif(const std::vector<std::uint16_t>& codes, const std::string& motif) {
    if (motif.empty() || motif.size() > codes.size()) return false;
    const std::size_t n = codes.size() - motif.size();
    for (std::size_t i = 0; i <= n; ++i) {
        bool match = true;
        for (std::size_t j = 0; j < motif.size(); ++j) {
            if (codes[i + j] != static_cast<unsigned char>(motif[j])) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

bool contains_any_motif(const std::vector<std::uint16_t>& codes,
                        const std::vector<std::string>& motifs) {
    return std::any_of(motifs.begin(), motifs.end(),
                       [&](const std::string& m) { return contains_motif(codes, m); });
}

std::vector<std::uint16_t> random_codes(Rng& rng, std::size_t len, const std::string& alphabet) {
    std::vector<std::uint16_t> codes(len);
    for (auto& c : codes) {
        c = static_cast<unsigned char>(alphabet[rng.below(alphabet.size())]);
    }
    return codes;
}

}  // namespace

std::vector<LabeledExample> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_examples == 0) throw DataError("generate_synthetic: n_examples is zero");
    if (spec.malicious_fraction < 0.0 || spec.malicious_fraction > 1.0) {
        throw DataError("generate_synthetic: malicious_fraction outside [0,1]");
    }
    if (spec.min_length == 0 || spec.min_length > spec.max_length) {
        throw DataError("generate_synthetic: invalid length range");
    }
    if (spec.motif_set.empty()) throw DataError("generate_synthetic: empty motif set");
    if (spec.noise_alphabet.empty()) throw DataError("generate_synthetic: empty noise alphabet");
    for (const std::string& m : spec.motif_set) {
        if (m.empty() || m.size() > spec.min_length) {
            throw DataError("generate_synthetic: motif longer than min length");
        }
    }

    const auto n_malicious = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.n_examples) * spec.malicious_fraction));

    std::vector<int> labels(spec.n_examples, 0);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n_malicious), 1);
    Rng rng(spec.seed);
    rng.shuffle(labels);

    std::vector<LabeledExample> out;
    out.reserve(spec.n_examples);
    for (std::size_t i = 0; i < spec.n_examples; ++i) {
        const std::size_t len =
            spec.min_length + rng.below(spec.max_length - spec.min_length + 1);
        std::vector<std::uint16_t> codes;
        if (labels[i] == 1) {
            codes = random_codes(rng, len, spec.noise_alphabet);
            const std::string& motif = spec.motif_set[rng.below(spec.motif_set.size())];
            const std::size_t pos = rng.below(len - motif.size() + 1);
            for (std::size_t j = 0; j < motif.size(); ++j) {
                codes[pos + j] = static_cast<unsigned char>(motif[j]);
            }
        } else {
            do {
                codes = random_codes(rng, len, spec.noise_alphabet);
            } while (contains_any_motif(codes, spec.motif_set));
        }
        LabeledExample ex;
        ex.sequence.codes = std::move(codes);
        ex.sequence.valid_length = len;
        ex.label = labels[i];
        char buf[32];
        std::snprintf(buf, sizeof(buf), "syn-%06zu", i);
        ex.id = buf;
        out.push_back(std::move(ex));
    }
    return out;
}

std::vector<Minibatch> batches(const std::vector<LabeledExample>& examples,
                               std::size_t batch_size, std::size_t seq_len,
                               std::uint64_t shuffle_seed) {
    if (batch_size == 0) throw DataError("batches: batch_size must be >= 1");
    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(shuffle_seed);
    rng.shuffle(order);

    std::vector<Minibatch> out;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
        const std::size_t b = std::min(batch_size, order.size() - start);
        Minibatch mb;
        mb.seq_len = seq_len;
        mb.padded_codes.assign(b * seq_len, kPadCode);
        mb.valid_lengths.resize(b);
        mb.labels.resize(b);
        mb.ids.resize(b);
        for (std::size_t i = 0; i < b; ++i) {
            const LabeledExample& ex = examples[order[start + i]];
            const std::size_t n = std::min(ex.sequence.valid_length, seq_len);
            std::copy_n(ex.sequence.codes.begin(), n,
                        mb.padded_codes.begin() + static_cast<std::ptrdiff_t>(i * seq_len));
            mb.valid_lengths[i] = n;
            mb.labels[i] = ex.label;
            mb.ids[i] = ex.id;
        }
        out.push_back(std::move(mb));
    }
    return out;
}

SyntheticSpec default_synthetic_spec() {
    SyntheticSpec spec;
    spec.n_examples = 1000;
    spec.malicious_fraction = 0.5;
    spec.motif_set = {"eval(unescape(", "wscript.shell", "activexobject("};
    spec.min_length = 60;
    spec.max_length = 200;
    spec.noise_alphabet = "abcdefghijklmnopqrstuvwxyz0123456789();={}[].,+-*/'\"\n";
    spec.seed = 1;
    return spec;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest: " + manifest_path.string());
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw DataError("manifest line " + std::to_string(lineno) + ": expected <id>,<label>,<path>");
        }
        ManifestEntry e;
        e.id = line.substr(0, c1);
        const std::string label = line.substr(c1 + 1, c2 - c1 - 1);
        if (label != "0" && label != "1") {
            throw DataError("manifest line " + std::to_string(lineno) + ": label must be 0 or 1");
        }
        e.label = label == "1" ? 1 : 0;
        e.path = line.substr(c2 + 1);
        if (e.id.empty() || e.path.empty()) {
            throw DataError("manifest line " + std::to_string(lineno) + ": empty id or path");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<LabeledExample> load_manifest_examples(const std::filesystem::path& manifest_path) {
    const std::filesystem::path base = manifest_path.parent_path();
    std::vector<LabeledExample> out;
    for (const ManifestEntry& e : read_manifest(manifest_path)) {
        LabeledExample ex;
        ex.id = e.id;
        ex.label = e.label;
        ex.sequence = encoded_from_string(read_file(base / e.path));
        out.push_back(std::move(ex));
    }
    return out;
}

void write_corpus(const std::vector<LabeledExample>& examples,
                  const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::string manifest;
    for (const LabeledExample& ex : examples) {
        const std::string filename = ex.id + ".enc";
        atomic_write_file(out_dir / filename, encoded_to_string(ex.sequence));
        manifest += ex.id + "," + std::to_string(ex.label) + "," + filename + "\n";
    }
    atomic_write_file(out_dir / "manifest.csv", manifest);
}

}  // namespace scriptnet
