#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "scriptnet/corpus.hpp"
#include "scriptnet/errors.hpp"
#include "scriptnet/io_util.hpp"

using namespace scriptnet;

namespace {

std::vector<LabeledExample> dummy_examples(std::size_t n) {
    std::vector<LabeledExample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].id = "ex" + std::to_string(i);
        out[i].label = static_cast<int>(i % 2);
        out[i].sequence.codes = {static_cast<std::uint16_t>(97 + i % 26)};
        out[i].sequence.valid_length = 1;
    }
    return out;
}

std::multiset<std::string> ids_of(const std::vector<LabeledExample>& v) {
    std::multiset<std::string> s;
    for (const auto& e : v) s.insert(e.id);
    return s;
}

bool contains_subsequence(const std::vector<std::uint16_t>& codes, const std::string& motif) {
    if (motif.size() > codes.size()) return false;
    for (std::size_t i = 0; i + motif.size() <= codes.size(); ++i) {
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

}  // namespace

TEST_CASE("split sizes reproduce the published 70/10/20 counts") {
    const auto examples = dummy_examples(296274);
    const auto split = split_dataset(examples, 0.70, 0.10, 0.20, 3);
    CHECK(split.train.size() == 207392);
    CHECK(split.validation.size() == 29627);
    CHECK(split.test.size() == 59255);
}

TEST_CASE("split arithmetic and determinism") {
    const auto examples = dummy_examples(10);
    const auto split = split_dataset(examples, 0.8, 0.1, 0.1, 11);
    CHECK(split.train.size() == 8);
    CHECK(split.validation.size() == 1);
    CHECK(split.test.size() == 1);

    const auto again = split_dataset(examples, 0.8, 0.1, 0.1, 11);
    CHECK(ids_of(split.train) == ids_of(again.train));
    CHECK(ids_of(split.validation) == ids_of(again.validation));
    CHECK(ids_of(split.test) == ids_of(again.test));
}

TEST_CASE("split is disjoint and covers the input") {
    const auto examples = dummy_examples(100);
    const auto split = split_dataset(examples, 0.7, 0.1, 0.2, 5);
    std::multiset<std::string> all = ids_of(split.train);
    for (const auto& e : split.validation) all.insert(e.id);
    for (const auto& e : split.test) all.insert(e.id);
    CHECK(all == ids_of(examples));
    std::set<std::string> unique(all.begin(), all.end());
    CHECK(unique.size() == examples.size());
}

TEST_CASE("split rejects bad input") {
    CHECK_THROWS_AS(split_dataset({}, 0.7, 0.1, 0.2, 1), DataError);
    const auto examples = dummy_examples(10);
    CHECK_THROWS_AS(split_dataset(examples, 0.7, 0.1, 0.1, 1), DataError);
    CHECK_THROWS_AS(split_dataset(examples, 1.0, -0.1, 0.1, 1), DataError);
}

TEST_CASE("synthetic generation plants motifs only in malicious examples") {
    SyntheticSpec spec = default_synthetic_spec();
    spec.n_examples = 100;
    spec.malicious_fraction = 0.5;
    spec.seed = 21;
    const auto examples = generate_synthetic(spec);
    REQUIRE(examples.size() == 100);

    std::size_t malicious = 0;
    for (const auto& ex : examples) {
        const bool has_motif = std::any_of(
            spec.motif_set.begin(), spec.motif_set.end(),
            [&](const std::string& m) { return contains_subsequence(ex.sequence.codes, m); });
        if (ex.label == 1) {
            ++malicious;
            CHECK(has_motif);
        } else {
            CHECK_FALSE(has_motif);
        }
        CHECK(ex.sequence.valid_length >= spec.min_length);
        CHECK(ex.sequence.valid_length <= spec.max_length);
    }
    CHECK(malicious == 50);
}

TEST_CASE("a substring matcher separates the synthetic corpus perfectly") {
    SyntheticSpec spec = default_synthetic_spec();
    spec.n_examples = 200;
    spec.seed = 33;
    for (const auto& ex : generate_synthetic(spec)) {
        const bool predicted = std::any_of(
            spec.motif_set.begin(), spec.motif_set.end(),
            [&](const std::string& m) { return contains_subsequence(ex.sequence.codes, m); });
        CHECK(static_cast<int>(predicted) == ex.label);
    }
}

TEST_CASE("synthetic generation is reproducible and validates its spec") {
    SyntheticSpec spec = default_synthetic_spec();
    spec.n_examples = 50;
    spec.seed = 77;
    const auto a = generate_synthetic(spec);
    const auto b = generate_synthetic(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].sequence == b[i].sequence);
    }

    SyntheticSpec bad = spec;
    bad.min_length = 4;  // shorter than every default motif
    CHECK_THROWS_AS(generate_synthetic(bad), DataError);
}

TEST_CASE("batches cover each example once with padding") {
    const auto examples = dummy_examples(10);
    const auto epoch = batches(examples, 4, 3, 9);
    REQUIRE(epoch.size() == 3);
    CHECK(epoch[0].size() == 4);
    CHECK(epoch[1].size() == 4);
    CHECK(epoch[2].size() == 2);

    std::multiset<std::string> seen;
    for (const auto& mb : epoch) {
        for (std::size_t i = 0; i < mb.size(); ++i) {
            seen.insert(mb.ids[i]);
            CHECK(mb.valid_lengths[i] == 1);
            CHECK(mb.row(i)[1] == kPadCode);
            CHECK(mb.row(i)[2] == kPadCode);
        }
    }
    CHECK(seen == ids_of(examples));

    const auto again = batches(examples, 4, 3, 9);
    for (std::size_t b = 0; b < epoch.size(); ++b) {
        CHECK(epoch[b].ids == again[b].ids);
    }

    CHECK_THROWS_AS(batches(examples, 0, 3, 9), DataError);
}

TEST_CASE("manifest and corpus files round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "scriptnet_corpus_test";
    fs::remove_all(dir);

    SyntheticSpec spec = default_synthetic_spec();
    spec.n_examples = 20;
    spec.seed = 4;
    const auto examples = generate_synthetic(spec);
    write_corpus(examples, dir);

    const auto loaded = load_manifest_examples(dir / "manifest.csv");
    REQUIRE(loaded.size() == examples.size());
    for (std::size_t i = 0; i < examples.size(); ++i) {
        CHECK(loaded[i].id == examples[i].id);
        CHECK(loaded[i].label == examples[i].label);
        CHECK(loaded[i].sequence == examples[i].sequence);
    }

    atomic_write_file(dir / "bad.csv", "# comment\nid-only-line\n");
    CHECK_THROWS_AS(read_manifest(dir / "bad.csv"), DataError);
    atomic_write_file(dir / "badlabel.csv", "a,2,a.enc\n");
    CHECK_THROWS_AS(read_manifest(dir / "badlabel.csv"), DataError);
    fs::remove_all(dir);
}
