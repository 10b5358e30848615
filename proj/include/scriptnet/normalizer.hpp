#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace scriptnet {

struct RawScript {
    std::string bytes;
    std::string source_id;
};

// Byte string over the normalized alphabet: no uppercase ASCII, no whitespace
// other than LF, every byte in [0, 127].
struct NormalizedScript {
    std::string text;
    bool operator==(const NormalizedScript&) const = default;
};

// A script as byte codes in [0, 255]. codes beyond valid_length are padding.
struct EncodedSequence {
    std::vector<std::uint16_t> codes;
    std::size_t valid_length = 0;
    bool operator==(const EncodedSequence&) const = default;
};

constexpr std::uint16_t kPadCode = 0;
constexpr std::size_t kVocabSize = 256;

// Strips whitespace except LF, lowercases A-Z, maps bytes >= 0x80 to '?'.
// CRLF collapses to LF; lone CR is dropped. Total and idempotent.
NormalizedScript normalize(const RawScript& raw);

// codes[i] = byte value of text[i], truncated to the first max_len bytes.
EncodedSequence encode(const NormalizedScript& script, std::size_t max_len);

// Inverse of encode over the valid prefix; rejects codes > 127.
NormalizedScript decode(const EncodedSequence& seq);

// Comma-delimited decimal byte values, e.g. "97,98". No trailing comma.
void write_encoded(const EncodedSequence& seq, std::ostream& sink);
EncodedSequence read_encoded(std::istream& source);

std::string encoded_to_string(const EncodedSequence& seq);
EncodedSequence encoded_from_string(const std::string& text);

}  // namespace scriptnet
