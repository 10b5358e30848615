#include "scriptnet/normalizer.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "scriptnet/errors.hpp"

namespace scriptnet {

namespace {

bool is_removed_whitespace(unsigned char b) {
    return b == ' ' || b == '\t' || b == '\r' || b == '\v' || b == '\f';
}

}  // namespace

NormalizedScript normalize(const RawScript& raw) {
    NormalizedScript out;
    out.text.reserve(raw.bytes.size());
    for (char ch : raw.bytes) {
        auto b = static_cast<unsigned char>(ch);
        if (b >= 0x80) {
            out.text.push_back('?');
        } else if (is_removed_whitespace(b)) {
            // dropping CR unconditionally collapses CRLF to LF
        } else if (b >= 'A' && b <= 'Z') {
            out.text.push_back(static_cast<char>(b - 'A' + 'a'));
        } else {
            out.text.push_back(static_cast<char>(b));
        }
    }
    return out;
}

EncodedSequence encode(const NormalizedScript& script, std::size_t max_len) {
    EncodedSequence seq;
    const std::size_t n = std::min(script.text.size(), max_len);
    seq.codes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        seq.codes.push_back(static_cast<unsigned char>(script.text[i]));
    }
    seq.valid_length = n;
    return seq;
}

NormalizedScript decode(const EncodedSequence& seq) {
    NormalizedScript out;
    out.text.reserve(seq.valid_length);
    for (std::size_t i = 0; i < seq.valid_length; ++i) {
        if (seq.codes[i] > 127) {
            throw DataError("decode: code " + std::to_string(seq.codes[i]) +
                            " at position " + std::to_string(i) + " is outside US-ASCII");
        }
        out.text.push_back(static_cast<char>(seq.codes[i]));
    }
    return out;
}

void write_encoded(const EncodedSequence& seq, std::ostream& sink) {
    for (std::size_t i = 0; i < seq.valid_length; ++i) {
        if (i > 0) sink << ',';
        sink << seq.codes[i];
    }
}

EncodedSequence read_encoded(std::istream& source) {
    std::string text(std::istreambuf_iterator<char>(source), {});
    return encoded_from_string(text);
}

std::string encoded_to_string(const EncodedSequence& seq) {
    std::ostringstream os;
    write_encoded(seq, os);
    return os.str();
}

EncodedSequence encoded_from_string(const std::string& text) {
    EncodedSequence seq;
    std::size_t i = 0;
    const std::size_t n = text.size();
    // allow a single trailing newline from text editors
    std::size_t end = n;
    while (end > 0 && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
    if (end == 0) return seq;

    while (i < end) {
        std::size_t start = i;
        unsigned value = 0;
        std::size_t digits = 0;
        while (i < end && text[i] >= '0' && text[i] <= '9') {
            value = value * 10 + static_cast<unsigned>(text[i] - '0');
            if (value > 255) throw ParseError("encoded value exceeds 255", start);
            ++i;
            ++digits;
        }
        if (digits == 0) throw ParseError("expected a decimal byte value", i);
        seq.codes.push_back(static_cast<std::uint16_t>(value));
        if (i < end) {
            if (text[i] != ',') throw ParseError("expected ','", i);
            ++i;
            if (i == end) throw ParseError("trailing comma", i - 1);
        }
    }
    seq.valid_length = seq.codes.size();
    return seq;
}

}  // namespace scriptnet
