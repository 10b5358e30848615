#include "scriptnet/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "scriptnet/errors.hpp"
#include "scriptnet/io_util.hpp"

namespace scriptnet {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'C', 'P'};

std::uint32_t crc32(const std::string& data) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    for (unsigned char b : data) c = table[(c ^ b) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

struct Reader {
    const std::string& data;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > data.size()) throw DataError("checkpoint: truncated file");
    }
    std::uint16_t u16() {
        need(2);
        auto v = static_cast<std::uint16_t>(
            static_cast<unsigned char>(data[pos]) |
            (static_cast<unsigned char>(data[pos + 1]) << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    std::string str(std::size_t n) {
        need(n);
        std::string s = data.substr(pos, n);
        pos += n;
        return s;
    }
};

void write_container(const std::filesystem::path& path, ModelKind kind,
                     const std::map<std::string, std::uint64_t>& config,
                     const std::vector<std::pair<std::string, NodePtr<float>>>& tensors) {
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kCheckpointVersion);
    out.push_back(kind == ModelKind::lamp ? 0 : 1);
    put_u32(out, static_cast<std::uint32_t>(config.size()));
    for (const auto& [key, value] : config) {
        put_u16(out, static_cast<std::uint16_t>(key.size()));
        out += key;
        put_u64(out, value);
    }
    put_u32(out, static_cast<std::uint32_t>(tensors.size()));
    for (const auto& [name, tensor] : tensors) {
        put_u16(out, static_cast<std::uint16_t>(name.size()));
        out += name;
        put_u32(out, static_cast<std::uint32_t>(tensor->shape.size()));
        for (std::size_t dim : tensor->shape) put_u64(out, dim);
        for (float v : tensor->values) put_f32(out, v);
    }
    put_u32(out, crc32(out));
    atomic_write_file(path, out);
}

std::map<std::string, std::uint64_t> base_config_map(std::uint64_t epoch, double val_error) {
    return {
        {"meta.epoch", epoch},
        {"meta.validation_error_bits", std::bit_cast<std::uint64_t>(val_error)},
    };
}

template <class Model>
void fill_tensors(Reader& r, std::uint32_t n_tensors, Model& model) {
    auto named = model.named_parameters();
    std::map<std::string, NodePtr<float>> lookup(named.begin(), named.end());
    std::size_t filled = 0;
    for (std::uint32_t i = 0; i < n_tensors; ++i) {
        const std::string name = r.str(r.u16());
        const std::uint32_t ndim = r.u32();
        std::vector<std::size_t> shape(ndim);
        for (auto& d : shape) d = r.u64();
        auto it = lookup.find(name);
        if (it == lookup.end()) throw DataError("checkpoint: unknown tensor " + name);
        it->second->require_shape(shape, "checkpoint tensor " + name);
        for (float& v : it->second->values) v = r.f32();
        ++filled;
    }
    if (filled != lookup.size()) throw DataError("checkpoint: missing tensors");
}

std::uint64_t config_at(const std::map<std::string, std::uint64_t>& cfg, const std::string& key) {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw DataError("checkpoint: missing config key " + key);
    return it->second;
}

}  // namespace

void save_checkpoint(const LampModel<float>& model, const std::filesystem::path& path,
                     std::uint64_t epoch, double validation_error) {
    auto cfg = base_config_map(epoch, validation_error);
    const LampConfig& c = model.config();
    cfg["embed_dim"] = c.embed_dim;
    cfg["hidden"] = c.hidden;
    cfg["lstm_layers"] = c.lstm_layers;
    cfg["classifier_layers"] = c.classifier_layers;
    cfg["classifier_width"] = c.classifier_width;
    cfg["max_len"] = c.max_len;
    write_container(path, ModelKind::lamp, cfg, model.named_parameters());
}

void save_checkpoint(const CpolsModel<float>& model, const std::filesystem::path& path,
                     std::uint64_t epoch, double validation_error) {
    auto cfg = base_config_map(epoch, validation_error);
    const CpolsConfig& c = model.config();
    cfg["embed_dim"] = c.embed_dim;
    cfg["hidden"] = c.hidden;
    cfg["lstm_layers"] = c.lstm_layers;
    cfg["classifier_layers"] = c.classifier_layers;
    cfg["classifier_width"] = c.classifier_width;
    cfg["partition_len"] = c.partition_len;
    cfg["window"] = c.window;
    cfg["stride"] = c.stride;
    cfg["n_filters"] = c.n_filters;
    cfg["max_len"] = c.max_len;
    write_container(path, ModelKind::cpols, cfg, model.named_parameters());
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    if (data.size() < 4 + 4 + 1 + 4) throw DataError("checkpoint: truncated file");
    const std::string body = data.substr(0, data.size() - 4);
    Reader crc_reader{data, data.size() - 4};
    const std::uint32_t stored_crc = crc_reader.u32();
    if (crc32(body) != stored_crc) throw DataError("checkpoint: checksum mismatch");

    Reader r{body};
    if (r.str(4) != std::string(kMagic, 4)) throw DataError("checkpoint: bad magic");
    const std::uint32_t version = r.u32();
    if (version != kCheckpointVersion) {
        throw DataError("checkpoint: unsupported format version " + std::to_string(version) +
                        " (expected " + std::to_string(kCheckpointVersion) + ")");
    }
    r.need(1);
    const unsigned char kind_byte = static_cast<unsigned char>(body[r.pos++]);
    if (kind_byte > 1) throw DataError("checkpoint: unknown model kind");
    const ModelKind kind = kind_byte == 0 ? ModelKind::lamp : ModelKind::cpols;

    std::map<std::string, std::uint64_t> cfg;
    const std::uint32_t n_cfg = r.u32();
    for (std::uint32_t i = 0; i < n_cfg; ++i) {
        const std::string key = r.str(r.u16());
        cfg[key] = r.u64();
    }
    const std::uint32_t n_tensors = r.u32();

    const std::uint64_t epoch = config_at(cfg, "meta.epoch");
    const double val_error =
        std::bit_cast<double>(config_at(cfg, "meta.validation_error_bits"));

    if (kind == ModelKind::lamp) {
        LampConfig c;
        c.embed_dim = config_at(cfg, "embed_dim");
        c.hidden = config_at(cfg, "hidden");
        c.lstm_layers = config_at(cfg, "lstm_layers");
        c.classifier_layers = config_at(cfg, "classifier_layers");
        c.classifier_width = config_at(cfg, "classifier_width");
        c.max_len = config_at(cfg, "max_len");
        LoadedCheckpoint out{LampModel<float>(c, 0), epoch, val_error};
        fill_tensors(r, n_tensors, std::get<LampModel<float>>(out.model));
        if (r.pos != body.size()) throw DataError("checkpoint: trailing bytes");
        return out;
    }
    CpolsConfig c;
    c.embed_dim = config_at(cfg, "embed_dim");
    c.hidden = config_at(cfg, "hidden");
    c.lstm_layers = config_at(cfg, "lstm_layers");
    c.classifier_layers = config_at(cfg, "classifier_layers");
    c.classifier_width = config_at(cfg, "classifier_width");
    c.partition_len = config_at(cfg, "partition_len");
    c.window = config_at(cfg, "window");
    c.stride = config_at(cfg, "stride");
    c.n_filters = config_at(cfg, "n_filters");
    c.max_len = config_at(cfg, "max_len");
    LoadedCheckpoint out{CpolsModel<float>(c, 0), epoch, val_error};
    fill_tensors(r, n_tensors, std::get<CpolsModel<float>>(out.model));
    if (r.pos != body.size()) throw DataError("checkpoint: trailing bytes");
    return out;
}

}  // namespace scriptnet
