#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>

#include "scriptnet/models.hpp"

namespace scriptnet {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct LoadedCheckpoint {
    std::variant<LampModel<float>, CpolsModel<float>> model;
    std::uint64_t epoch = 0;
    double validation_error = 0.0;

    ModelKind kind() const {
        return std::holds_alternative<LampModel<float>>(model) ? ModelKind::lamp
                                                               : ModelKind::cpols;
    }
};

// Self-describing binary container: named float32 little-endian tensors with
// explicit shapes, the model config, and a whole-file CRC32. Round trips are
// bit-identical; version mismatch and corruption are rejected.
void save_checkpoint(const LampModel<float>& model, const std::filesystem::path& path,
                     std::uint64_t epoch = 0, double validation_error = 0.0);
void save_checkpoint(const CpolsModel<float>& model, const std::filesystem::path& path,
                     std::uint64_t epoch = 0, double validation_error = 0.0);

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace scriptnet
