#pragma once

#include <filesystem>
#include <string>

namespace scriptnet {

// Writes via a sibling temp file and renames into place, so interrupted runs
// never leave a half-written file at the target path.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace scriptnet
