#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace attnav {

// Writes to a temp file in the same directory and renames over the target,
// so readers never observe a half-written artifact.
void atomic_write_file(const std::string& path, const std::string& content);
void atomic_write_file(const std::string& path, const std::vector<uint8_t>& content);

std::vector<uint8_t> read_file_bytes(const std::string& path);

}  // namespace attnav
