#pragma once

#include <string>
#include <vector>

#include "attnav/tensor.hpp"

namespace attnav {

// Binary checkpoint: magic + version, flags (bit0 = trunk frozen), a manifest
// of (name, shape) in fixed order, a little-endian float32 payload, and a
// trailing SHA-256 over everything before it. save(load(x)) is bitwise.
inline constexpr uint32_t kCheckpointVersion = 1;

struct CheckpointInfo {
    bool frozen = false;
    std::vector<std::pair<std::string, std::vector<int>>> manifest;
};

std::vector<uint8_t> serialize_checkpoint(const std::vector<ParamRef<float>>& params, bool frozen);

void save_checkpoint(const std::string& path, const std::vector<ParamRef<float>>& params, bool frozen);

// Reads manifest + flags without loading parameter data.
CheckpointInfo peek_checkpoint(const std::string& path);

// Verifies checksum, version, and manifest-vs-architecture compatibility,
// then fills the tensors. Missing or mismatched parameters are named in the
// diagnostic.
CheckpointInfo load_checkpoint(const std::string& path, const std::vector<ParamRef<float>>& params);

// Raw little-endian bytes of the parameter values, in list order. Input for
// parameter-level content hashing.
std::vector<uint8_t> parameter_bytes(const std::vector<ParamRef<float>>& params);

}  // namespace attnav
