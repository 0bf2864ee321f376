#include "attnav/checkpoint.hpp"

#include <cstring>

#include "attnav/common.hpp"
#include "attnav/fsutil.hpp"
#include "attnav/sha256.hpp"

namespace attnav {

namespace {

constexpr char kMagic[4] = {'A', 'T', 'N', 'V'};

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<uint8_t>& out, float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct Cursor {
    const std::vector<uint8_t>& buf;
    size_t pos = 0;

    void need(size_t n) const {
        require(pos + n <= buf.size(), "checkpoint: truncated file");
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::string string(size_t n) {
        need(n);
        std::string s(buf.begin() + pos, buf.begin() + pos + n);
        pos += n;
        return s;
    }
    uint8_t u8() {
        need(1);
        return buf[pos++];
    }
};

CheckpointInfo parse_header(Cursor& c) {
    require(c.string(4) == std::string(kMagic, 4), "checkpoint: bad magic");
    uint32_t version = c.u32();
    require(version == kCheckpointVersion, str("checkpoint: unknown version ", version));
    CheckpointInfo info;
    info.frozen = c.u8() != 0;
    uint32_t count = c.u32();
    for (uint32_t i = 0; i < count; ++i) {
        uint32_t name_len = c.u32();
        std::string name = c.string(name_len);
        uint32_t ndims = c.u32();
        std::vector<int> dims;
        for (uint32_t d = 0; d < ndims; ++d) dims.push_back(static_cast<int>(c.u32()));
        info.manifest.emplace_back(std::move(name), std::move(dims));
    }
    return info;
}

}  // namespace

std::vector<uint8_t> serialize_checkpoint(const std::vector<ParamRef<float>>& params, bool frozen) {
    std::vector<uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kCheckpointVersion);
    out.push_back(frozen ? 1 : 0);
    put_u32(out, static_cast<uint32_t>(params.size()));
    for (const auto& p : params) {
        put_u32(out, static_cast<uint32_t>(p.name.size()));
        out.insert(out.end(), p.name.begin(), p.name.end());
        put_u32(out, static_cast<uint32_t>(p.tensor->shape.size()));
        for (int d : p.tensor->shape) put_u32(out, static_cast<uint32_t>(d));
    }
    for (const auto& p : params)
        for (float v : p.tensor->data) put_f32(out, v);
    auto digest = sha256(out.data(), out.size());
    out.insert(out.end(), digest.begin(), digest.end());
    return out;
}

void save_checkpoint(const std::string& path, const std::vector<ParamRef<float>>& params,
                     bool frozen) {
    atomic_write_file(path, serialize_checkpoint(params, frozen));
}

CheckpointInfo peek_checkpoint(const std::string& path) {
    auto bytes = read_file_bytes(path);
    require(bytes.size() >= 32, "checkpoint: truncated file");
    Cursor c{bytes};
    return parse_header(c);
}

CheckpointInfo load_checkpoint(const std::string& path, const std::vector<ParamRef<float>>& params) {
    auto bytes = read_file_bytes(path);
    require(bytes.size() >= 32, "checkpoint: truncated file");
    auto digest = sha256(bytes.data(), bytes.size() - 32);
    require(std::equal(digest.begin(), digest.end(), bytes.end() - 32),
            str("checkpoint: checksum mismatch in ", path));

    Cursor c{bytes};
    CheckpointInfo info = parse_header(c);
    size_t payload_start = c.pos;

    // payload offsets (in floats) per manifest entry
    std::vector<size_t> offsets;
    size_t total = 0;
    for (const auto& [name, dims] : info.manifest) {
        offsets.push_back(total);
        size_t n = 1;
        for (int d : dims) n *= static_cast<size_t>(d);
        total += n;
    }
    require(payload_start + total * 4 + 32 == bytes.size(),
            str("checkpoint: payload length mismatch in ", path));

    std::string missing, mismatched;
    std::vector<size_t> src_offset(params.size());
    for (size_t i = 0; i < params.size(); ++i) {
        bool found = false;
        for (size_t j = 0; j < info.manifest.size(); ++j) {
            if (info.manifest[j].first != params[i].name) continue;
            found = true;
            if (info.manifest[j].second != params[i].tensor->shape)
                mismatched += str("\n  ", params[i].name, ": network ",
                                  shape_str(params[i].tensor->shape), ", file ",
                                  shape_str(info.manifest[j].second));
            src_offset[i] = offsets[j];
            break;
        }
        if (!found) missing += str("\n  ", params[i].name);
    }
    require(missing.empty(), str("checkpoint: ", path, " is missing parameters:", missing));
    require(mismatched.empty(), str("checkpoint: shape mismatch in ", path, ":", mismatched));
    require(info.manifest.size() == params.size(),
            str("checkpoint: ", path, " holds ", info.manifest.size(),
                " parameters, network expects ", params.size()));

    for (size_t i = 0; i < params.size(); ++i) {
        Cursor pc{bytes};
        pc.pos = payload_start + src_offset[i] * 4;
        for (auto& v : params[i].tensor->data) v = pc.f32();
    }
    return info;
}

std::vector<uint8_t> parameter_bytes(const std::vector<ParamRef<float>>& params) {
    std::vector<uint8_t> out;
    for (const auto& p : params)
        for (float v : p.tensor->data) put_f32(out, v);
    return out;
}

}  // namespace attnav
