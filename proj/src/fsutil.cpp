#include "attnav/fsutil.hpp"

#include <filesystem>
#include <fstream>

#include "attnav/common.hpp"

namespace attnav {

namespace {

void atomic_write_impl(const std::string& path, const char* data, size_t len) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), str("write: cannot open ", tmp.string()));
        out.write(data, static_cast<std::streamsize>(len));
        out.flush();
        require(out.good(), str("write: failed writing ", tmp.string()));
    }
    fs::rename(tmp, target);
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
    atomic_write_impl(path, content.data(), content.size());
}

void atomic_write_file(const std::string& path, const std::vector<uint8_t>& content) {
    atomic_write_impl(path, reinterpret_cast<const char*>(content.data()), content.size());
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), str("read: cannot open ", path));
    std::vector<uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

}  // namespace attnav
