#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace attnav {

// Builds a message from streamable pieces, e.g. str("got shape ", n).
template <typename... Args>
std::string str(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

}  // namespace attnav
