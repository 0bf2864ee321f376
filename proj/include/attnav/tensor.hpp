#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "attnav/common.hpp"

namespace attnav {

inline std::string shape_str(const std::vector<int>& shape) {
    std::string s = "[";
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

inline int shape_numel(const std::vector<int>& shape) {
    int n = 1;
    for (int d : shape) {
        require(d > 0, str("tensor dimension must be positive, got ", shape_str(shape)));
        n *= d;
    }
    return n;
}

// Shaped row-major value buffer with a paired gradient buffer.
template <typename T>
struct TensorT {
    std::vector<int> shape;
    std::vector<T> data;
    std::vector<T> grad;

    TensorT() = default;

    explicit TensorT(std::vector<int> s)
        : shape(std::move(s)),
          data(static_cast<size_t>(shape_numel(shape)), T(0)),
          grad(data.size(), T(0)) {}

    TensorT(std::vector<int> s, std::vector<T> values) : shape(std::move(s)), data(std::move(values)) {
        require(static_cast<size_t>(shape_numel(shape)) == data.size(),
                str("tensor data length ", data.size(), " does not match shape ", shape_str(shape)));
        grad.assign(data.size(), T(0));
    }

    int numel() const { return static_cast<int>(data.size()); }

    void zero_grad() { std::fill(grad.begin(), grad.end(), T(0)); }

    // [C,H,W] indexing
    T& at(int c, int y, int x) { return data[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x]; }
    T at(int c, int y, int x) const { return data[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x]; }

    // [H,W] indexing
    T& at(int y, int x) { return data[static_cast<size_t>(y) * shape[1] + x]; }
    T at(int y, int x) const { return data[static_cast<size_t>(y) * shape[1] + x]; }

    bool all_finite() const {
        for (T v : data)
            if (!std::isfinite(static_cast<double>(v))) return false;
        return true;
    }

    template <typename U>
    TensorT<U> cast() const {
        TensorT<U> out(shape);
        for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using Tensor = TensorT<float>;
using TensorD = TensorT<double>;

// Named reference to a parameter tensor owned by a layer.
template <typename T>
struct ParamRef {
    std::string name;
    TensorT<T>* tensor;
};

}  // namespace attnav
