#pragma once

#include <cmath>
#include <vector>

#include "attnav/common.hpp"

namespace attnav {

// Log floor keeps the loss finite on saturated softmax outputs.
inline constexpr double kCrossEntropyFloor = 1e-8;

template <typename T>
void check_one_hot(const std::vector<T>& target) {
    int ones = 0;
    for (T v : target) {
        if (v == T(1))
            ++ones;
        else
            require(v == T(0), "cross_entropy: target is not one-hot");
    }
    require(ones == 1, "cross_entropy: target is not one-hot");
}

// -sum_i t_i * log(max(p_i, floor)); probs must be a distribution.
template <typename T>
T cross_entropy(const std::vector<T>& probs, const std::vector<T>& target) {
    require(probs.size() == target.size(), "cross_entropy: size mismatch");
    check_one_hot(target);
    T sum = T(0);
    for (T p : probs) {
        require(p >= T(0), "cross_entropy: negative probability");
        sum += p;
    }
    require(std::abs(static_cast<double>(sum) - 1.0) <= 1e-5, "cross_entropy: probs do not sum to 1");
    T loss = T(0);
    for (size_t i = 0; i < probs.size(); ++i) {
        if (target[i] == T(1))
            loss -= std::log(std::max(probs[i], static_cast<T>(kCrossEntropyFloor)));
    }
    return loss;
}

// Gradient of the cross-entropy w.r.t. pre-softmax logits: p - t.
template <typename T>
std::vector<T> cross_entropy_logit_grad(const std::vector<T>& probs, const std::vector<T>& target) {
    require(probs.size() == target.size(), "cross_entropy_logit_grad: size mismatch");
    std::vector<T> g(probs.size());
    for (size_t i = 0; i < probs.size(); ++i) g[i] = probs[i] - target[i];
    return g;
}

// Huber loss on a residual, delta = 1 by convention for TD regression.
template <typename T>
T huber(T residual, T delta = T(1)) {
    T a = std::abs(residual);
    if (a <= delta) return T(0.5) * residual * residual;
    return delta * (a - T(0.5) * delta);
}

template <typename T>
T huber_grad(T residual, T delta = T(1)) {
    if (residual > delta) return delta;
    if (residual < -delta) return -delta;
    return residual;
}

}  // namespace attnav
