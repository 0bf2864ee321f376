#pragma once

#include <cmath>
#include <vector>

#include "attnav/tensor.hpp"

namespace attnav {

template <typename T>
void check_grads_finite(const std::vector<ParamRef<T>>& params) {
    for (const auto& p : params)
        for (T g : p.tensor->grad)
            require(std::isfinite(static_cast<double>(g)),
                    str("optimizer: non-finite gradient in ", p.name));
}

// v <- mu*v - lr*g ; p <- p + v
class SgdMomentum {
public:
    SgdMomentum(double lr, double momentum) : lr_(lr), momentum_(momentum) {}

    double learning_rate() const { return lr_; }
    void set_learning_rate(double lr) { lr_ = lr; }

    void step(const std::vector<ParamRef<float>>& params) {
        check_grads_finite(params);
        if (velocity_.empty())
            for (const auto& p : params) velocity_.emplace_back(p.tensor->data.size(), 0.0f);
        require(velocity_.size() == params.size(), "optimizer: parameter list changed between steps");
        for (size_t i = 0; i < params.size(); ++i) {
            auto& t = *params[i].tensor;
            auto& v = velocity_[i];
            require(v.size() == t.data.size(), str("optimizer: shape of ", params[i].name, " changed"));
            float mu = static_cast<float>(momentum_);
            float lr = static_cast<float>(lr_);
            for (size_t j = 0; j < v.size(); ++j) {
                v[j] = mu * v[j] - lr * t.grad[j];
                t.data[j] += v[j];
            }
        }
    }

private:
    double lr_, momentum_;
    std::vector<std::vector<float>> velocity_;
};

// acc <- rho*acc + (1-rho)*g^2 ; p <- p - lr*g/(sqrt(acc)+eps)
class RmsProp {
public:
    RmsProp(double lr, double decay, double epsilon) : lr_(lr), decay_(decay), eps_(epsilon) {}

    void step(const std::vector<ParamRef<float>>& params) {
        check_grads_finite(params);
        if (acc_.empty())
            for (const auto& p : params) acc_.emplace_back(p.tensor->data.size(), 0.0f);
        require(acc_.size() == params.size(), "optimizer: parameter list changed between steps");
        float rho = static_cast<float>(decay_);
        float lr = static_cast<float>(lr_);
        float eps = static_cast<float>(eps_);
        for (size_t i = 0; i < params.size(); ++i) {
            auto& t = *params[i].tensor;
            auto& a = acc_[i];
            require(a.size() == t.data.size(), str("optimizer: shape of ", params[i].name, " changed"));
            for (size_t j = 0; j < a.size(); ++j) {
                float g = t.grad[j];
                a[j] = rho * a[j] + (1.0f - rho) * g * g;
                t.data[j] -= lr * g / (std::sqrt(a[j]) + eps);
            }
        }
    }

private:
    double lr_, decay_, eps_;
    std::vector<std::vector<float>> acc_;
};

}  // namespace attnav
