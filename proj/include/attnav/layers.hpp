#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "attnav/rng.hpp"
#include "attnav/tensor.hpp"

namespace attnav {

// Fixed layer set, hand-wired into networks (no general autograd). Every
// layer caches what its backward pass needs; forward must precede backward.

template <typename T>
void he_uniform_init(TensorT<T>& w, int fan_in, Rng& rng) {
    double limit = std::sqrt(6.0 / fan_in);
    for (auto& v : w.data) v = static_cast<T>(rng.uniform(-limit, limit));
}

template <typename T>
class Conv2d {
public:
    Conv2d(std::string name, int in_c, int out_c, int kernel, int stride, int pad)
        : name_(std::move(name)), in_c_(in_c), out_c_(out_c), k_(kernel), stride_(stride), pad_(pad),
          weight({out_c, in_c * kernel * kernel}), bias({out_c}) {}

    const std::string& name() const { return name_; }
    static const char* kind() { return "conv2d"; }
    int in_channels() const { return in_c_; }
    int out_channels() const { return out_c_; }

    std::vector<int> out_shape(const std::vector<int>& in) const {
        require(in.size() == 3 && in[0] == in_c_,
                str(name_, ": expected input [", in_c_, ",H,W], got ", shape_str(in)));
        int oh = (in[1] + 2 * pad_ - k_) / stride_ + 1;
        int ow = (in[2] + 2 * pad_ - k_) / stride_ + 1;
        require(oh > 0 && ow > 0, str(name_, ": kernel ", k_, " too large for input ", shape_str(in)));
        return {out_c_, oh, ow};
    }

    void init_weights(Rng& rng) {
        he_uniform_init(weight, in_c_ * k_ * k_, rng);
        std::fill(bias.data.begin(), bias.data.end(), T(0));
    }

    TensorT<T> forward(const TensorT<T>& x) {
        auto os = out_shape(x.shape);
        in_h_ = x.shape[1];
        in_w_ = x.shape[2];
        out_h_ = os[1];
        out_w_ = os[2];
        const int R = in_c_ * k_ * k_;
        const int P = out_h_ * out_w_;
        col_.assign(static_cast<size_t>(R) * P, T(0));
        // im2col with zero padding
        for (int ic = 0; ic < in_c_; ++ic) {
            const T* xc = x.data.data() + static_cast<size_t>(ic) * in_h_ * in_w_;
            for (int ky = 0; ky < k_; ++ky) {
                for (int kx = 0; kx < k_; ++kx) {
                    T* row = col_.data() + (static_cast<size_t>(ic) * k_ * k_ + ky * k_ + kx) * P;
                    for (int oy = 0; oy < out_h_; ++oy) {
                        int sy = oy * stride_ - pad_ + ky;
                        if (sy < 0 || sy >= in_h_) continue;
                        for (int ox = 0; ox < out_w_; ++ox) {
                            int sx = ox * stride_ - pad_ + kx;
                            if (sx < 0 || sx >= in_w_) continue;
                            row[oy * out_w_ + ox] = xc[sy * in_w_ + sx];
                        }
                    }
                }
            }
        }
        TensorT<T> y(os);
        for (int oc = 0; oc < out_c_; ++oc) {
            T* yr = y.data.data() + static_cast<size_t>(oc) * P;
            std::fill(yr, yr + P, bias.data[oc]);
            const T* wr = weight.data.data() + static_cast<size_t>(oc) * R;
            for (int r = 0; r < R; ++r) {
                T w = wr[r];
                const T* cr = col_.data() + static_cast<size_t>(r) * P;
                for (int p = 0; p < P; ++p) yr[p] += w * cr[p];
            }
        }
        has_forward_ = true;
        return y;
    }

    // Accumulates weight/bias grads, returns gradient w.r.t. input.
    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.shape == std::vector<int>({out_c_, out_h_, out_w_}),
                str(name_, ": upstream grad shape ", shape_str(gy.shape), " != output shape [",
                    out_c_, ",", out_h_, ",", out_w_, "]"));
        const int R = in_c_ * k_ * k_;
        const int P = out_h_ * out_w_;
        for (int oc = 0; oc < out_c_; ++oc) {
            const T* gr = gy.data.data() + static_cast<size_t>(oc) * P;
            T bsum = T(0);
            for (int p = 0; p < P; ++p) bsum += gr[p];
            bias.grad[oc] += bsum;
            T* wg = weight.grad.data() + static_cast<size_t>(oc) * R;
            for (int r = 0; r < R; ++r) {
                const T* cr = col_.data() + static_cast<size_t>(r) * P;
                T acc = T(0);
                for (int p = 0; p < P; ++p) acc += gr[p] * cr[p];
                wg[r] += acc;
            }
        }
        // dcol = W^T * gy
        std::vector<T> dcol(static_cast<size_t>(R) * P, T(0));
        for (int r = 0; r < R; ++r) {
            T* dr = dcol.data() + static_cast<size_t>(r) * P;
            for (int oc = 0; oc < out_c_; ++oc) {
                T w = weight.data[static_cast<size_t>(oc) * R + r];
                const T* gr = gy.data.data() + static_cast<size_t>(oc) * P;
                for (int p = 0; p < P; ++p) dr[p] += w * gr[p];
            }
        }
        // col2im scatter
        TensorT<T> dx({in_c_, in_h_, in_w_});
        for (int ic = 0; ic < in_c_; ++ic) {
            T* dxc = dx.data.data() + static_cast<size_t>(ic) * in_h_ * in_w_;
            for (int ky = 0; ky < k_; ++ky) {
                for (int kx = 0; kx < k_; ++kx) {
                    const T* dr = dcol.data() + (static_cast<size_t>(ic) * k_ * k_ + ky * k_ + kx) * P;
                    for (int oy = 0; oy < out_h_; ++oy) {
                        int sy = oy * stride_ - pad_ + ky;
                        if (sy < 0 || sy >= in_h_) continue;
                        for (int ox = 0; ox < out_w_; ++ox) {
                            int sx = ox * stride_ - pad_ + kx;
                            if (sx < 0 || sx >= in_w_) continue;
                            dxc[sy * in_w_ + sx] += dr[oy * out_w_ + ox];
                        }
                    }
                }
            }
        }
        return dx;
    }

    std::vector<ParamRef<T>> parameters() {
        return {{name_ + ".weight", &weight}, {name_ + ".bias", &bias}};
    }

    TensorT<T> weight;  // [out_c, in_c*k*k]
    TensorT<T> bias;    // [out_c]

private:
    std::string name_;
    int in_c_, out_c_, k_, stride_, pad_;
    int in_h_ = 0, in_w_ = 0, out_h_ = 0, out_w_ = 0;
    std::vector<T> col_;
    bool has_forward_ = false;
};

template <typename T>
class FullyConnected {
public:
    FullyConnected(std::string name, int in, int out)
        : name_(std::move(name)), in_(in), out_(out), weight({out, in}), bias({out}) {}

    const std::string& name() const { return name_; }
    static const char* kind() { return "fullyconnected"; }

    std::vector<int> out_shape(const std::vector<int>& in) const {
        require(shape_numel(in) == in_, str(name_, ": expected ", in_, " inputs, got ", shape_str(in)));
        return {out_};
    }

    void init_weights(Rng& rng) {
        he_uniform_init(weight, in_, rng);
        std::fill(bias.data.begin(), bias.data.end(), T(0));
    }

    TensorT<T> forward(const TensorT<T>& x) {
        out_shape(x.shape);
        x_ = x.data;
        TensorT<T> y({out_});
        for (int o = 0; o < out_; ++o) {
            const T* wr = weight.data.data() + static_cast<size_t>(o) * in_;
            T acc = bias.data[o];
            for (int i = 0; i < in_; ++i) acc += wr[i] * x_[i];
            y.data[o] = acc;
        }
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.numel() == out_, str(name_, ": upstream grad shape ", shape_str(gy.shape)));
        TensorT<T> dx({in_});
        for (int o = 0; o < out_; ++o) {
            T g = gy.data[o];
            bias.grad[o] += g;
            T* wg = weight.grad.data() + static_cast<size_t>(o) * in_;
            const T* wr = weight.data.data() + static_cast<size_t>(o) * in_;
            for (int i = 0; i < in_; ++i) {
                wg[i] += g * x_[i];
                dx.data[i] += g * wr[i];
            }
        }
        return dx;
    }

    std::vector<ParamRef<T>> parameters() {
        return {{name_ + ".weight", &weight}, {name_ + ".bias", &bias}};
    }

    TensorT<T> weight;  // [out, in]
    TensorT<T> bias;    // [out]

private:
    std::string name_;
    int in_, out_;
    std::vector<T> x_;
    bool has_forward_ = false;
};

template <typename T>
class Relu {
public:
    explicit Relu(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "relu"; }

    std::vector<int> out_shape(const std::vector<int>& in) const { return in; }

    TensorT<T> forward(const TensorT<T>& x) {
        x_ = x.data;
        TensorT<T> y(x.shape);
        for (size_t i = 0; i < x.data.size(); ++i) y.data[i] = x.data[i] > T(0) ? x.data[i] : T(0);
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.data.size() == x_.size(), str(name_, ": upstream grad size mismatch"));
        TensorT<T> dx(gy.shape);
        for (size_t i = 0; i < x_.size(); ++i) dx.data[i] = x_[i] > T(0) ? gy.data[i] : T(0);
        return dx;
    }

private:
    std::string name_;
    std::vector<T> x_;
    bool has_forward_ = false;
};

template <typename T>
class Sigmoid {
public:
    explicit Sigmoid(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "sigmoid"; }

    std::vector<int> out_shape(const std::vector<int>& in) const { return in; }

    TensorT<T> forward(const TensorT<T>& x) {
        TensorT<T> y(x.shape);
        for (size_t i = 0; i < x.data.size(); ++i)
            y.data[i] = T(1) / (T(1) + std::exp(-x.data[i]));
        y_ = y.data;
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.data.size() == y_.size(), str(name_, ": upstream grad size mismatch"));
        TensorT<T> dx(gy.shape);
        for (size_t i = 0; i < y_.size(); ++i) dx.data[i] = gy.data[i] * y_[i] * (T(1) - y_[i]);
        return dx;
    }

private:
    std::string name_;
    std::vector<T> y_;
    bool has_forward_ = false;
};

// Numerically stable softmax over a flat vector.
template <typename T>
class Softmax {
public:
    explicit Softmax(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "softmax"; }

    std::vector<int> out_shape(const std::vector<int>& in) const { return in; }

    TensorT<T> forward(const TensorT<T>& x) {
        TensorT<T> y(x.shape);
        T m = *std::max_element(x.data.begin(), x.data.end());
        T sum = T(0);
        for (size_t i = 0; i < x.data.size(); ++i) {
            y.data[i] = std::exp(x.data[i] - m);
            sum += y.data[i];
        }
        for (auto& v : y.data) v /= sum;
        y_ = y.data;
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.data.size() == y_.size(), str(name_, ": upstream grad size mismatch"));
        T dot = T(0);
        for (size_t i = 0; i < y_.size(); ++i) dot += gy.data[i] * y_[i];
        TensorT<T> dx(gy.shape);
        for (size_t i = 0; i < y_.size(); ++i) dx.data[i] = y_[i] * (gy.data[i] - dot);
        return dx;
    }

private:
    std::string name_;
    std::vector<T> y_;
    bool has_forward_ = false;
};

// [C,H,W] -> [C], spatial mean per channel.
template <typename T>
class GlobalAvgPool {
public:
    explicit GlobalAvgPool(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "globalavgpool"; }

    std::vector<int> out_shape(const std::vector<int>& in) const {
        require(in.size() == 3, str(name_, ": expected [C,H,W] input, got ", shape_str(in)));
        return {in[0]};
    }

    TensorT<T> forward(const TensorT<T>& x) {
        out_shape(x.shape);
        in_shape_ = x.shape;
        int c = x.shape[0], hw = x.shape[1] * x.shape[2];
        TensorT<T> y({c});
        for (int ch = 0; ch < c; ++ch) {
            T acc = T(0);
            const T* p = x.data.data() + static_cast<size_t>(ch) * hw;
            for (int i = 0; i < hw; ++i) acc += p[i];
            y.data[ch] = acc / static_cast<T>(hw);
        }
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.numel() == in_shape_[0], str(name_, ": upstream grad size mismatch"));
        int hw = in_shape_[1] * in_shape_[2];
        TensorT<T> dx(in_shape_);
        for (int ch = 0; ch < in_shape_[0]; ++ch) {
            T g = gy.data[ch] / static_cast<T>(hw);
            T* p = dx.data.data() + static_cast<size_t>(ch) * hw;
            for (int i = 0; i < hw; ++i) p[i] = g;
        }
        return dx;
    }

private:
    std::string name_;
    std::vector<int> in_shape_;
    bool has_forward_ = false;
};

// Stacks two [*,H,W] maps along the channel axis.
template <typename T>
class ConcatChannels {
public:
    explicit ConcatChannels(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "concat-channels"; }

    TensorT<T> forward(const TensorT<T>& a, const TensorT<T>& b) {
        require(a.shape.size() == 3 && b.shape.size() == 3 && a.shape[1] == b.shape[1] &&
                    a.shape[2] == b.shape[2],
                str(name_, ": spatial sizes differ, ", shape_str(a.shape), " vs ", shape_str(b.shape)));
        c1_ = a.shape[0];
        c2_ = b.shape[0];
        h_ = a.shape[1];
        w_ = a.shape[2];
        TensorT<T> y({c1_ + c2_, h_, w_});
        std::copy(a.data.begin(), a.data.end(), y.data.begin());
        std::copy(b.data.begin(), b.data.end(), y.data.begin() + a.data.size());
        has_forward_ = true;
        return y;
    }

    std::pair<TensorT<T>, TensorT<T>> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.shape == std::vector<int>({c1_ + c2_, h_, w_}),
                str(name_, ": upstream grad shape ", shape_str(gy.shape)));
        TensorT<T> da({c1_, h_, w_});
        TensorT<T> db({c2_, h_, w_});
        std::copy(gy.data.begin(), gy.data.begin() + da.data.size(), da.data.begin());
        std::copy(gy.data.begin() + da.data.size(), gy.data.end(), db.data.begin());
        return {std::move(da), std::move(db)};
    }

private:
    std::string name_;
    int c1_ = 0, c2_ = 0, h_ = 0, w_ = 0;
    bool has_forward_ = false;
};

// Tiles n scalars into n constant maps of a fixed spatial size.
template <typename T>
class BroadcastScalars {
public:
    BroadcastScalars(std::string name, int h, int w) : name_(std::move(name)), h_(h), w_(w) {}
    const std::string& name() const { return name_; }
    static const char* kind() { return "broadcast-scalars"; }

    std::vector<int> out_shape(const std::vector<int>& in) const {
        require(in.size() == 1, str(name_, ": expected flat scalar vector, got ", shape_str(in)));
        return {in[0], h_, w_};
    }

    TensorT<T> forward(const TensorT<T>& x) {
        out_shape(x.shape);
        n_ = x.numel();
        TensorT<T> y({n_, h_, w_});
        for (int c = 0; c < n_; ++c)
            std::fill(y.data.begin() + static_cast<size_t>(c) * h_ * w_,
                      y.data.begin() + static_cast<size_t>(c + 1) * h_ * w_, x.data[c]);
        has_forward_ = true;
        return y;
    }

    TensorT<T> backward(const TensorT<T>& gy) {
        require(has_forward_, str(name_, ": backward called before forward"));
        require(gy.shape == std::vector<int>({n_, h_, w_}),
                str(name_, ": upstream grad shape ", shape_str(gy.shape)));
        TensorT<T> dx({n_});
        for (int c = 0; c < n_; ++c) {
            T acc = T(0);
            const T* p = gy.data.data() + static_cast<size_t>(c) * h_ * w_;
            for (int i = 0; i < h_ * w_; ++i) acc += p[i];
            dx.data[c] = acc;
        }
        return dx;
    }

private:
    std::string name_;
    int h_, w_, n_ = 0;
    bool has_forward_ = false;
};

}  // namespace attnav
