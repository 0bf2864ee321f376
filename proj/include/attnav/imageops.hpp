#pragma once

#include <algorithm>
#include <cmath>

#include "attnav/tensor.hpp"

namespace attnav {

// Bilinear resize of a [H,W] map, corner-aligned so constant maps stay
// constant and extrema at corners are preserved.
template <typename T>
TensorT<T> bilinear_resize(const TensorT<T>& src, int out_h, int out_w) {
    require(src.shape.size() == 2, str("bilinear_resize: expected [H,W], got ", shape_str(src.shape)));
    int in_h = src.shape[0], in_w = src.shape[1];
    TensorT<T> dst({out_h, out_w});
    double sy = out_h > 1 ? static_cast<double>(in_h - 1) / (out_h - 1) : 0.0;
    double sx = out_w > 1 ? static_cast<double>(in_w - 1) / (out_w - 1) : 0.0;
    for (int y = 0; y < out_h; ++y) {
        double fy = y * sy;
        int y0 = static_cast<int>(fy);
        int y1 = std::min(y0 + 1, in_h - 1);
        double wy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            double fx = x * sx;
            int x0 = static_cast<int>(fx);
            int x1 = std::min(x0 + 1, in_w - 1);
            double wx = fx - x0;
            double v = (1 - wy) * ((1 - wx) * src.at(y0, x0) + wx * src.at(y0, x1)) +
                       wy * ((1 - wx) * src.at(y1, x0) + wx * src.at(y1, x1));
            dst.at(y, x) = static_cast<T>(v);
        }
    }
    return dst;
}

// Rescales into [0,1]; a constant map becomes all zeros.
template <typename T>
TensorT<T> minmax_normalize(const TensorT<T>& src) {
    TensorT<T> out = src;
    auto [mn_it, mx_it] = std::minmax_element(src.data.begin(), src.data.end());
    T mn = *mn_it, mx = *mx_it;
    if (mx - mn <= T(0)) {
        std::fill(out.data.begin(), out.data.end(), T(0));
        return out;
    }
    for (auto& v : out.data) v = (v - mn) / (mx - mn);
    return out;
}

// Mass-weighted mean column index of a [H,W] map; center column for an
// all-zero map.
template <typename T>
double mean_mass_column(const TensorT<T>& map) {
    require(map.shape.size() == 2, "mean_mass_column: expected [H,W]");
    double total = 0.0, weighted = 0.0;
    int h = map.shape[0], w = map.shape[1];
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = map.at(y, x);
            total += v;
            weighted += v * x;
        }
    if (total <= 0.0) return (w - 1) / 2.0;
    return weighted / total;
}

// Per-pixel mean absolute difference (normalized L1).
template <typename T>
double mean_abs_diff(const TensorT<T>& a, const TensorT<T>& b) {
    require(a.shape == b.shape, "mean_abs_diff: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i)
        s += std::abs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]));
    return s / a.data.size();
}

}  // namespace attnav
