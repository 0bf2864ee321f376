#include "attnav/ppm.hpp"

#include <algorithm>
#include <cmath>

#include "attnav/common.hpp"
#include "attnav/fsutil.hpp"

namespace attnav {

namespace {

constexpr uint8_t kPalette[kNumClasses][3] = {
    {128, 128, 128},  // floor
    {255, 255, 255},  // wall
    {220, 50, 47},    // furniture
};

uint8_t to_byte(double v) { return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

}  // namespace

void write_ppm(const std::string& path, const RgbImage& img) {
    std::string header = str("P6\n", img.width, " ", img.height, "\n255\n");
    std::vector<uint8_t> bytes(header.begin(), header.end());
    bytes.insert(bytes.end(), img.pixels.begin(), img.pixels.end());
    atomic_write_file(path, bytes);
}

RgbImage palette_image(const SemanticFrame& frame) {
    RgbImage img(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            const uint8_t* c = kPalette[frame.at(y, x)];
            img.set(y, x, c[0], c[1], c[2]);
        }
    return img;
}

RgbImage palette_image(const Tensor& class_weights) {
    require(class_weights.shape.size() == 3 && class_weights.shape[0] == kNumClasses,
            "palette_image: expected [3,H,W] class weights");
    int h = class_weights.shape[1], w = class_weights.shape[2];
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double r = 0, g = 0, b = 0;
            for (int c = 0; c < kNumClasses; ++c) {
                double wgt = class_weights.at(c, y, x);
                r += wgt * kPalette[c][0];
                g += wgt * kPalette[c][1];
                b += wgt * kPalette[c][2];
            }
            img.set(y, x, to_byte(r / 255.0), to_byte(g / 255.0), to_byte(b / 255.0));
        }
    return img;
}

RgbImage gray_image(const Tensor& map) {
    require(map.shape.size() == 2, "gray_image: expected [H,W] map");
    int h = map.shape[0], w = map.shape[1];
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            uint8_t v = to_byte(map.at(y, x));
            img.set(y, x, v, v, v);
        }
    return img;
}

RgbImage overlay_image(const SemanticFrame& frame, const Tensor& map) {
    require(map.shape.size() == 2 && map.shape[0] == frame.height && map.shape[1] == frame.width,
            "overlay_image: map size does not match frame");
    RgbImage img(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            const uint8_t* c = kPalette[frame.at(y, x)];
            double m = std::clamp(static_cast<double>(map.at(y, x)), 0.0, 1.0);
            double r = 0.45 * c[0] / 255.0 + 0.55 * m;
            double g = 0.45 * c[1] / 255.0;
            double b = 0.45 * c[2] / 255.0;
            img.set(y, x, to_byte(r), to_byte(g), to_byte(b));
        }
    return img;
}

}  // namespace attnav
