#pragma once

#include <string>
#include <vector>

#include "attnav/render.hpp"
#include "attnav/tensor.hpp"

namespace attnav {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // rgb rgb ..., row-major

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3, 0) {}

    void set(int y, int x, uint8_t r, uint8_t g, uint8_t b) {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        pixels[i] = r;
        pixels[i + 1] = g;
        pixels[i + 2] = b;
    }
};

// Binary P6, written atomically.
void write_ppm(const std::string& path, const RgbImage& img);

// Class palette: floor = gray, wall = white, furniture = red.
RgbImage palette_image(const SemanticFrame& frame);

// Palette render of 3-channel class weights (averaged one-hot frames).
RgbImage palette_image(const Tensor& class_weights);

// [0,1] map as 8-bit grayscale.
RgbImage gray_image(const Tensor& map);

// Attention overlay: map drives the red channel over the dimmed frame.
RgbImage overlay_image(const SemanticFrame& frame, const Tensor& map);

}  // namespace attnav
