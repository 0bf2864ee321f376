#pragma once

#include <cstdint>
#include <vector>

#include "attnav/tensor.hpp"
#include "attnav/world.hpp"

namespace attnav {

enum SemanticClass : uint8_t { kFloor = 0, kWall = 1, kFurniture = 2 };
inline constexpr int kNumClasses = 3;

// H x W class-index image, the agent's observation.
struct SemanticFrame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> classes;  // row-major, classes[y*width + x]

    SemanticFrame() = default;
    SemanticFrame(int w, int h) : width(w), height(h), classes(static_cast<size_t>(w) * h, kFloor) {}

    uint8_t& at(int y, int x) { return classes[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int y, int x) const { return classes[static_cast<size_t>(y) * width + x]; }

    bool operator==(const SemanticFrame&) const = default;
};

struct RenderConfig {
    int width = 64;
    int height = 64;
    double fov_rad = std::numbers::pi / 2.0;  // horizontal field of view
    double height_scale = 48.0;               // span pixels = height_scale / perpendicular distance
};

// Column raycaster. Each column's ray hits a wall or furniture block; the hit
// paints a vertical span centered on the horizon, height inversely
// proportional to perpendicular distance. Above the span is wall, below is
// floor. Column 0 is the leftmost ray (positive relative angle).
SemanticFrame render(const RobotPose& pose, const WorldMap& map, const RenderConfig& cfg);

// 3-channel one-hot encoding, the network input.
template <typename T>
TensorT<T> encode_frame(const SemanticFrame& f) {
    TensorT<T> t({kNumClasses, f.height, f.width});
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) t.at(f.at(y, x), y, x) = T(1);
    return t;
}

}  // namespace attnav
