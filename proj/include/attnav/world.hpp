#pragma once

#include <string>
#include <vector>

#include "attnav/geometry.hpp"

namespace attnav {

// Rectangle-obstacle floor plan. Boundary walls are the bounds rectangle
// itself; furniture blocks are axis-aligned rectangles inside it.
struct WorldMap {
    Rect bounds;
    std::vector<Rect> furniture;

    // Checks furniture containment and free-space connectivity for a robot of
    // the given radius. Throws on violation.
    void validate(double robot_radius) const;
};

struct RobotPose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians in (-pi, pi], 0 = +x axis
};

// True when a disc of the given radius centered at (x,y) touches a wall or
// furniture block.
bool pose_collides(const WorldMap& map, double x, double y, double radius);

// Line-oriented plain text: `bounds x0 y0 x1 y1`, `furniture x0 y0 x1 y1`,
// `#` comments. Units are meters.
WorldMap load_map(const std::string& path);
WorldMap parse_map(const std::string& text, const std::string& origin = "<string>");
std::string render_map(const WorldMap& map);

}  // namespace attnav
