#include "attnav/render.hpp"

#include <cmath>

#include "attnav/common.hpp"

namespace attnav {

SemanticFrame render(const RobotPose& pose, const WorldMap& map, const RenderConfig& cfg) {
    require(map.bounds.contains({pose.x, pose.y}), "render: pose outside map bounds");
    SemanticFrame frame(cfg.width, cfg.height);
    const Vec2 origin{pose.x, pose.y};
    for (int col = 0; col < cfg.width; ++col) {
        // column 0 = leftmost ray; relative angle decreases left to right
        double rel = cfg.fov_rad / 2.0 - (col + 0.5) * cfg.fov_rad / cfg.width;
        double ang = pose.heading + rel;
        Vec2 dir{std::cos(ang), std::sin(ang)};

        auto wall_t = ray_rect_exit(origin, dir, map.bounds);
        require(wall_t.has_value(), "render: ray escaped map bounds");
        double t_hit = *wall_t;
        uint8_t hit_class = kWall;
        for (const auto& f : map.furniture) {
            auto t = ray_rect_hit(origin, dir, f);
            if (t && *t < t_hit) {
                t_hit = *t;
                hit_class = kFurniture;
            }
        }

        double d_perp = std::max(t_hit * std::cos(rel), 1e-6);
        double span = std::min(static_cast<double>(cfg.height), cfg.height_scale / d_perp);
        int top = static_cast<int>(std::floor((cfg.height - span) / 2.0));
        int bot = static_cast<int>(std::ceil((cfg.height + span) / 2.0));
        top = std::max(top, 0);
        bot = std::min(bot, cfg.height);
        for (int y = 0; y < top; ++y) frame.at(y, col) = kWall;
        for (int y = top; y < bot; ++y) frame.at(y, col) = hit_class;
        for (int y = bot; y < cfg.height; ++y) frame.at(y, col) = kFloor;
    }
    return frame;
}

}  // namespace attnav
