#include "attnav/world.hpp"

#include <fstream>
#include <queue>
#include <sstream>

#include "attnav/common.hpp"

namespace attnav {

bool pose_collides(const WorldMap& map, double x, double y, double radius) {
    Vec2 p{x, y};
    if (!map.bounds.deflated(radius).contains(p)) return true;
    for (const auto& f : map.furniture)
        if (f.inflated(radius).contains(p)) return true;
    return false;
}

void WorldMap::validate(double robot_radius) const {
    require(bounds.valid() && bounds.width() > 0 && bounds.height() > 0, "map: degenerate bounds");
    for (const auto& f : furniture) {
        require(f.valid(), "map: degenerate furniture rectangle");
        require(f.x0 >= bounds.x0 && f.y0 >= bounds.y0 && f.x1 <= bounds.x1 && f.y1 <= bounds.y1,
                str("map: furniture [", f.x0, ",", f.y0, ",", f.x1, ",", f.y1, "] outside bounds"));
    }
    // Flood fill over a coarse occupancy grid to confirm the free space a
    // robot can occupy is a single connected region.
    const double cell = 0.1;
    int nx = std::max(1, static_cast<int>(bounds.width() / cell));
    int ny = std::max(1, static_cast<int>(bounds.height() / cell));
    std::vector<uint8_t> free(static_cast<size_t>(nx) * ny, 0);
    auto center = [&](int ix, int iy) {
        return Vec2{bounds.x0 + (ix + 0.5) * bounds.width() / nx,
                    bounds.y0 + (iy + 0.5) * bounds.height() / ny};
    };
    int free_count = 0, seed = -1;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Vec2 c = center(ix, iy);
            if (!pose_collides(*this, c.x, c.y, robot_radius)) {
                free[iy * nx + ix] = 1;
                ++free_count;
                if (seed < 0) seed = iy * nx + ix;
            }
        }
    require(free_count > 0, "map: no free space for the robot");
    std::vector<uint8_t> seen(free.size(), 0);
    std::queue<int> q;
    q.push(seed);
    seen[seed] = 1;
    int reached = 0;
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        ++reached;
        int ix = cur % nx, iy = cur / nx;
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int jx = ix + dx[k], jy = iy + dy[k];
            if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
            int j = jy * nx + jx;
            if (free[j] && !seen[j]) {
                seen[j] = 1;
                q.push(j);
            }
        }
    }
    require(reached == free_count, "map: free space is disconnected");
}

WorldMap parse_map(const std::string& text, const std::string& origin) {
    WorldMap map;
    bool have_bounds = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        double x0, y0, x1, y1;
        require(static_cast<bool>(ls >> x0 >> y0 >> x1 >> y1),
                str(origin, ":", lineno, ": expected `", tok, " x0 y0 x1 y1`"));
        Rect r{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
        if (tok == "bounds") {
            require(!have_bounds, str(origin, ":", lineno, ": duplicate bounds"));
            map.bounds = r;
            have_bounds = true;
        } else if (tok == "furniture") {
            map.furniture.push_back(r);
        } else {
            throw std::runtime_error(str(origin, ":", lineno, ": unknown record `", tok, "`"));
        }
    }
    require(have_bounds, str(origin, ": missing bounds record"));
    return map;
}

WorldMap load_map(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), str("map: cannot open ", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_map(ss.str(), path);
}

std::string render_map(const WorldMap& map) {
    std::ostringstream os;
    os.precision(17);
    os << "bounds " << map.bounds.x0 << " " << map.bounds.y0 << " " << map.bounds.x1 << " "
       << map.bounds.y1 << "\n";
    for (const auto& f : map.furniture)
        os << "furniture " << f.x0 << " " << f.y0 << " " << f.x1 << " " << f.y1 << "\n";
    return os.str();
}

}  // namespace attnav
