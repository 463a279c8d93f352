#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ephemera/color.hpp"
#include "ephemera/geometry.hpp"

namespace ephemera {

using TargetId = std::uint32_t;

struct SeenTarget {
    TargetId id = 0;
    Color color = Color::Red;
    Cell pos;
    int distance = 0;
};

/// What one agent senses this iteration. Every listed target is alive and
/// within sense radius (Chebyshev), ordered by ascending target ID.
struct Perception {
    std::vector<SeenTarget> targets;
    bool sees_unknown = false;

    ColorSet visible_colors() const {
        ColorSet s;
        for (const auto& t : targets) s.insert(t.color);
        return s;
    }
    bool sees(Color c) const { return visible_colors().contains(c); }

    /// Nearest visible target of color c; ties go to the lowest target ID.
    std::optional<SeenTarget> nearest(Color c) const {
        std::optional<SeenTarget> best;
        for (const auto& t : targets) {
            if (t.color != c) continue;
            if (!best || t.distance < best->distance) best = t;
        }
        return best;
    }
};

}  // namespace ephemera
