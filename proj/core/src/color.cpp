#include "ephemera/color.hpp"

namespace ephemera {

std::string_view to_string(Color c) noexcept {
    switch (c) {
        case Color::Red:
            return "Red";
        case Color::Green:
            return "Green";
        case Color::Yellow:
            return "Yellow";
        case Color::Blue:
            return "Blue";
    }
    return "?";
}

std::optional<Color> parse_color(std::string_view name) noexcept {
    for (Color c : kAllColors) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

}  // namespace ephemera
