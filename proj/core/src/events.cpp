#include "ephemera/events.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ephemera {
namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 5> kKindNames{{
    {EventKind::Delivery, "delivery"},
    {EventKind::Reject, "reject"},
    {EventKind::Evict, "evict"},
    {EventKind::Forget, "forget"},
    {EventKind::Capture, "capture"},
}};

template <typename T>
T parse_number(std::string_view field, std::string_view line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::invalid_argument("bad number '" + std::string(field) + "' in event line: " + std::string(line));
    }
    return value;
}

}  // namespace

std::string_view to_string(EventKind k) noexcept {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

std::string Event::to_line() const {
    std::string line = std::to_string(t);
    line += ',';
    line += to_string(kind);
    line += ',';
    line += std::to_string(value_of(agent));
    line += ',';
    line += ephemera::to_string(color);
    if (counterpart) {
        line += ',';
        line += std::to_string(value_of(*counterpart));
    }
    return line;
}

Event Event::from_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (fields.size() != 4 && fields.size() != 5) {
        throw std::invalid_argument("event line needs 4 or 5 fields: " + std::string(line));
    }
    Event e;
    e.t = parse_number<Iteration>(fields[0], line);
    bool found = false;
    for (const auto& [kind, name] : kKindNames) {
        if (name == fields[1]) {
            e.kind = kind;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("unknown event kind in: " + std::string(line));
    e.agent = static_cast<AgentId>(parse_number<std::uint32_t>(fields[2], line));
    const auto color = parse_color(fields[3]);
    if (!color) throw std::invalid_argument("unknown color in event line: " + std::string(line));
    e.color = *color;
    if (fields.size() == 5) e.counterpart = static_cast<AgentId>(parse_number<std::uint32_t>(fields[4], line));
    return e;
}

void write_events(std::ostream& out, const std::vector<Event>& events) {
    for (const auto& e : events) out << e.to_line() << '\n';
}

std::vector<Event> read_events(std::istream& in) {
    std::vector<Event> events;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) events.push_back(Event::from_line(line));
    }
    return events;
}

}  // namespace ephemera
