#include "ephemera/config.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

namespace ephemera {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_int(std::string_view key, std::string_view value) {
    T out{};
    const auto v = trim(value);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(value) + "'");
    }
    return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = value.find(',', start);
        parts.push_back(trim(value.substr(start, comma - start)));
        if (comma == std::string_view::npos) return parts;
        start = comma + 1;
    }
}

bool parse_bool(std::string_view key, std::string_view value) {
    const auto v = trim(value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(value) + "'");
}

}  // namespace

std::string_view to_string(RobotType t) noexcept {
    static constexpr std::array<std::string_view, kRobotTypeCount> names{"I", "M", "R", "G", "Y", "B"};
    return names[static_cast<std::size_t>(t)];
}

ColorSet innate_colors(RobotType t) noexcept {
    switch (t) {
        case RobotType::I:
            return {};
        case RobotType::M:
            return ColorSet::all();
        case RobotType::R:
            return {Color::Red};
        case RobotType::G:
            return {Color::Green};
        case RobotType::Y:
            return {Color::Yellow};
        case RobotType::B:
            return {Color::Blue};
    }
    return {};
}

ConfigError::ConfigError(const std::string& message, int line, const std::string& file)
    : std::runtime_error((file.empty() ? "" : file + ": ") + (line > 0 ? "line " + std::to_string(line) + ": " : "") +
                         message),
      detail_(message),
      line_(line) {}

int ScenarioConfig::agent_count() const { return std::accumulate(robot_counts.begin(), robot_counts.end(), 0); }

void ScenarioConfig::validate() const {
    auto require = [this](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("scenario '" + name + "': " + what);
    };
    require(!name.empty(), "name must not be empty");
    require(width >= 1 && height >= 1, "grid dimensions must be >= 1");
    require(targets_per_color >= 0, "targets_per_color must be >= 0");
    for (int n : robot_counts) require(n >= 0, "robot counts must be >= 0");
    require(agent_count() >= 1, "at least one robot is required");
    require(memory_duration >= 1, "memory_duration must be >= 1");
    require(max_iterations >= 1, "max_iterations must be >= 1");
    require(sense_radius >= 0, "sense_radius must be >= 0");
    require(comm_radius >= 0, "comm_radius must be >= 0");
    require(query_cooldown >= 0, "query_cooldown must be >= 0");
    require(snapshot_interval >= 1, "snapshot_interval must be >= 1");
    require(trials >= 1, "trials must be >= 1");
}

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    if (key == "name") {
        config.name = std::string(trim(value));
    } else if (key == "grid") {
        const auto parts = split_list(value);
        if (parts.size() != 2) throw ConfigError("grid expects W,H");
        config.width = parse_int<int>(key, parts[0]);
        config.height = parse_int<int>(key, parts[1]);
    } else if (key == "targets_per_color") {
        config.targets_per_color = parse_int<int>(key, value);
    } else if (key == "robots") {
        const auto parts = split_list(value);
        if (parts.size() != kRobotTypeCount) throw ConfigError("robots expects I,M,R,G,Y,B");
        for (std::size_t i = 0; i < kRobotTypeCount; ++i) config.robot_counts[i] = parse_int<int>(key, parts[i]);
    } else if (key == "memory_duration") {
        config.memory_duration = parse_int<Iteration>(key, value);
    } else if (key == "memory_size") {
        const auto v = trim(value);
        if (v == "unlimited") {
            config.memory_size = MemorySize::unlimited();
        } else {
            try {
                config.memory_size = MemorySize::of(parse_int<int>(key, v));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    } else if (key == "capacity_policy") {
        const auto v = trim(value);
        if (v == "reject") {
            config.capacity_policy = CapacityPolicy::RejectWhenFull;
        } else if (v == "evict_oldest") {
            config.capacity_policy = CapacityPolicy::EvictOldest;
        } else {
            throw ConfigError("capacity_policy must be reject or evict_oldest");
        }
    } else if (key == "learning_enabled") {
        config.learning_enabled = parse_bool(key, value);
    } else if (key == "max_iterations") {
        config.max_iterations = parse_int<Iteration>(key, value);
    } else if (key == "sense_radius") {
        config.sense_radius = parse_int<int>(key, value);
    } else if (key == "comm_radius") {
        config.comm_radius = parse_int<int>(key, value);
    } else if (key == "query_cooldown") {
        config.query_cooldown = parse_int<Iteration>(key, value);
    } else if (key == "snapshot_interval") {
        config.snapshot_interval = parse_int<Iteration>(key, value);
    } else if (key == "trials") {
        config.trials = parse_int<int>(key, value);
    } else if (key == "base_seed") {
        config.base_seed = parse_int<std::uint64_t>(key, value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto newline = text.find('\n', start);
        std::string_view line = text.substr(start, newline - start);
        ++line_no;
        start = newline == std::string_view::npos ? text.size() + 1 : newline + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected key=value", line_no);
        try {
            apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
            // each line changes one field, so a violation is pinned to its line
            base.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(e.detail(), line_no);
        }
    }
    base.validate();
    return base;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.detail(), e.line(), path.string());
    }
}

std::string to_config_text(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "name=" << c.name << '\n';
    out << "grid=" << c.width << ',' << c.height << '\n';
    out << "targets_per_color=" << c.targets_per_color << '\n';
    out << "robots=";
    for (std::size_t i = 0; i < kRobotTypeCount; ++i) out << (i ? "," : "") << c.robot_counts[i];
    out << '\n';
    out << "memory_duration=" << c.memory_duration << '\n';
    out << "memory_size=" << c.memory_size.to_string() << '\n';
    out << "capacity_policy=" << (c.capacity_policy == CapacityPolicy::RejectWhenFull ? "reject" : "evict_oldest")
        << '\n';
    out << "learning_enabled=" << (c.learning_enabled ? "true" : "false") << '\n';
    out << "max_iterations=" << c.max_iterations << '\n';
    out << "sense_radius=" << c.sense_radius << '\n';
    out << "comm_radius=" << c.comm_radius << '\n';
    out << "query_cooldown=" << c.query_cooldown << '\n';
    out << "snapshot_interval=" << c.snapshot_interval << '\n';
    out << "trials=" << c.trials << '\n';
    out << "base_seed=" << c.base_seed << '\n';
    return out.str();
}

}  // namespace ephemera
