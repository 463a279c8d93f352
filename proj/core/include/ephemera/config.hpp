#pragma once

/// @file config.hpp
/// @brief Scenario configuration and its key=value file format.
///
///     # comment
///     name=T5K
///     grid=250,250
///     robots=45,5,0,0,0,0        # I,M,R,G,Y,B
///     memory_duration=5000
///     memory_size=unlimited      # or 1..4
///     capacity_policy=reject     # or evict_oldest
///
/// Unspecified keys keep their defaults; unknown keys are errors.

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ephemera/knowledge.hpp"

namespace ephemera {

enum class RobotType : std::uint8_t { I, M, R, G, Y, B };

inline constexpr std::size_t kRobotTypeCount = 6;
inline constexpr std::array<RobotType, kRobotTypeCount> kAllRobotTypes{RobotType::I, RobotType::M, RobotType::R,
                                                                       RobotType::G, RobotType::Y, RobotType::B};

std::string_view to_string(RobotType t) noexcept;

/// Colors a robot type starts with: I none, M all, R/G/Y/B the matching color.
ColorSet innate_colors(RobotType t) noexcept;

struct ScenarioConfig {
    std::string name = "custom";
    int width = 250;
    int height = 250;
    int targets_per_color = 25;
    std::array<int, kRobotTypeCount> robot_counts{45, 5, 0, 0, 0, 0};
    Iteration memory_duration = 20000;
    MemorySize memory_size = MemorySize::unlimited();
    CapacityPolicy capacity_policy = CapacityPolicy::RejectWhenFull;
    bool learning_enabled = true;
    Iteration max_iterations = 20000;
    int sense_radius = 5;
    int comm_radius = 10;
    Iteration query_cooldown = 25;
    Iteration snapshot_interval = 100;
    int trials = 10;
    std::uint64_t base_seed = 42;

    int agent_count() const;
    int target_count() const { return targets_per_color * static_cast<int>(kColorCount); }

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    /// what() renders as "[file: ][line N: ]message".
    ConfigError(const std::string& message, int line = 0, const std::string& file = {});
    int line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    int line_;
};

/// Applies one `key=value` assignment. Throws ConfigError on unknown keys or bad values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path);

/// Renders a config in the file format; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ScenarioConfig& config);

}  // namespace ephemera
