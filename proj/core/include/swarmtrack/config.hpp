#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swarmtrack {

enum class TargetPolicy { non_evasive, evasive };
enum class UpdateMode { sync, async };

/// Raised for malformed config text or a config violating a parameter constraint.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every tunable of a simulation run.
///
/// Field defaults are the swarm parameters of the reference campaign: 50 agents
/// in a 25x25 arena, agent speed 0.1, repulsion strength in [2, 12] with
/// exponent 6, explore/track increments 0.1/0.75, inertia 1, social weight 0.5,
/// memory 20 steps and 100000 steps per run. `evade_limit` / `evade_duration`
/// have no reference value and default to 10 / 50.
struct SwarmConfig {
    int n_agents{50};
    double arena_side{25.0};
    int n_targets{1};
    int degree{20};
    double agent_speed{0.1};
    double target_speed{0.2};
    double inertia{1.0};
    double social_weight{0.5};
    double repulsion_min{2.0};
    double repulsion_max{12.0};
    int repulsion_exponent{6};
    double delta_explore{0.1};
    double delta_track{0.75};
    std::int64_t memory_length{20};
    /// Detection / coverage radius; unset means arena_side / 25.
    std::optional<double> target_radius;
    int evade_limit{10};
    int evade_duration{50};
    std::int64_t horizon{100000};
    std::uint64_t seed{1};
    TargetPolicy target_policy{TargetPolicy::evasive};
    UpdateMode update_mode{UpdateMode::sync};
    /// Leading steps excluded from the metric sums.
    std::int64_t warmup{0};

    [[nodiscard]] double radius() const noexcept {
        return target_radius ? *target_radius : arena_side / 25.0;
    }
};

/// Throws ConfigError naming the first violated constraint.
void validate_config(const SwarmConfig& cfg);

/// Returns `cfg` unchanged when it satisfies every constraint.
[[nodiscard]] SwarmConfig validated(SwarmConfig cfg);

/// Stable key names accepted by set_config_value, in canonical order.
[[nodiscard]] const std::vector<std::string_view>& config_keys();

/// Assigns one field from its textual form. Unknown keys and unparsable values throw.
void set_config_value(SwarmConfig& cfg, std::string_view key, std::string_view value);

/// Textual value of one field, in the same form set_config_value accepts.
[[nodiscard]] std::string get_config_value(const SwarmConfig& cfg, std::string_view key);

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
/// Keys not in config_keys() are rejected. Does not validate.
[[nodiscard]] SwarmConfig parse_config(std::istream& in, SwarmConfig base = {});
[[nodiscard]] SwarmConfig load_config(const std::filesystem::path& path, SwarmConfig base = {});

/// Applies a `key=value` override as passed on the command line.
void apply_override(SwarmConfig& cfg, std::string_view assignment);

/// Canonical `key = value` rendering; parse_config(to_config_text(c)) == c.
[[nodiscard]] std::string to_config_text(const SwarmConfig& cfg);

/// 16 hex digit FNV-1a hash of the canonical text with `seed` excluded.
/// With `include_degree` false the degree is excluded too, which identifies a
/// series of runs that differ only in k.
[[nodiscard]] std::string fingerprint(const SwarmConfig& cfg, bool include_degree = true);

[[nodiscard]] std::string_view to_string(TargetPolicy p) noexcept;
[[nodiscard]] std::string_view to_string(UpdateMode m) noexcept;
[[nodiscard]] TargetPolicy parse_target_policy(std::string_view text);
[[nodiscard]] UpdateMode parse_update_mode(std::string_view text);

}  // namespace swarmtrack
