#include "swarmtrack/config.hpp"

#include "swarmtrack/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace swarmtrack {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
    Int value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    double value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError("invalid real for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

struct Field {
    std::string_view key;
    std::function<void(SwarmConfig&, std::string_view)> set;
    std::function<std::string(const SwarmConfig&)> get;
};

template <typename Int>
Field int_field(std::string_view key, Int SwarmConfig::*member) {
    return {key,
            [key, member](SwarmConfig& c, std::string_view v) { c.*member = parse_integer<Int>(key, v); },
            [member](const SwarmConfig& c) { return std::to_string(c.*member); }};
}

Field real_field(std::string_view key, double SwarmConfig::*member) {
    return {key, [key, member](SwarmConfig& c, std::string_view v) { c.*member = parse_real(key, v); },
            [member](const SwarmConfig& c) { return format_real(c.*member); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(int_field("n_agents", &SwarmConfig::n_agents));
        f.push_back(real_field("arena_side", &SwarmConfig::arena_side));
        f.push_back(int_field("n_targets", &SwarmConfig::n_targets));
        f.push_back(int_field("degree", &SwarmConfig::degree));
        f.push_back(real_field("agent_speed", &SwarmConfig::agent_speed));
        f.push_back(real_field("target_speed", &SwarmConfig::target_speed));
        f.push_back(real_field("inertia", &SwarmConfig::inertia));
        f.push_back(real_field("social_weight", &SwarmConfig::social_weight));
        f.push_back(real_field("repulsion_min", &SwarmConfig::repulsion_min));
        f.push_back(real_field("repulsion_max", &SwarmConfig::repulsion_max));
        f.push_back(int_field("repulsion_exponent", &SwarmConfig::repulsion_exponent));
        f.push_back(real_field("delta_explore", &SwarmConfig::delta_explore));
        f.push_back(real_field("delta_track", &SwarmConfig::delta_track));
        f.push_back(int_field("memory_length", &SwarmConfig::memory_length));
        f.push_back({"target_radius",
                     [](SwarmConfig& c, std::string_view v) {
                         if (v == "auto") {
                             c.target_radius.reset();
                         } else {
                             c.target_radius = parse_real("target_radius", v);
                         }
                     },
                     [](const SwarmConfig& c) {
                         return c.target_radius ? format_real(*c.target_radius) : std::string("auto");
                     }});
        f.push_back(int_field("evade_limit", &SwarmConfig::evade_limit));
        f.push_back(int_field("evade_duration", &SwarmConfig::evade_duration));
        f.push_back(int_field("horizon", &SwarmConfig::horizon));
        f.push_back(int_field("seed", &SwarmConfig::seed));
        f.push_back({"target_policy",
                     [](SwarmConfig& c, std::string_view v) { c.target_policy = parse_target_policy(v); },
                     [](const SwarmConfig& c) { return std::string(to_string(c.target_policy)); }});
        f.push_back({"update_mode",
                     [](SwarmConfig& c, std::string_view v) { c.update_mode = parse_update_mode(v); },
                     [](const SwarmConfig& c) { return std::string(to_string(c.update_mode)); }});
        f.push_back(int_field("warmup", &SwarmConfig::warmup));
        return f;
    }();
    return table;
}

const Field& find_field(std::string_view key) {
    for (const auto& f : fields()) {
        if (f.key == key) return f;
    }
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

std::string_view to_string(TargetPolicy p) noexcept {
    return p == TargetPolicy::evasive ? "evasive" : "non_evasive";
}

std::string_view to_string(UpdateMode m) noexcept { return m == UpdateMode::sync ? "sync" : "async"; }

TargetPolicy parse_target_policy(std::string_view text) {
    if (text == "evasive") return TargetPolicy::evasive;
    if (text == "non_evasive") return TargetPolicy::non_evasive;
    throw ConfigError("target_policy must be 'evasive' or 'non_evasive', got '" + std::string(text) + "'");
}

UpdateMode parse_update_mode(std::string_view text) {
    if (text == "sync") return UpdateMode::sync;
    if (text == "async") return UpdateMode::async;
    throw ConfigError("update_mode must be 'sync' or 'async', got '" + std::string(text) + "'");
}

void validate_config(const SwarmConfig& c) {
    require(c.n_agents >= 3, "n_agents must be at least 3 so that k in [2, N-1] is non-empty");
    require(c.arena_side > 0.0 && std::isfinite(c.arena_side), "arena_side must be a positive real");
    require(c.n_targets >= 1, "n_targets must be a positive integer");
    require(c.degree >= 2 && c.degree <= c.n_agents - 1,
            "degree k=" + std::to_string(c.degree) + " out of range [2, N-1] with N=" + std::to_string(c.n_agents));
    require(c.agent_speed > 0.0, "agent_speed must be positive");
    require(c.target_speed >= 0.0, "target_speed must be non-negative");
    require(c.inertia >= 0.0, "inertia must be non-negative");
    require(c.social_weight >= 0.0, "social_weight must be non-negative");
    require(c.repulsion_min > 0.0 && c.repulsion_max > 0.0, "repulsion_min and repulsion_max must be positive");
    require(c.repulsion_min <= c.repulsion_max, "repulsion_min must not exceed repulsion_max");
    require(c.repulsion_exponent >= 1, "repulsion_exponent must be a positive integer");
    require(c.delta_explore > 0.0, "delta_explore must be positive");
    require(c.delta_track > 0.0, "delta_track must be positive");
    require(c.memory_length >= 0, "memory_length must be non-negative");
    require(c.radius() > 0.0 && std::isfinite(c.radius()), "target_radius must be positive");
    require(c.radius() <= c.arena_side, "target_radius must not exceed arena_side");
    require(c.evade_limit >= 1, "evade_limit must be a positive integer");
    require(c.evade_duration >= 1, "evade_duration must be a positive integer");
    require(c.horizon >= 0, "horizon must be non-negative");
    require(c.warmup >= 0, "warmup must be non-negative");
}

SwarmConfig validated(SwarmConfig cfg) {
    validate_config(cfg);
    return cfg;
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void set_config_value(SwarmConfig& cfg, std::string_view key, std::string_view value) {
    find_field(trim(key)).set(cfg, trim(value));
}

std::string get_config_value(const SwarmConfig& cfg, std::string_view key) { return find_field(key).get(cfg); }

SwarmConfig parse_config(std::istream& in, SwarmConfig base) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            set_config_value(base, view.substr(0, eq), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SwarmConfig load_config(const std::filesystem::path& path, SwarmConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, std::move(base));
}

void apply_override(SwarmConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::string to_config_text(const SwarmConfig& cfg) {
    std::ostringstream out;
    for (const auto& f : fields()) out << f.key << " = " << f.get(cfg) << '\n';
    return out.str();
}

std::string fingerprint(const SwarmConfig& cfg, bool include_degree) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const auto& f : fields()) {
        if (f.key == "seed" || (!include_degree && f.key == "degree")) continue;
        const std::string entry = std::string(f.key) + '=' + f.get(cfg) + ';';
        for (const unsigned char ch : entry) {
            hash ^= ch;
            hash *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    static constexpr char digits[] = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

}  // namespace swarmtrack
