#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace swarmtrack {

/// Splits one CSV line on commas. Fields are never quoted in the formats this
/// library writes; a trailing '\r' is dropped.
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

/// Shortest decimal form that round-trips to the same double.
[[nodiscard]] std::string format_real(double v);

/// Replaces characters that would break a CSV field (',', '"', newlines).
[[nodiscard]] std::string sanitize_csv_field(std::string_view text);

}  // namespace swarmtrack
