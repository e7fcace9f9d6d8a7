#include "swarmtrack/csv.hpp"

#include <charconv>

namespace swarmtrack {

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string format_real(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string sanitize_csv_field(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
    }
    return out;
}

}  // namespace swarmtrack
