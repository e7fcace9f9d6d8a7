#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmtrack/vec2.hpp"

namespace swarmtrack {

/// Directed k-nearest communication graph, one row of k agent indices per agent.
/// Rows are ordered by increasing distance, ties by lower index.
class NeighborTable {
public:
    NeighborTable() = default;
    NeighborTable(std::size_t agents, std::size_t degree)
        : degree_(degree), entries_(agents * degree) {}

    [[nodiscard]] std::size_t size() const noexcept { return degree_ == 0 ? 0 : entries_.size() / degree_; }
    [[nodiscard]] std::size_t degree() const noexcept { return degree_; }

    [[nodiscard]] std::span<const std::uint32_t> operator[](std::size_t agent) const noexcept {
        return {entries_.data() + agent * degree_, degree_};
    }
    [[nodiscard]] std::span<std::uint32_t> row(std::size_t agent) noexcept {
        return {entries_.data() + agent * degree_, degree_};
    }

    void resize(std::size_t agents, std::size_t degree) {
        degree_ = degree;
        entries_.resize(agents * degree);
    }

    friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

private:
    std::size_t degree_{0};
    std::vector<std::uint32_t> entries_;
};

/// Builds the k-nearest table by exhaustive pairwise scan.
/// Throws std::invalid_argument unless 2 <= k <= N-1.
[[nodiscard]] NeighborTable k_nearest(std::span<const Vec2> positions, int k);

/// Same as k_nearest but reuses `table`'s storage.
void k_nearest(std::span<const Vec2> positions, int k, NeighborTable& table);

/// Writes the k nearest neighbors of `agent` into `out` (size k).
void k_nearest_of(std::span<const Vec2> positions, std::size_t agent, std::span<std::uint32_t> out);

}  // namespace swarmtrack
