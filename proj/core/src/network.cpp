#include "swarmtrack/network.hpp"

#include <algorithm>
#include <string>

namespace swarmtrack {

namespace {

struct Candidate {
    double dist_sq;
    std::uint32_t index;

    bool operator<(const Candidate& o) const noexcept {
        return dist_sq < o.dist_sq || (dist_sq == o.dist_sq && index < o.index);
    }
};

void check_degree(std::size_t n, int k) {
    // The swarm config narrows this to [2, N-1]; the graph itself is defined from k = 1.
    if (k < 1 || static_cast<std::size_t>(k) + 1 > n) {
        throw std::invalid_argument("k=" + std::to_string(k) + " out of range [1, N-1] with N=" +
                                    std::to_string(n));
    }
}

// Selects the k smallest candidates into `out`, ordered by (distance, index).
void select_nearest(std::vector<Candidate>& candidates, std::span<std::uint32_t> out) {
    const auto k = static_cast<std::ptrdiff_t>(out.size());
    const auto kth = candidates.begin() + k;
    if (kth != candidates.end()) std::nth_element(candidates.begin(), kth - 1, candidates.end());
    std::sort(candidates.begin(), kth);
    for (std::ptrdiff_t i = 0; i < k; ++i) {
        out[static_cast<std::size_t>(i)] = candidates[static_cast<std::size_t>(i)].index;
    }
}

void nearest_into(std::span<const Vec2> positions, std::size_t agent, std::span<std::uint32_t> out,
                  std::vector<Candidate>& scratch) {
    const Vec2 self = positions[agent];
    scratch.clear();
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (j == agent) continue;
        scratch.push_back({distance_sq(self, positions[j]), static_cast<std::uint32_t>(j)});
    }
    select_nearest(scratch, out);
}

}  // namespace

NeighborTable k_nearest(std::span<const Vec2> positions, int k) {
    NeighborTable table;
    k_nearest(positions, k, table);
    return table;
}

void k_nearest(std::span<const Vec2> positions, int k, NeighborTable& table) {
    const std::size_t n = positions.size();
    check_degree(n, k);
    const auto degree = static_cast<std::size_t>(k);
    table.resize(n, degree);

    thread_local std::vector<double> dist_sq;
    thread_local std::vector<double> row_values;
    thread_local std::vector<Candidate> chosen;
    dist_sq.resize(n * n);
    row_values.resize(n - 1);
    chosen.resize(degree);

    // Each pairwise distance is computed once and mirrored.
    for (std::size_t i = 0; i < n; ++i) {
        dist_sq[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance_sq(positions[i], positions[j]);
            dist_sq[i * n + j] = d;
            dist_sq[j * n + i] = d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = dist_sq.data() + i * n;
        std::copy(row, row + i, row_values.begin());
        std::copy(row + i + 1, row + n, row_values.begin() + static_cast<std::ptrdiff_t>(i));
        // k-th smallest distance; everything strictly closer is in, ties at
        // the cutoff are filled by ascending index.
        std::nth_element(row_values.begin(), row_values.begin() + (k - 1), row_values.end());
        const double cutoff = row_values[degree - 1];
        std::size_t strictly_closer = 0;
        for (std::size_t j = 0; j < n; ++j) strictly_closer += (j != i && row[j] < cutoff) ? 1 : 0;
        std::size_t ties_left = degree - strictly_closer;
        std::size_t filled = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (row[j] < cutoff || (row[j] == cutoff && ties_left > 0 && ties_left--)) {
                chosen[filled++] = {row[j], static_cast<std::uint32_t>(j)};
            }
        }
        std::sort(chosen.begin(), chosen.end());
        auto out = table.row(i);
        for (std::size_t m = 0; m < degree; ++m) out[m] = chosen[m].index;
    }
}

void k_nearest_of(std::span<const Vec2> positions, std::size_t agent, std::span<std::uint32_t> out) {
    check_degree(positions.size(), static_cast<int>(out.size()));
    std::vector<Candidate> scratch;
    scratch.reserve(positions.size());
    nearest_into(positions, agent, out, scratch);
}

}  // namespace swarmtrack
