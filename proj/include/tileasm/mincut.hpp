#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace tileasm {

/// Global minimum cut of an undirected graph given as a symmetric weight
/// matrix (Stoer-Wagner, O(n^3)). Returns 0 for a disconnected graph and
/// max() for fewer than two vertices, where no cut exists.
template <typename Weight>
Weight stoer_wagner_min_cut(std::vector<std::vector<Weight>> w) {
    const std::size_t n = w.size();
    if (n < 2) return std::numeric_limits<Weight>::max();

    std::vector<std::size_t> alive(n);
    for (std::size_t i = 0; i < n; ++i) alive[i] = i;
    Weight best = std::numeric_limits<Weight>::max();

    while (alive.size() > 1) {
        // Maximum adjacency ordering over the remaining super-vertices.
        const std::size_t m = alive.size();
        std::vector<Weight> conn(m, Weight{});
        std::vector<bool> added(m, false);
        std::size_t prev = 0, last = 0;
        for (std::size_t step = 0; step < m; ++step) {
            std::size_t pick = m;
            for (std::size_t i = 0; i < m; ++i)
                if (!added[i] && (pick == m || conn[i] > conn[pick])) pick = i;
            added[pick] = true;
            prev = last;
            last = pick;
            if (step + 1 == m) break;
            for (std::size_t i = 0; i < m; ++i)
                if (!added[i]) conn[i] += w[alive[pick]][alive[i]];
        }
        if (conn[last] < best) best = conn[last];

        // Merge `last` into `prev`.
        const std::size_t s = alive[prev], t = alive[last];
        for (std::size_t i = 0; i < n; ++i) {
            w[s][i] += w[t][i];
            w[i][s] = w[s][i];
        }
        w[s][s] = Weight{};
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(last));
    }
    return best;
}

}  // namespace tileasm
