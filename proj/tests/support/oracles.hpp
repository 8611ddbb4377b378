#pragma once

// Independent cross-checks used by the test suites.  Everything here is
// computed by a different route than the library code under test: lengths by
// breadth-first word search instead of inversion counting, pairings by
// direct Cartan sums, and so on.

#include <map>
#include <vector>

#include "affqh/rootdata.hpp"

namespace affqh::testing {

// Shortest-word length for every group element, found by BFS over right
// multiplication.  Independent of the inversion count cached on elements.
inline std::map<std::vector<std::int64_t>, int>
word_lengths_by_bfs(const RootSystem& rs) {
    std::map<std::vector<std::int64_t>, int> depth;
    std::vector<WeylElement> frontier{rs.identity()};
    depth[rs.identity().key()] = 0;
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<WeylElement> next;
        for (const WeylElement& w : frontier) {
            for (int i = 1; i <= rs.rank(); ++i) {
                WeylElement u = weyl_mul(rs, w, rs.simple_reflection(i));
                if (depth.count(u.key())) continue;
                depth[u.key()] = d;
                next.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    return depth;
}

} // namespace affqh::testing
