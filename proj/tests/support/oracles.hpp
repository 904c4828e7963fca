#pragma once

// Reference implementations used only by the tests. Each one is written
// from the definitions, shares no code with the library beyond its value
// types, and favours obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tileasm/curves.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/rational.hpp"
#include "tileasm/tile_model.hpp"

#ifndef TILEASM_DATA_DIR
#define TILEASM_DATA_DIR "data"
#endif

namespace oracle {

using tileasm::Rational;
using tileasm::RPoint;
using tileasm::RVec;
using Cell = std::pair<std::int64_t, std::int64_t>;  // (x, y)
using Cells = std::set<Cell>;

inline std::string data_path(const std::string& name) { return std::string(TILEASM_DATA_DIR) + "/" + name; }

// --- polyominoes ------------------------------------------------------------

inline Cells normalize(const Cells& s) {
    std::int64_t mx = INT64_MAX, my = INT64_MAX;
    for (auto [x, y] : s) {
        mx = std::min(mx, x);
        my = std::min(my, y);
    }
    Cells out;
    for (auto [x, y] : s) out.insert({x - mx, y - my});
    return out;
}

/// All fixed polyominoes (distinct up to translation only) of each size
/// 1..max_size, grown cell by cell and deduplicated after normalization.
inline std::vector<Cells> fixed_polyominoes(int max_size) {
    std::vector<Cells> all;
    std::set<Cells> level{{{0, 0}}};
    for (int n = 1; n <= max_size; ++n) {
        all.insert(all.end(), level.begin(), level.end());
        std::set<Cells> next;
        for (const Cells& s : level)
            for (auto [x, y] : s)
                for (auto [dx, dy] : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
                    Cell c{x + dx, y + dy};
                    if (s.count(c)) continue;
                    Cells grown = s;
                    grown.insert(c);
                    next.insert(normalize(grown));
                }
        level = std::move(next);
    }
    return all;
}

inline std::int64_t lattice_diameter(const Cells& s) {
    std::int64_t x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
    for (auto [x, y] : s) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    return std::max(x1 - x0, y1 - y0);
}

inline std::vector<Cells> flood_components(const Cells& s) {
    std::vector<Cells> out;
    Cells seen;
    for (const Cell& start : s) {
        if (seen.count(start)) continue;
        Cells comp;
        std::deque<Cell> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            comp.insert({x, y});
            for (auto [dx, dy] : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
                Cell c{x + dx, y + dy};
                if (s.count(c) && !seen.count(c)) {
                    seen.insert(c);
                    queue.push_back(c);
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

/// Components of (S0 + 2v) \ (S0 + v) that miss S0.
inline std::vector<Cells> qualifying_components(const Cells& s0, std::int64_t dx, std::int64_t dy) {
    Cells s1, s2, diff;
    for (auto [x, y] : s0) {
        s1.insert({x + dx, y + dy});
        s2.insert({x + 2 * dx, y + 2 * dy});
    }
    for (const Cell& c : s2)
        if (!s1.count(c)) diff.insert(c);
    std::vector<Cells> out;
    for (const Cells& comp : flood_components(diff)) {
        bool meets = false;
        for (const Cell& c : comp) meets = meets || s0.count(c) != 0;
        if (!meets) out.push_back(comp);
    }
    return out;
}

inline Cells to_cells(const tileasm::PointSet& ps) {
    Cells out;
    for (auto p : ps) out.insert({p.x, p.y});
    return out;
}

inline tileasm::PointSet to_points(const Cells& cs) {
    tileasm::PointSet out;
    for (auto [x, y] : cs) out.insert({x, y});
    return out;
}

// --- binding graph and cuts -------------------------------------------------

struct Edge {
    std::size_t u, v;
    std::int64_t w;
};

/// Edges between 4-adjacent occupied cells with weight str(facing glues),
/// recomputed from the tile definitions.
inline std::vector<Edge> binding_edges(const tileasm::Assembly& a, const tileasm::TileSystem& sys,
                                       std::vector<tileasm::Point>* order = nullptr) {
    std::vector<tileasm::Point> pts;
    for (const auto& [p, _] : a.tiles()) pts.push_back(p);
    auto glues = [&](const std::string& name) {
        for (const auto& t : sys.tiles())
            if (t.name == name) return t.glues;
        throw std::runtime_error("unknown tile");
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto d = pts[j] - pts[i];
            int side_i = -1;  // N E S W
            if (d.dx == 0 && d.dy == 1) side_i = 0;
            if (d.dx == 1 && d.dy == 0) side_i = 1;
            if (d.dx == 0 && d.dy == -1) side_i = 2;
            if (d.dx == -1 && d.dy == 0) side_i = 3;
            if (side_i < 0) continue;
            const auto gi = glues(*a.at(pts[i]));
            const auto gj = glues(*a.at(pts[j]));
            edges.push_back({i, j, sys.strength()(gi[side_i], gj[(side_i + 2) % 4])});
        }
    if (order) *order = pts;
    return edges;
}

/// Minimum over all 2-partitions of the summed weight of crossing edges;
/// nullopt for a single vertex.
inline std::optional<std::int64_t> exhaustive_min_cut(std::size_t n, const std::vector<Edge>& edges) {
    if (n < 2) return std::nullopt;
    std::int64_t best = INT64_MAX;
    // Vertex 0 stays on side 0; every other vertex is a mask bit.
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        auto side = [&](std::size_t v) { return v == 0 ? 0 : static_cast<int>((mask >> (v - 1)) & 1); };
        std::int64_t cut = 0;
        for (const Edge& e : edges)
            if (side(e.u) != side(e.v)) cut += e.w;
        best = std::min(best, cut);
    }
    return best;
}

inline bool exhaustive_is_stable(const tileasm::Assembly& a, const tileasm::TileSystem& sys) {
    const auto cut = exhaustive_min_cut(a.size(), binding_edges(a, sys));
    return !cut || *cut >= sys.temperature();
}

/// Global minimum cut as the least s-t max flow from vertex 0 to every
/// other vertex (Edmonds-Karp on the undirected graph); nullopt for a single
/// vertex. Polynomial, so usable where 2-partition enumeration is too slow.
inline std::optional<std::int64_t> flow_min_cut(std::size_t n, const std::vector<Edge>& edges) {
    if (n < 2) return std::nullopt;
    std::int64_t best = INT64_MAX;
    for (std::size_t t = 1; t < n; ++t) {
        std::vector<std::vector<std::int64_t>> cap(n, std::vector<std::int64_t>(n, 0));
        for (const Edge& e : edges) {
            cap[e.u][e.v] += e.w;
            cap[e.v][e.u] += e.w;
        }
        std::int64_t flow = 0;
        while (true) {
            std::vector<std::size_t> parent(n, n);
            parent[0] = 0;
            std::deque<std::size_t> queue{0};
            while (!queue.empty() && parent[t] == n) {
                const std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t w = 0; w < n; ++w)
                    if (parent[w] == n && cap[u][w] > 0) {
                        parent[w] = u;
                        queue.push_back(w);
                    }
            }
            if (parent[t] == n) break;
            std::int64_t push = INT64_MAX;
            for (std::size_t w = t; w != 0; w = parent[w]) push = std::min(push, cap[parent[w]][w]);
            for (std::size_t w = t; w != 0; w = parent[w]) {
                cap[parent[w]][w] -= push;
                cap[w][parent[w]] += push;
            }
            flow += push;
        }
        best = std::min(best, flow);
    }
    return best;
}

inline bool flow_is_stable(const tileasm::Assembly& a, const tileasm::TileSystem& sys) {
    const auto cut = flow_min_cut(a.size(), binding_edges(a, sys));
    return !cut || *cut >= sys.temperature();
}

/// 4-connectivity of a placement by flood fill.
inline bool connected(const tileasm::Assembly& a) {
    Cells cs;
    for (const auto& [p, _] : a.tiles()) cs.insert({p.x, p.y});
    return flood_components(cs).size() == 1;
}

/// alpha and alpha + v overlap and agree wherever both are defined.
inline bool repetitious(const tileasm::Assembly& a, tileasm::Vec v) {
    bool overlap = false;
    for (const auto& [p, t] : a.tiles()) {
        const tileasm::Point q{p.x + v.dx, p.y + v.dy};
        if (const std::string* u = a.at(q)) {
            overlap = true;
            // (alpha + v)(q) = alpha(p)
            if (*u != t) return false;
        }
    }
    return overlap;
}

/// Producible assemblies up to `max_size` tiles straight from the
/// definition: close the singletons under "place b anywhere next to a
/// without overlap, and the edges crossing between them weigh at least
/// tau". Offsets are scanned over a whole window rather than derived from
/// adjacency. Returned as translation-normalized placement maps.
inline std::set<std::map<Cell, std::string>> brute_producible(const tileasm::TileSystem& sys, std::size_t max_size) {
    using Placement = std::map<Cell, std::string>;
    auto norm = [](const Placement& m) {
        std::int64_t mx = INT64_MAX, my = INT64_MAX;
        for (const auto& [c, _] : m) {
            mx = std::min(mx, c.first);
            my = std::min(my, c.second);
        }
        Placement out;
        for (const auto& [c, t] : m) out[{c.first - mx, c.second - my}] = t;
        return out;
    };
    auto glue = [&](const std::string& tile, int side) {
        for (const auto& t : sys.tiles())
            if (t.name == tile) return t.glues[static_cast<std::size_t>(side)];
        throw std::runtime_error("unknown tile");
    };
    std::set<Placement> all;
    for (const auto& t : sys.tiles()) all.insert(Placement{{Cell{0, 0}, t.name}});
    const std::int64_t span = static_cast<std::int64_t>(max_size) + 1;
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<Placement> snapshot(all.begin(), all.end());
        for (const Placement& a : snapshot)
            for (const Placement& b : snapshot) {
                if (a.size() + b.size() > max_size) continue;
                for (std::int64_t dx = -span; dx <= span; ++dx)
                    for (std::int64_t dy = -span; dy <= span; ++dy) {
                        Placement u = a;
                        bool overlap = false;
                        for (const auto& [c, t] : b) {
                            const Cell d{c.first + dx, c.second + dy};
                            if (u.count(d)) overlap = true;
                            u[d] = t;
                        }
                        if (overlap) continue;
                        std::int64_t interface = 0;
                        bool touching = false;
                        for (const auto& [c, t] : a) {
                            const Cell nb[4] = {{c.first, c.second + 1},
                                                {c.first + 1, c.second},
                                                {c.first, c.second - 1},
                                                {c.first - 1, c.second}};
                            for (int s = 0; s < 4; ++s) {
                                const Cell q{nb[s].first - dx, nb[s].second - dy};
                                auto it = b.find(q);
                                if (it == b.end()) continue;
                                touching = true;
                                interface += sys.strength()(glue(t, s), glue(it->second, (s + 2) % 4));
                            }
                        }
                        if (!touching || interface < sys.temperature()) continue;
                        if (all.insert(norm(u)).second) grew = true;
                    }
            }
    }
    return all;
}

// --- exact segment geometry -------------------------------------------------

inline Rational orient(const RPoint& a, const RPoint& b, const RPoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline bool on_segment(const RPoint& q, const RPoint& a, const RPoint& b) {
    if (orient(a, b, q) != 0) return false;
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

/// Closed segments [a,b] and [c,d] share a point.
inline bool segments_meet(const RPoint& a, const RPoint& b, const RPoint& c, const RPoint& d) {
    const int o1 = orient(a, b, c).sign(), o2 = orient(a, b, d).sign();
    const int o3 = orient(c, d, a).sign(), o4 = orient(c, d, b).sign();
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

inline bool on_polyline(const RPoint& q, const std::vector<RPoint>& pts) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (on_segment(q, pts[i], pts[i + 1])) return true;
    return false;
}

inline std::vector<RPoint> shifted(const std::vector<RPoint>& pts, const RVec& v) {
    std::vector<RPoint> out;
    for (const RPoint& p : pts) out.push_back({p.x + v.dx, p.y + v.dy});
    return out;
}

inline bool polylines_meet(const std::vector<RPoint>& a, const std::vector<RPoint>& b) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
            if (segments_meet(a[i], a[i + 1], b[j], b[j + 1])) return true;
    return false;
}

/// Open polyline without self-intersection: adjacent segments share only
/// their common vertex, others share nothing.
inline bool is_simple_polyline(const std::vector<RPoint>& p) {
    const std::size_t m = p.size() < 2 ? 0 : p.size() - 1;
    if (m == 0) return false;
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i] == p[i + 1]) return false;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1) {
                // Shared vertex p[i+1]; no other contact allowed.
                if (on_segment(p[i], p[j], p[j + 1]) || on_segment(p[j + 1], p[i], p[i + 1])) return false;
                continue;
            }
            if (segments_meet(p[i], p[i + 1], p[j], p[j + 1])) return false;
        }
    }
    return true;
}

// --- random generators ------------------------------------------------------

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Self-avoiding unit-step lattice path from `from` to `to`, biased towards
/// the target; restarts on dead ends. Returned with straight runs merged.
inline std::vector<Cell> random_lattice_path(Rng& rng, Cell from, Cell to, std::size_t max_steps = 400) {
    const Cell steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (true) {
        std::vector<Cell> path{from};
        std::set<Cell> visited{from};
        bool stuck = false;
        while (path.back() != to && !stuck) {
            if (path.size() > max_steps) {
                stuck = true;
                break;
            }
            auto [x, y] = path.back();
            std::vector<std::pair<double, Cell>> options;
            for (auto [dx, dy] : steps) {
                Cell c{x + dx, y + dy};
                if (visited.count(c)) continue;
                const double before = std::abs(double(to.first - x)) + std::abs(double(to.second - y));
                const double after = std::abs(double(to.first - c.first)) + std::abs(double(to.second - c.second));
                options.push_back({after < before ? 3.0 : 1.0, c});
            }
            if (options.empty()) {
                stuck = true;
                break;
            }
            double total = 0;
            for (auto& o : options) total += o.first;
            double r = std::uniform_real_distribution<double>(0, total)(rng);
            Cell pick = options.back().second;
            for (auto& o : options) {
                if (r < o.first) {
                    pick = o.second;
                    break;
                }
                r -= o.first;
            }
            path.push_back(pick);
            visited.insert(pick);
        }
        if (stuck) continue;
        std::vector<Cell> merged{path.front()};
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            const Cell& a = merged.back();
            const Cell& b = path[i];
            const Cell& c = path[i + 1];
            const bool straight = (b.first - a.first) * (c.second - b.second) == (b.second - a.second) * (c.first - b.first);
            if (!straight) merged.push_back(b);
        }
        if (path.size() > 1) merged.push_back(path.back());
        return merged;
    }
}

inline std::vector<RPoint> to_rpoints(const std::vector<Cell>& cells) {
    std::vector<RPoint> out;
    for (auto [x, y] : cells) out.push_back({Rational(x), Rational(y)});
    return out;
}

/// Random rational in [lo, hi] with denominator den.
inline Rational random_rational(Rng& rng, std::int64_t lo, std::int64_t hi, std::int64_t den) {
    return Rational(uniform(rng, lo * den, hi * den), den);
}

}  // namespace oracle
