#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tileasm/errors.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/mincut.hpp"

namespace tileasm {

enum class Side : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Side, 4> kSides{Side::N, Side::E, Side::S, Side::W};

constexpr Side opposite(Side s) noexcept { return static_cast<Side>((static_cast<int>(s) + 2) % 4); }
constexpr Vec step(Side s) noexcept { return kUnitSteps[static_cast<std::size_t>(s)]; }
constexpr const char* side_name(Side s) noexcept {
    constexpr const char* names[] = {"N", "E", "S", "W"};
    return names[static_cast<int>(s)];
}

/// Reserved glue label for an empty side.
inline const std::string kNullGlue = "null";

/// Symmetric glue interaction strengths; undeclared pairs have strength 0.
class StrengthFn {
public:
    /// Declares str(a, b) = str(b, a) = s. Re-declaring a pair with a
    /// different value (in either order) is rejected, as is any positive
    /// strength on the null glue.
    void set(const std::string& a, const std::string& b, std::int64_t s) {
        if (s < 0) throw InvalidInput("glue strengths must be nonnegative");
        if ((a == kNullGlue || b == kNullGlue) && s != 0)
            throw InvalidInput("the null glue cannot carry strength");
        auto [it, inserted] = table_.emplace(key(a, b), s);
        if (!inserted && it->second != s)
            throw InvalidInput("conflicting strengths declared for glue pair (" + a + ", " + b + ")");
    }

    std::int64_t operator()(const std::string& a, const std::string& b) const {
        auto it = table_.find(key(a, b));
        return it == table_.end() ? 0 : it->second;
    }

    /// Declared pairs with first <= second.
    const std::map<std::pair<std::string, std::string>, std::int64_t>& entries() const noexcept { return table_; }

private:
    static std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
        return a <= b ? std::pair{a, b} : std::pair{b, a};
    }
    std::map<std::pair<std::string, std::string>, std::int64_t> table_;
};

struct TileType {
    std::string name;
    std::array<std::string, 4> glues{kNullGlue, kNullGlue, kNullGlue, kNullGlue};  // N, E, S, W

    const std::string& glue(Side s) const { return glues[static_cast<std::size_t>(s)]; }
    friend bool operator==(const TileType&, const TileType&) = default;
};

/// Tile types, temperature and strength function of a hierarchical system.
class TileSystem {
public:
    TileSystem(std::vector<TileType> tiles, std::int64_t temperature, StrengthFn strength)
        : tiles_(std::move(tiles)), temperature_(temperature), strength_(std::move(strength)) {
        if (temperature_ < 1) throw InvalidInput("temperature must be a positive integer");
        if (tiles_.empty()) throw InvalidInput("tile system needs at least one tile type");
        for (std::size_t i = 0; i < tiles_.size(); ++i)
            if (!index_.emplace(tiles_[i].name, i).second)
                throw InvalidInput("duplicate tile name '" + tiles_[i].name + "'");
        bonds_.resize(tiles_.size() * tiles_.size() * 4);
        for (std::size_t a = 0; a < tiles_.size(); ++a)
            for (std::size_t b = 0; b < tiles_.size(); ++b)
                for (Side s : kSides)
                    bonds_[slot(a, b, s)] = strength_(tiles_[a].glue(s), tiles_[b].glue(opposite(s)));
    }

    const std::vector<TileType>& tiles() const noexcept { return tiles_; }
    std::int64_t temperature() const noexcept { return temperature_; }
    const StrengthFn& strength() const noexcept { return strength_; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const std::string& name) const {
        if (auto i = find(name)) return *i;
        throw InvalidInput("unknown tile type '" + name + "'");
    }

    /// Strength between tile a and tile b placed on a's side s.
    std::int64_t bond(std::size_t a, Side s, std::size_t b) const { return bonds_[slot(a, b, s)]; }

private:
    std::size_t slot(std::size_t a, std::size_t b, Side s) const {
        return (a * tiles_.size() + b) * 4 + static_cast<std::size_t>(s);
    }

    std::vector<TileType> tiles_;
    std::int64_t temperature_;
    StrengthFn strength_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::int64_t> bonds_;
};

/// Finite partial map from lattice points to tile type names whose domain
/// is nonempty and 4-connected.
class Assembly {
public:
    using Map = std::map<Point, std::string>;

    explicit Assembly(Map tiles) : tiles_(std::move(tiles)) {
        if (tiles_.empty()) throw InvalidInput("assembly must be nonempty");
        if (!is_connected(domain())) throw InvalidInput("assembly domain must be 4-connected");
    }
    Assembly(std::initializer_list<std::pair<const Point, std::string>> init) : Assembly(Map(init)) {}

    static Assembly singular(const std::string& tile, Point at = {}) { return Assembly(Map{{at, tile}}); }

    const Map& tiles() const noexcept { return tiles_; }
    std::size_t size() const noexcept { return tiles_.size(); }
    bool contains(Point p) const { return tiles_.count(p) != 0; }

    const std::string* at(Point p) const {
        auto it = tiles_.find(p);
        return it == tiles_.end() ? nullptr : &it->second;
    }

    PointSet domain() const {
        PointSet d;
        for (const auto& [p, _] : tiles_) d.insert(d.end(), p);
        return d;
    }

    Assembly translated(Vec v) const {
        Map m;
        for (const auto& [p, t] : tiles_) m.emplace_hint(m.end(), p + v, t);
        return Assembly(std::move(m), Unchecked{});
    }

    friend bool operator==(const Assembly&, const Assembly&) = default;
    /// Size first, then the placement map.
    friend bool operator<(const Assembly& a, const Assembly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.tiles_ < b.tiles_;
    }

private:
    struct Unchecked {};
    Assembly(Map tiles, Unchecked) : tiles_(std::move(tiles)) {}

    Map tiles_;
};

inline void require_known_tiles(const Assembly& a, const TileSystem& sys) {
    for (const auto& [p, t] : a.tiles()) sys.index_of(t);
}

// ---------------------------------------------------------------------------

struct BindingGraph {
    struct Edge {
        std::size_t u = 0;  // indices into `vertices`, u < v
        std::size_t v = 0;
        std::int64_t weight = 0;
    };
    std::vector<Point> vertices;  // sorted
    std::vector<Edge> edges;
};

/// Grid graph on the occupied cells; every adjacent pair contributes one
/// edge weighted by the strength of the abutting glues (0 edges kept).
inline BindingGraph binding_graph(const Assembly& a, const TileSystem& sys) {
    BindingGraph g;
    std::map<Point, std::size_t> idx;
    for (const auto& [p, t] : a.tiles()) {
        idx.emplace(p, g.vertices.size());
        g.vertices.push_back(p);
    }
    for (const auto& [p, t] : a.tiles()) {
        const std::size_t tp = sys.index_of(t);
        for (Side s : {Side::N, Side::E}) {  // each unordered pair once
            const Point q = p + step(s);
            const std::string* other = a.at(q);
            if (!other) continue;
            g.edges.push_back({idx[p], idx[q], sys.bond(tp, s, sys.index_of(*other))});
        }
    }
    for (auto& e : g.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    return g;
}

/// Weight of the lightest edge cut of the binding graph; max() for a single tile.
inline std::int64_t min_cut_weight(const Assembly& a, const TileSystem& sys) {
    const BindingGraph g = binding_graph(a, sys);
    std::vector<std::vector<std::int64_t>> w(g.vertices.size(), std::vector<std::int64_t>(g.vertices.size(), 0));
    for (const auto& e : g.edges) {
        w[e.u][e.v] += e.weight;
        w[e.v][e.u] += e.weight;
    }
    return stoer_wagner_min_cut(std::move(w));
}

/// Every edge cut of the binding graph carries at least the temperature.
inline bool is_stable(const Assembly& a, const TileSystem& sys) {
    return min_cut_weight(a, sys) >= sys.temperature();
}

inline bool consistent(const Assembly& a, const Assembly& b) {
    const Assembly& small = a.size() <= b.size() ? a : b;
    const Assembly& large = a.size() <= b.size() ? b : a;
    for (const auto& [p, t] : small.tiles())
        if (const std::string* u = large.at(p); u && *u != t) return false;
    return true;
}

inline Assembly union_assemblies(const Assembly& a, const Assembly& b) {
    if (!consistent(a, b)) throw InvalidInput("union of inconsistent assemblies is undefined");
    Assembly::Map m = a.tiles();
    m.insert(b.tiles().begin(), b.tiles().end());
    return Assembly(std::move(m));  // rejects a disconnected union
}

inline Assembly restriction(const Assembly& a, const PointSet& d) {
    Assembly::Map m;
    for (Point p : d) {
        const std::string* t = a.at(p);
        if (!t) throw InvalidInput("restriction set is not inside the assembly domain");
        m.emplace_hint(m.end(), p, *t);
    }
    if (m.empty()) throw InvalidInput("restriction to the empty set");
    if (!is_connected(d)) throw InvalidInput("restriction set is not connected");
    return Assembly(std::move(m));
}

/// Translate so that the domain's minimum x and minimum y are both 0.
inline Assembly canonicalize(const Assembly& a) {
    std::int64_t minx = std::numeric_limits<std::int64_t>::max();
    std::int64_t miny = std::numeric_limits<std::int64_t>::max();
    for (const auto& [p, t] : a.tiles()) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
    }
    return a.translated({-minx, -miny});
}

// ---------------------------------------------------------------------------
// Attachment and bounded producibility

namespace detail {

struct Cell {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::uint32_t tile = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell& a, const Cell& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.tile <=> b.tile;
    }
};

// Assembly as tile indices, cells sorted by (y, x).
using Packed = std::vector<Cell>;

struct PackedHash {
    std::size_t operator()(const Packed& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (const Cell& c : p) {
            for (std::uint64_t part : {static_cast<std::uint64_t>(c.x), static_cast<std::uint64_t>(c.y),
                                       static_cast<std::uint64_t>(c.tile)}) {
                h ^= part + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
        }
        return h;
    }
};

inline Packed pack(const Assembly& a, const TileSystem& sys) {
    Packed out;
    out.reserve(a.size());
    for (const auto& [p, t] : a.tiles()) out.push_back({p.x, p.y, static_cast<std::uint32_t>(sys.index_of(t))});
    return out;
}

inline Assembly unpack(const Packed& p, const TileSystem& sys) {
    Assembly::Map m;
    for (const Cell& c : p) m.emplace_hint(m.end(), Point{c.x, c.y}, sys.tiles()[c.tile].name);
    return Assembly(std::move(m));
}

inline Packed canonical(Packed p) {
    std::int64_t minx = std::numeric_limits<std::int64_t>::max();
    std::int64_t miny = std::numeric_limits<std::int64_t>::max();
    for (const Cell& c : p) {
        minx = std::min(minx, c.x);
        miny = std::min(miny, c.y);
    }
    for (Cell& c : p) {
        c.x -= minx;
        c.y -= miny;
    }
    std::sort(p.begin(), p.end());
    return p;
}

// Dense occupancy grid over a's bounding box.
class Grid {
public:
    explicit Grid(const Packed& a) {
        minx_ = maxx_ = a.front().x;
        miny_ = maxy_ = a.front().y;
        for (const Cell& c : a) {
            minx_ = std::min(minx_, c.x);
            maxx_ = std::max(maxx_, c.x);
            miny_ = std::min(miny_, c.y);
            maxy_ = std::max(maxy_, c.y);
        }
        w_ = maxx_ - minx_ + 1;
        cells_.assign(static_cast<std::size_t>(w_ * (maxy_ - miny_ + 1)), -1);
        for (const Cell& c : a) cells_[index(c.x, c.y)] = static_cast<std::int64_t>(c.tile);
    }

    // Tile index at (x, y) or -1.
    std::int64_t at(std::int64_t x, std::int64_t y) const {
        if (x < minx_ || x > maxx_ || y < miny_ || y > maxy_) return -1;
        return cells_[index(x, y)];
    }

private:
    std::size_t index(std::int64_t x, std::int64_t y) const {
        return static_cast<std::size_t>((y - miny_) * w_ + (x - minx_));
    }
    std::int64_t minx_, maxx_, miny_, maxy_, w_;
    std::vector<std::int64_t> cells_;
};

// Offsets w for which b + w attaches to a: no overlap, and the interface
// (all edges between the two domains) sums to at least the temperature.
inline std::vector<Vec> attach_offsets(const Packed& a, const Packed& b, const TileSystem& sys) {
    const Grid grid(a);
    std::set<Vec> candidates;
    for (const Cell& ca : a)
        for (const Cell& cb : b)
            for (Vec d : kUnitSteps) candidates.insert({ca.x + d.dx - cb.x, ca.y + d.dy - cb.y});

    std::vector<Vec> out;
    for (Vec w : candidates) {
        std::int64_t strength = 0;
        bool overlap = false;
        for (const Cell& cb : b) {
            const std::int64_t x = cb.x + w.dx, y = cb.y + w.dy;
            if (grid.at(x, y) >= 0) {
                overlap = true;
                break;
            }
            for (Side s : kSides) {
                const Vec d = step(s);
                const std::int64_t t = grid.at(x + d.dx, y + d.dy);
                if (t >= 0) strength += sys.bond(cb.tile, s, static_cast<std::size_t>(t));
            }
        }
        if (!overlap && strength >= sys.temperature()) out.push_back(w);
    }
    return out;
}

inline Packed place_union(const Packed& a, const Packed& b, Vec w) {
    Packed u = a;
    for (Cell c : b) {
        c.x += w.dx;
        c.y += w.dy;
        u.push_back(c);
    }
    return canonical(std::move(u));
}

}  // namespace detail

/// Every w such that b + w attaches to a in one two-handed step: the two do
/// not overlap, their domains touch, and the interface cut is τ-stable.
inline std::set<Vec> attachments(const Assembly& a, const Assembly& b, const TileSystem& sys) {
    auto offs = detail::attach_offsets(detail::pack(a, sys), detail::pack(b, sys), sys);
    return {offs.begin(), offs.end()};
}

/// Producible assemblies with at most `max_size` tiles, in canonical form.
/// Closure from the single tiles: every known pair is combined at every
/// stable offset until nothing new appears. Exponential in max_size.
inline std::set<Assembly> enumerate_producible(const TileSystem& sys, std::size_t max_size) {
    if (max_size < 1) throw InvalidInput("max_size must be positive");
    using detail::Packed;
    std::unordered_set<Packed, detail::PackedHash> seen;
    std::vector<Packed> found;
    std::deque<std::size_t> queue;
    auto add = [&](Packed p) {
        if (seen.insert(p).second) {
            found.push_back(std::move(p));
            queue.push_back(found.size() - 1);
        }
    };
    for (std::size_t t = 0; t < sys.tiles().size(); ++t) add(Packed{{0, 0, static_cast<std::uint32_t>(t)}});

    while (!queue.empty()) {
        const std::size_t xi = queue.front();
        queue.pop_front();
        // `found` may grow while pairing; index, don't iterate.
        for (std::size_t yi = 0; yi < found.size(); ++yi) {
            if (found[xi].size() + found[yi].size() > max_size) continue;
            const Packed x = found[xi];
            const Packed y = found[yi];
            for (Vec w : detail::attach_offsets(x, y, sys)) add(detail::place_union(x, y, w));
        }
    }

    std::set<Assembly> out;
    for (const Packed& p : found) out.insert(detail::unpack(p, sys));
    return out;
}

/// True when no producible assembly of at most `probe_size` tiles attaches
/// to `a`. Only a bounded approximation of terminality.
inline bool is_terminal_bounded(const Assembly& a, const TileSystem& sys, std::size_t probe_size) {
    const detail::Packed pa = detail::pack(a, sys);
    for (const Assembly& b : enumerate_producible(sys, probe_size))
        if (!detail::attach_offsets(pa, detail::pack(b, sys), sys).empty()) return false;
    return true;
}

}  // namespace tileasm
