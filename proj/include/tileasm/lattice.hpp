#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tileasm/errors.hpp"

namespace tileasm {

/// Translation vector on the integer lattice.
struct Vec {
    std::int64_t dx = 0;
    std::int64_t dy = 0;

    constexpr bool is_zero() const noexcept { return dx == 0 && dy == 0; }
    constexpr Vec operator-() const noexcept { return {-dx, -dy}; }
    constexpr Vec operator*(std::int64_t k) const noexcept { return {dx * k, dy * k}; }
    friend constexpr Vec operator+(Vec a, Vec b) noexcept { return {a.dx + b.dx, a.dy + b.dy}; }
    friend constexpr bool operator==(Vec, Vec) noexcept = default;
    friend constexpr auto operator<=>(Vec a, Vec b) noexcept {
        if (auto c = a.dx <=> b.dx; c != 0) return c;
        return a.dy <=> b.dy;
    }
};

/// Point of Z^2. Points order by (y, x); every "smallest point" tie-break in
/// this library uses this order.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr Point operator+(Point p, Vec v) noexcept { return {p.x + v.dx, p.y + v.dy}; }
    friend constexpr Point operator-(Point p, Vec v) noexcept { return {p.x - v.dx, p.y - v.dy}; }
    friend constexpr Vec operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr bool operator==(Point, Point) noexcept = default;
    friend constexpr auto operator<=>(Point a, Point b) noexcept {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

inline std::ostream& operator<<(std::ostream& os, Point p) { return os << '(' << p.x << ',' << p.y << ')'; }
inline std::ostream& operator<<(std::ostream& os, Vec v) { return os << '(' << v.dx << ',' << v.dy << ')'; }

/// The four unit steps of the square lattice, in N, E, S, W order.
inline constexpr std::array<Vec, 4> kUnitSteps{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

using PointSet = std::set<Point>;

inline PointSet translate(const PointSet& points, Vec v) {
    PointSet out;
    for (Point p : points) out.insert(out.end(), p + v);  // order-preserving
    return out;
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline PointSet set_intersection(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline bool intersects(const PointSet& a, const PointSet& b) {
    const PointSet& small = a.size() <= b.size() ? a : b;
    const PointSet& large = a.size() <= b.size() ? b : a;
    return std::any_of(small.begin(), small.end(), [&](Point p) { return large.count(p) != 0; });
}

/// True when `points` is nonempty and 4-connected.
inline bool is_connected(const PointSet& points) {
    if (points.empty()) return false;
    PointSet seen{*points.begin()};
    std::vector<Point> stack{*points.begin()};
    while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (Vec d : kUnitSteps) {
            Point q = p + d;
            if (points.count(q) && seen.insert(q).second) stack.push_back(q);
        }
    }
    return seen.size() == points.size();
}

/// Finite, nonempty, 4-connected set of lattice points.
class Shape {
public:
    explicit Shape(PointSet cells) : cells_(std::move(cells)) {
        if (cells_.empty()) throw InvalidInput("shape must be nonempty");
        if (!is_connected(cells_)) throw InvalidInput("shape must be 4-connected");
    }
    Shape(std::initializer_list<Point> cells) : Shape(PointSet(cells)) {}

    const PointSet& cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    bool contains(Point p) const { return cells_.count(p) != 0; }
    Point min_point() const { return *cells_.begin(); }

    friend bool operator==(const Shape& a, const Shape& b) = default;
    friend auto operator<=>(const Shape& a, const Shape& b) { return a.cells_ <=> b.cells_; }

private:
    struct Unchecked {};
    Shape(PointSet cells, Unchecked) : cells_(std::move(cells)) {}
    friend std::vector<Shape> connected_components(const PointSet&);
    friend Shape translate_shape(const Shape&, Vec);

    PointSet cells_;
};

inline std::ostream& operator<<(std::ostream& os, const Shape& s) {
    os << '{';
    bool first = true;
    for (Point p : s.cells()) {
        os << (first ? "" : ",") << p;
        first = false;
    }
    return os << '}';
}

/// Maximal 4-connected subsets of `points`, ordered by their smallest member.
inline std::vector<Shape> connected_components(const PointSet& points) {
    std::vector<Shape> out;
    PointSet unvisited = points;
    while (!unvisited.empty()) {
        Point start = *unvisited.begin();
        unvisited.erase(unvisited.begin());
        PointSet comp{start};
        std::vector<Point> stack{start};
        while (!stack.empty()) {
            Point p = stack.back();
            stack.pop_back();
            for (Vec d : kUnitSteps) {
                auto it = unvisited.find(p + d);
                if (it == unvisited.end()) continue;
                comp.insert(*it);
                stack.push_back(*it);
                unvisited.erase(it);
            }
        }
        out.push_back(Shape(std::move(comp), Shape::Unchecked{}));
    }
    return out;
}

inline Shape translate_shape(const Shape& s, Vec v) { return Shape(translate(s.cells(), v), Shape::Unchecked{}); }

/// Largest coordinate extent: max(width, height) - 1 of the bounding box.
inline std::int64_t diameter(const PointSet& points) {
    if (points.empty()) return 0;
    auto [minx, maxx] = std::minmax_element(points.begin(), points.end(),
                                            [](Point a, Point b) { return a.x < b.x; });
    return std::max(maxx->x - minx->x, points.rbegin()->y - points.begin()->y);
}

namespace detail {

inline void require_nonzero(Vec v) {
    if (v.is_zero()) throw InvalidInput("translation vector must be nonzero");
}

// S2 \ S1 with S1 = S0 + v and S2 = S0 + 2v.
inline PointSet second_shift_difference(const Shape& s0, Vec v) {
    PointSet s1 = translate(s0.cells(), v);
    PointSet s2 = translate(s0.cells(), v * 2);
    PointSet diff = set_difference(s2, s1);
    // S2 is a translate of the finite S1 by a nonzero vector, so it cannot sit inside it.
    if (diff.empty()) throw TheoremViolation("S2 \\ S1 is empty");
    return diff;
}

}  // namespace detail

/// A connected component of (S0+2v) \ (S0+v) that avoids S0. Such a
/// component always exists; when several do, the one holding the smallest
/// point is returned.
inline Shape find_nonconflicting_component(const Shape& s0, Vec v) {
    detail::require_nonzero(v);
    for (Shape& c : connected_components(detail::second_shift_difference(s0, v)))
        if (!intersects(c.cells(), s0.cells())) return std::move(c);
    throw TheoremViolation("every component of S2 \\ S1 meets S0");
}

struct WalkStep {
    Shape component;
    Point anchor;
    std::int64_t exit_multiplier = 0;
};

struct WalkTrace {
    std::vector<WalkStep> steps;
    Shape final_component;
};

/// Constructive search for a non-conflicting component. Starting from the
/// first component of S2 \ S1 that meets S0, repeatedly pick the smallest
/// point p of (component ∩ S0), take the least n >= 1 with p + n·v outside
/// S1, and move to the component containing p + n·v. Stops at the first
/// component disjoint from S0. Revisiting a component, or landing outside
/// S2 \ S1, throws TheoremViolation.
inline WalkTrace shape_walk(const Shape& s0, Vec v) {
    detail::require_nonzero(v);
    const PointSet s1 = translate(s0.cells(), v);
    std::vector<Shape> comps = connected_components(detail::second_shift_difference(s0, v));

    std::map<Point, std::size_t> owner;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (Point p : comps[i].cells()) owner.emplace(p, i);

    auto meets_s0 = [&](std::size_t i) { return intersects(comps[i].cells(), s0.cells()); };

    std::size_t current = comps.size();
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (meets_s0(i)) {
            current = i;
            break;
        }
    if (current == comps.size()) return WalkTrace{{}, find_nonconflicting_component(s0, v)};

    WalkTrace trace{{}, comps[current]};
    std::vector<bool> visited(comps.size(), false);
    while (true) {
        visited[current] = true;
        PointSet shared = set_intersection(comps[current].cells(), s0.cells());
        Point anchor = *shared.begin();
        std::int64_t n = 1;
        while (s1.count(anchor + v * n)) ++n;
        trace.steps.push_back({comps[current], anchor, n});

        auto it = owner.find(anchor + v * n);
        if (it == owner.end()) throw TheoremViolation("walk left S2 \\ S1");
        current = it->second;
        if (visited[current]) throw TheoremViolation("walk revisited a component");
        if (!meets_s0(current)) {
            trace.final_component = comps[current];
            return trace;
        }
    }
}

}  // namespace tileasm
