#pragma once

#include <set>
#include <string>
#include <vector>

#include "tileasm/errors.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/tile_model.hpp"

namespace tileasm {

/// Witness that `assembly` consistently overlaps its translate by `v`.
struct Repetition {
    Assembly assembly;
    Vec v;
    PointSet overlap;  // dom α ∩ dom(α + v)
};

/// First nonzero coordinate made positive.
constexpr Vec canonical_sign(Vec v) noexcept { return (v.dx < 0 || (v.dx == 0 && v.dy < 0)) ? -v : v; }

/// α and α + v overlap and agree on the overlap (v nonzero).
inline bool is_repetition(const Assembly& a, Vec v) {
    if (v.is_zero()) return false;
    bool overlap = false;
    for (const auto& [p, t] : a.tiles()) {
        const std::string* shifted = a.at(p - v);  // (α + v)(p)
        if (!shifted) continue;
        overlap = true;
        if (*shifted != t) return false;
    }
    return overlap;
}

/// All repetition vectors of `a`, one per ± pair, sorted by (dx, dy).
inline std::vector<Repetition> find_repetitions(const Assembly& a) {
    std::set<Vec> candidates;
    for (const auto& [p, _] : a.tiles())
        for (const auto& [q, __] : a.tiles())
            if (p != q) candidates.insert(canonical_sign(p - q));
    std::vector<Repetition> out;
    const PointSet dom = a.domain();
    for (Vec v : candidates)
        if (is_repetition(a, v)) out.push_back({a, v, set_intersection(dom, translate(dom, v))});
    return out;
}

/// Order in which the parts of `b` missing from `a` can be attached: the
/// restrictions of b to the components of dom b \ dom a, smallest point
/// first. Every prefix union a ∪ piece_1 ∪ ... ∪ piece_j is checked to be
/// connected and τ-stable; for producible a and b a failure is a bug.
inline std::vector<Assembly> staged_union_plan(const Assembly& a, const Assembly& b, const TileSystem& sys) {
    if (!consistent(a, b)) throw InvalidInput("assemblies are not consistent");
    const PointSet da = a.domain();
    const PointSet db = b.domain();
    if (!intersects(da, db)) throw InvalidInput("assemblies do not overlap");

    std::vector<Assembly> pieces;
    Assembly current = a;
    for (const Shape& c : connected_components(set_difference(db, da))) {
        pieces.push_back(restriction(b, c.cells()));
        try {
            current = union_assemblies(current, pieces.back());
        } catch (const InvalidInput& e) {
            throw TheoremViolation(std::string("staged union prefix rejected: ") + e.what());
        }
        if (!is_stable(current, sys)) throw TheoremViolation("staged union prefix is not stable");
    }
    return pieces;
}

struct PumpStep {
    Assembly assembly;
    Shape added;  // C1, the cells new in this step
};

struct PumpTrace {
    Vec v;
    std::vector<PumpStep> iterations;
};

/// One growth step for a repetitious assembly α with vector v:
/// C2 = a component of S2 \ S1 missing S0 (S_i = dom α + i·v), C1 = C2 - v,
/// and α' = α ∪ (α + v)↾C1. The result is checked to be connected, stable,
/// repetitious with the same v and strictly larger, and C1 to be a whole
/// component of S1 \ S0; any failure throws TheoremViolation.
inline PumpStep pump_once(const Assembly& a, Vec v, const TileSystem& sys) {
    if (!is_repetition(a, v)) throw InvalidInput("vector is not a repetition of the assembly");
    require_known_tiles(a, sys);

    const Shape s0(a.domain());
    const Shape c2 = find_nonconflicting_component(s0, v);
    const Shape c1 = translate_shape(c2, -v);

    const PointSet s1_minus_s0 = set_difference(translate(s0.cells(), v), s0.cells());
    bool whole = false;
    for (const Shape& c : connected_components(s1_minus_s0)) whole = whole || c == c1;
    if (!whole) throw TheoremViolation("C1 is not a component of S1 \\ S0");

    const Assembly added = restriction(a.translated(v), c1.cells());
    Assembly grown = [&] {
        try {
            return union_assemblies(a, added);
        } catch (const InvalidInput& e) {
            throw TheoremViolation(std::string("pumped union rejected: ") + e.what());
        }
    }();
    if (grown.size() <= a.size()) throw TheoremViolation("pumped assembly did not grow");
    if (!is_stable(grown, sys)) throw TheoremViolation("pumped assembly is not stable");
    if (!is_repetition(grown, v)) throw TheoremViolation("pumped assembly lost the repetition");
    return {std::move(grown), c1};
}

/// `iterations` successive pump_once steps with the same v.
inline PumpTrace pump(const Assembly& a, Vec v, std::size_t iterations, const TileSystem& sys) {
    if (iterations < 1) throw InvalidInput("iterations must be positive");
    PumpTrace trace{v, {}};
    const Assembly* current = &a;
    for (std::size_t i = 0; i < iterations; ++i) {
        trace.iterations.push_back(pump_once(*current, v, sys));
        current = &trace.iterations.back().assembly;
    }
    return trace;
}

/// Membership of canonicalize(a) in an already enumerated producible set.
inline bool certify_producible_small(const Assembly& a, const std::set<Assembly>& producible) {
    return producible.count(canonicalize(a)) != 0;
}

/// canonicalize(a) ∈ enumerate_producible(sys, bound).
inline bool certify_producible_small(const Assembly& a, const TileSystem& sys, std::size_t bound) {
    if (a.size() > bound) throw InvalidInput("assembly is larger than the certification bound");
    require_known_tiles(a, sys);
    return certify_producible_small(a, enumerate_producible(sys, bound));
}

}  // namespace tileasm
