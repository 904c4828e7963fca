#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tileasm/errors.hpp"
#include "tileasm/rational.hpp"

namespace tileasm {

struct RVec {
    Rational dx;
    Rational dy;

    bool is_zero() const noexcept { return dx.is_zero() && dy.is_zero(); }
    RVec operator-() const { return {-dx, -dy}; }
    RVec operator*(const Rational& k) const { return {dx * k, dy * k}; }
    friend bool operator==(const RVec&, const RVec&) = default;
};

struct RPoint {
    Rational x;
    Rational y;

    friend RPoint operator+(const RPoint& p, const RVec& v) { return {p.x + v.dx, p.y + v.dy}; }
    friend RPoint operator-(const RPoint& p, const RVec& v) { return {p.x - v.dx, p.y - v.dy}; }
    friend RVec operator-(const RPoint& a, const RPoint& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const RPoint&, const RPoint&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const RPoint& p) { return os << '(' << p.x << ',' << p.y << ')'; }
inline std::ostream& operator<<(std::ostream& os, const RVec& v) { return os << '(' << v.dx << ',' << v.dy << ')'; }

inline Rational cross(const RVec& a, const RVec& b) { return a.dx * b.dy - a.dy * b.dx; }
inline Rational dot(const RVec& a, const RVec& b) { return a.dx * b.dx + a.dy * b.dy; }

/// Axis-aligned bounding box with closed sides.
struct Box {
    Rational minx, maxx, miny, maxy;

    bool overlaps(const Box& o) const {
        return !(o.minx > maxx || o.maxx < minx || o.miny > maxy || o.maxy < miny);
    }
    Box shifted(const RVec& v) const { return {minx + v.dx, maxx + v.dx, miny + v.dy, maxy + v.dy}; }
};

inline Box segment_box(const RPoint& a, const RPoint& b) {
    return {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
}

/// Smallest parameter t in [0, 1] with a0 + t(a1 - a0) on segment [b0, b1],
/// or nothing when the closed segments are disjoint. Both segments must have
/// positive length.
inline std::optional<Rational> segment_first_hit(const RPoint& a0, const RPoint& a1, const RPoint& b0,
                                                 const RPoint& b1) {
    const RVec d = a1 - a0;
    const RVec e = b1 - b0;
    const RVec w = b0 - a0;
    const Rational denom = cross(d, e);
    if (!denom.is_zero()) {
        Rational t = cross(w, e) / denom;
        Rational u = cross(w, d) / denom;
        if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
        return t;
    }
    if (!cross(w, d).is_zero()) return std::nullopt;  // parallel, distinct lines
    const Rational dd = dot(d, d);
    Rational tb0 = dot(w, d) / dd;
    Rational tb1 = dot(b1 - a0, d) / dd;
    Rational lo = std::min(tb0, tb1);
    Rational hi = std::max(tb0, tb1);
    if (hi < 0 || lo > 1) return std::nullopt;
    return std::max(lo, Rational(0));
}

/// Position along a chain: segment index plus parameter within that segment.
struct ChainPos {
    std::size_t segment = 0;
    Rational t;

    friend bool operator==(const ChainPos&, const ChainPos&) = default;
    friend auto operator<=>(const ChainPos& a, const ChainPos& b) {
        if (auto c = a.segment <=> b.segment; c != 0) return c;
        return a.t <=> b.t;
    }
};

/// Simple polygonal curve with exact rational vertices. A chain whose first
/// and last vertices coincide is a simple closed curve.
class PolyChain {
public:
    explicit PolyChain(std::vector<RPoint> vertices) : vertices_(std::move(vertices)) {
        if (auto problem = check()) throw InvalidInput("invalid polygonal chain: " + *problem);
        compute_box();
    }

    const std::vector<RPoint>& vertices() const noexcept { return vertices_; }
    std::size_t segment_count() const noexcept { return vertices_.size() - 1; }
    const RPoint& front() const noexcept { return vertices_.front(); }
    const RPoint& back() const noexcept { return vertices_.back(); }
    bool is_closed() const noexcept { return vertices_.front() == vertices_.back(); }
    const Box& box() const noexcept { return box_; }

    RPoint at(const ChainPos& pos) const {
        const RPoint& a = vertices_[pos.segment];
        const RPoint& b = vertices_[pos.segment + 1];
        return a + (b - a) * pos.t;
    }

    PolyChain translated(const RVec& offset) const {
        PolyChain out = *this;
        for (RPoint& p : out.vertices_) p = p + offset;
        out.box_ = box_.shifted(offset);
        return out;
    }

    friend bool operator==(const PolyChain& a, const PolyChain& b) { return a.vertices_ == b.vertices_; }

private:
    std::optional<std::string> check() const {
        if (vertices_.size() < 2) return "needs at least two vertices";
        const std::size_t n = vertices_.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            if (vertices_[i] == vertices_[i + 1]) return "repeated consecutive vertex " + std::to_string(i);
        const bool closed = vertices_.front() == vertices_.back();
        if (closed && n < 3) return "closed chain needs at least three segments";
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool next = j == i + 1;
                const bool wrap = closed && i == 0 && j == n - 1;
                if (next || wrap) {
                    // Adjacent segments share one vertex; any further contact is a fold-back.
                    const RVec di = vertices_[i + 1] - vertices_[i];
                    const RVec dj = vertices_[j + 1] - vertices_[j];
                    if (cross(di, dj).is_zero() && dot(di, dj) < 0)
                        return "segments " + std::to_string(i) + " and " + std::to_string(j) + " fold back";
                    continue;
                }
                if (!segment_box(vertices_[i], vertices_[i + 1]).overlaps(segment_box(vertices_[j], vertices_[j + 1])))
                    continue;
                if (segment_first_hit(vertices_[i], vertices_[i + 1], vertices_[j], vertices_[j + 1]))
                    return "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
            }
        }
        return std::nullopt;
    }

    void compute_box() {
        box_ = {vertices_[0].x, vertices_[0].x, vertices_[0].y, vertices_[0].y};
        for (const RPoint& p : vertices_) {
            box_.minx = std::min(box_.minx, p.x);
            box_.maxx = std::max(box_.maxx, p.x);
            box_.miny = std::min(box_.miny, p.y);
            box_.maxy = std::max(box_.maxy, p.y);
        }
    }

    std::vector<RPoint> vertices_;
    Box box_;
};

inline std::ostream& operator<<(std::ostream& os, const PolyChain& c) {
    for (std::size_t i = 0; i < c.vertices().size(); ++i) os << (i ? "->" : "") << c.vertices()[i];
    return os;
}

struct ChainHit {
    ChainPos pos;  // on the first chain
    RPoint point;
};

/// First point of `a` (in a's parametrization) that also lies on `b`.
inline std::optional<ChainHit> first_hit(const PolyChain& a, const PolyChain& b) {
    if (!a.box().overlaps(b.box())) return std::nullopt;
    const auto& av = a.vertices();
    const auto& bv = b.vertices();
    std::vector<Box> bboxes;
    bboxes.reserve(b.segment_count());
    for (std::size_t j = 0; j < b.segment_count(); ++j) bboxes.push_back(segment_box(bv[j], bv[j + 1]));
    for (std::size_t i = 0; i < a.segment_count(); ++i) {
        const Box sb = segment_box(av[i], av[i + 1]);
        if (!sb.overlaps(b.box())) continue;
        std::optional<Rational> best;
        for (std::size_t j = 0; j < b.segment_count(); ++j) {
            if (!sb.overlaps(bboxes[j])) continue;
            auto t = segment_first_hit(av[i], av[i + 1], bv[j], bv[j + 1]);
            if (t && (!best || *t < *best)) best = t;
        }
        if (best) {
            ChainPos pos{i, *best};
            return ChainHit{pos, a.at(pos)};
        }
    }
    return std::nullopt;
}

/// Some common point of two chains (touching counts), chosen minimal along `a`.
inline std::optional<RPoint> chain_intersection(const PolyChain& a, const PolyChain& b) {
    if (auto hit = first_hit(a, b)) return hit->point;
    return std::nullopt;
}

/// First position of `p` on `chain`, if it lies on it.
inline std::optional<ChainPos> locate(const PolyChain& chain, const RPoint& p) {
    const auto& v = chain.vertices();
    for (std::size_t i = 0; i < chain.segment_count(); ++i) {
        const RVec d = v[i + 1] - v[i];
        const RVec w = p - v[i];
        if (!cross(d, w).is_zero()) continue;
        Rational t = dot(w, d) / dot(d, d);
        if (t >= 0 && t <= 1) return ChainPos{i, t};
    }
    return std::nullopt;
}

inline bool on_chain(const PolyChain& chain, const RPoint& p) { return locate(chain, p).has_value(); }

/// Every vertex shifted by k·v.
inline PolyChain translate_chain(const PolyChain& a, const RVec& v, const Rational& k) { return a.translated(v * k); }

// ---------------------------------------------------------------------------
// Translates of a single curve

/// A point shared by the translates phi + k·v and phi + l·v.
struct TranslateHit {
    std::int64_t k = 0;
    std::int64_t l = 0;
    RPoint point;
};

struct StripeReport {
    /// Set when phi already meets phi + v (k = 0, l = 1); the disjointness
    /// claim then has no hypothesis and no further pairs are examined.
    std::optional<TranslateHit> hypothesis_failure;
    /// Set when two translates with -K <= k < l <= K meet.
    std::optional<TranslateHit> violation;

    bool hypothesis_holds() const { return !hypothesis_failure; }
};

/// Checks that the translates phi + k·v, -K <= k <= K, are pairwise
/// disjoint, given phi ∩ (phi + v) = ∅. Pick K >= ceil(diam(phi)/|v|) + 1
/// to cover every pair whose translates could touch.
inline StripeReport check_stripe_lemma(const PolyChain& phi, const RVec& v, std::int64_t K) {
    if (v.is_zero()) throw InvalidInput("translation vector must be nonzero");
    if (K < 1) throw InvalidInput("K must be positive");
    StripeReport report;
    if (auto p = chain_intersection(phi, phi.translated(v))) {
        report.hypothesis_failure = TranslateHit{0, 1, *p};
        return report;
    }
    std::vector<PolyChain> shifted;
    shifted.reserve(static_cast<std::size_t>(2 * K + 1));
    for (std::int64_t k = -K; k <= K; ++k) shifted.push_back(translate_chain(phi, v, k));
    for (std::int64_t k = -K; k <= K; ++k) {
        for (std::int64_t l = k + 1; l <= K; ++l) {
            const auto& a = shifted[static_cast<std::size_t>(k + K)];
            const auto& b = shifted[static_cast<std::size_t>(l + K)];
            if (auto p = chain_intersection(a, b)) {
                report.violation = TranslateHit{k, l, *p};
                return report;
            }
        }
    }
    return report;
}

/// A point on phi ∩ (phi + v) for a simple chain running from p to p + n·v.
/// Such a point always exists; the one minimal along phi is returned.
inline RPoint self_translation_intersection(const PolyChain& phi, const RVec& v, std::int64_t n) {
    if (v.is_zero()) throw InvalidInput("translation vector must be nonzero");
    if (n < 1) throw InvalidInput("multiplier must be a positive integer");
    const RVec offset = phi.back() - phi.front();
    if (offset != v * Rational(n)) {
        std::ostringstream msg;
        msg << "chain runs from " << phi.front() << " to " << phi.back() << ", offset " << offset
            << ", expected " << n << "*v = " << v * Rational(n);
        throw InvalidInput(msg.str());
    }
    if (auto p = chain_intersection(phi, phi.translated(v))) return *p;
    throw TheoremViolation("chain from p to p + n*v misses its translate by v");
}

// ---------------------------------------------------------------------------
// Systems of curves with cyclically chained endpoints

/// k chains with base points p_i, multipliers n_i and vector v. The
/// intended shape is: chain i runs from p_i to p_{i+1} + n_{i+1}·v
/// (indices cyclic). Only the structural invariants are enforced here;
/// `validate_curve_system` checks the geometric conditions.
class CurveSystem {
public:
    CurveSystem(std::vector<PolyChain> chains, std::vector<RPoint> base_points, std::vector<Rational> multipliers,
                RVec v)
        : chains_(std::move(chains)), base_(std::move(base_points)), mult_(std::move(multipliers)), v_(std::move(v)) {
        if (chains_.empty()) throw InvalidInput("curve system needs at least one chain");
        if (base_.size() != chains_.size() || mult_.size() != chains_.size())
            throw InvalidInput("curve system: chains, base points and multipliers differ in count");
        if (v_.is_zero()) throw InvalidInput("curve system: v must be nonzero");
        for (const Rational& n : mult_)
            if (n <= 0) throw InvalidInput("curve system: multipliers must be positive");
    }

    std::size_t size() const noexcept { return chains_.size(); }
    const std::vector<PolyChain>& chains() const noexcept { return chains_; }
    const std::vector<RPoint>& base_points() const noexcept { return base_; }
    const std::vector<Rational>& multipliers() const noexcept { return mult_; }
    const RVec& v() const noexcept { return v_; }

    const PolyChain& chain(std::size_t i) const { return chains_.at(i); }
    std::size_t next(std::size_t i) const { return (i + 1) % chains_.size(); }

    /// Where chain i is required to end: p_{i+1} + n_{i+1}·v.
    RPoint expected_end(std::size_t i) const { return base_[next(i)] + v_ * mult_[next(i)]; }

    bool integer_multipliers() const {
        return std::all_of(mult_.begin(), mult_.end(), [](const Rational& n) { return n.is_integer(); });
    }

private:
    std::vector<PolyChain> chains_;
    std::vector<RPoint> base_;
    std::vector<Rational> mult_;
    RVec v_;
};

/// Exact evidence that a curve system breaks one of its three conditions.
///  - Endpoint: chain i starts or ends in the wrong place. j == i flags the
///    start, j == i+1 (cyclic) the end; `point` is the actual vertex.
///  - SelfTranslation: `point` lies on chain i and on chain i + v (i == j).
///  - Pairwise: `point` lies on chains i and j, i < j.
struct ViolationWitness {
    enum class Kind { Endpoint, SelfTranslation, Pairwise };

    Kind kind = Kind::Pairwise;
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t shift = 0;  // translate multiplier of chain j relative to chain i
    RPoint point;

    friend bool operator==(const ViolationWitness&, const ViolationWitness&) = default;
};

inline const char* to_string(ViolationWitness::Kind kind) {
    switch (kind) {
        case ViolationWitness::Kind::Endpoint: return "endpoint";
        case ViolationWitness::Kind::SelfTranslation: return "self-translation";
        case ViolationWitness::Kind::Pairwise: return "pairwise";
    }
    return "?";
}

inline ViolationWitness self_translation_witness(std::size_t i, RPoint p) {
    return {ViolationWitness::Kind::SelfTranslation, i, i, 1, std::move(p)};
}

inline ViolationWitness pairwise_witness(std::size_t i, std::size_t j, RPoint p) {
    if (i > j) std::swap(i, j);
    return {ViolationWitness::Kind::Pairwise, i, j, 0, std::move(p)};
}

/// Re-checks a witness exactly against `sys`.
inline bool verify_witness(const CurveSystem& sys, const ViolationWitness& w) {
    if (w.i >= sys.size() || w.j >= sys.size()) return false;
    switch (w.kind) {
        case ViolationWitness::Kind::Endpoint:
            if (w.j == w.i) return w.point == sys.chain(w.i).front() && w.point != sys.base_points()[w.i];
            return w.j == sys.next(w.i) && w.point == sys.chain(w.i).back() && w.point != sys.expected_end(w.i);
        case ViolationWitness::Kind::SelfTranslation:
            return w.i == w.j && on_chain(sys.chain(w.i), w.point) && on_chain(sys.chain(w.i), w.point - sys.v());
        case ViolationWitness::Kind::Pairwise:
            return w.i < w.j && on_chain(sys.chain(w.i), w.point) && on_chain(sys.chain(w.j), w.point);
    }
    return false;
}

struct ConditionReport {
    std::vector<ViolationWitness> endpoint_failures;          // condition 1
    std::vector<ViolationWitness> self_translation_failures;  // condition 2
    std::vector<ViolationWitness> pairwise_failures;          // condition 3

    bool condition_holds(int which) const {
        switch (which) {
            case 1: return endpoint_failures.empty();
            case 2: return self_translation_failures.empty();
            case 3: return pairwise_failures.empty();
            default: throw InvalidInput("conditions are numbered 1..3");
        }
    }
    bool all_hold() const { return condition_holds(1) && condition_holds(2) && condition_holds(3); }
};

inline ConditionReport validate_curve_system(const CurveSystem& sys) {
    ConditionReport report;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const PolyChain& c = sys.chain(i);
        if (c.front() != sys.base_points()[i])
            report.endpoint_failures.push_back({ViolationWitness::Kind::Endpoint, i, i, 0, c.front()});
        if (c.back() != sys.expected_end(i))
            report.endpoint_failures.push_back({ViolationWitness::Kind::Endpoint, i, sys.next(i), 0, c.back()});
    }
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (auto p = chain_intersection(sys.chain(i), sys.chain(i).translated(sys.v())))
            report.self_translation_failures.push_back(self_translation_witness(i, *p));
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j)
            if (auto p = chain_intersection(sys.chain(i), sys.chain(j)))
                report.pairwise_failures.push_back(pairwise_witness(i, j, *p));
    return report;
}

// ---------------------------------------------------------------------------
// Reduction of a k-curve system to a smaller one

/// Where a segment of a derived chain came from: it lies inside segment
/// `segment` of original chain `curve` translated by shift·v.
struct SegmentOrigin {
    std::size_t curve = 0;
    std::int64_t shift = 0;
    std::size_t segment = 0;

    friend bool operator==(const SegmentOrigin&, const SegmentOrigin&) = default;
};

/// One entry per chain, one SegmentOrigin per segment of that chain.
using Provenance = std::vector<std::vector<SegmentOrigin>>;

inline Provenance identity_provenance(const CurveSystem& sys) {
    Provenance prov(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t s = 0; s < sys.chain(i).segment_count(); ++s) prov[i].push_back({i, 0, s});
    return prov;
}

struct Reduction {
    CurveSystem system;
    Provenance provenance;
    std::size_t merged = 0;   // index of the chain spliced onto chain 0
    std::int64_t shift = 0;   // translate multiplier applied to it and to the later chains
    RPoint junction;          // chain 0 at `first_pos` == translated merged chain at `merge_pos`
    ChainPos first_pos;
    ChainPos merge_pos;
    std::optional<PolyChain> prefix;  // chain 0 up to the junction; empty if that is a single point
    std::optional<PolyChain> suffix;  // translated merged chain from the junction on; empty likewise
    bool head_dropped = false;        // both pieces degenerate: the spliced chain vanished
};

namespace detail {

// Smallest l* such that box(b) + l·v is disjoint from box(a) for all l >= l*.
inline std::int64_t separation_bound(const Box& a, const Box& b, const RVec& v) {
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
    auto axis = [&](const Rational& amin, const Rational& amax, const Rational& bmin, const Rational& bmax,
                    const Rational& step) -> std::int64_t {
        if (step.is_zero()) return (bmin > amax || bmax < amin) ? 0 : kNever;
        Rational gap = step > 0 ? (amax - bmin) / step : (bmax - amin) / -step;
        return std::max<std::int64_t>(0, gap.floor() + 1);
    };
    return std::min(axis(a.minx, a.maxx, b.minx, b.maxx, v.dx), axis(a.miny, a.maxy, b.miny, b.maxy, v.dy));
}

inline void require_reducible_input(const CurveSystem& sys) {
    if (!sys.integer_multipliers()) throw InvalidInput("multipliers must be positive integers");
    if (!validate_curve_system(sys).condition_holds(1)) throw InvalidInput("endpoint condition does not hold");
}

}  // namespace detail

/// One inductive step: finds the first point of chain 0 lying on any chain
/// m >= 1 translated by l·v (l >= 0; smallest m, then smallest l on ties),
/// splices chain 0 up to that point onto the rest of that translated chain,
/// and returns the smaller system
///   points  p_0, p_{M+1}+Lv, ..., p_{k-1}+Lv
///   mults   n_0+L, n_{M+1}, ..., n_{k-1}
///   chains  psi, phi_{M+1}+Lv, ..., phi_{k-1}+Lv
/// together with provenance mapping every new segment back to the original
/// chains. Requires k >= 2, integer multipliers and the endpoint condition.
inline Reduction reduce_step(const CurveSystem& sys, const Provenance& prov) {
    if (sys.size() < 2) throw InvalidInput("reduce_step needs at least two chains");
    detail::require_reducible_input(sys);
    if (prov.size() != sys.size()) throw InvalidInput("provenance does not match the system");

    const std::size_t k = sys.size();
    const RVec& v = sys.v();
    const PolyChain& head = sys.chain(0);

    struct Candidate {
        std::size_t m;
        std::int64_t l;
        PolyChain chain;
        std::vector<Box> boxes;
    };
    std::vector<Candidate> candidates;
    for (std::size_t m = 1; m < k; ++m) {
        const std::int64_t bound = detail::separation_bound(head.box(), sys.chain(m).box(), v);
        for (std::int64_t l = 0; l < bound; ++l) {
            PolyChain c = translate_chain(sys.chain(m), v, l);
            std::vector<Box> boxes;
            for (std::size_t s = 0; s < c.segment_count(); ++s)
                boxes.push_back(segment_box(c.vertices()[s], c.vertices()[s + 1]));
            candidates.push_back({m, l, std::move(c), std::move(boxes)});
        }
    }

    std::optional<ChainPos> first;
    const Candidate* chosen = nullptr;
    const auto& hv = head.vertices();
    for (std::size_t s = 0; s < head.segment_count() && !first; ++s) {
        const Box sb = segment_box(hv[s], hv[s + 1]);
        for (const Candidate& cand : candidates) {
            if (!sb.overlaps(cand.chain.box())) continue;
            const auto& cv = cand.chain.vertices();
            for (std::size_t j = 0; j < cand.chain.segment_count(); ++j) {
                if (!sb.overlaps(cand.boxes[j])) continue;
                auto t = segment_first_hit(hv[s], hv[s + 1], cv[j], cv[j + 1]);
                // Strict improvement keeps the earliest (m, l) on ties.
                if (t && (!first || *t < first->t)) {
                    first = ChainPos{s, *t};
                    chosen = &cand;
                }
            }
        }
    }
    if (!first) throw TheoremViolation("chain 0 meets no translate within the separation bound");

    const std::size_t M = chosen->m;
    const std::int64_t L = chosen->l;
    const RPoint junction = head.at(*first);
    const PolyChain& target = chosen->chain;
    auto merge = locate(target, junction);
    if (!merge) throw TheoremViolation("junction not on the merged chain");

    // prefix: head[0, t1]
    std::vector<RPoint> pre{hv.begin(), hv.begin() + static_cast<std::ptrdiff_t>(first->segment) + 1};
    std::vector<SegmentOrigin> pre_origin{prov[0].begin(), prov[0].begin() + static_cast<std::ptrdiff_t>(first->segment)};
    if (first->t > 0) {
        pre.push_back(junction);
        pre_origin.push_back(prov[0][first->segment]);
    }

    // suffix: target[t2, 1]
    const auto& tv = target.vertices();
    std::size_t from = merge->segment + (merge->t == 1 ? 1 : 0);
    std::vector<RPoint> suf{junction};
    std::vector<SegmentOrigin> suf_origin;
    for (std::size_t s = from; s < target.segment_count(); ++s) {
        suf.push_back(tv[s + 1]);
        SegmentOrigin o = prov[M][s];
        o.shift += L;
        suf_origin.push_back(o);
    }

    Reduction out{sys, {}, M, L, junction, *first, *merge, std::nullopt, std::nullopt, false};
    if (pre.size() >= 2) out.prefix = PolyChain(pre);
    if (suf.size() >= 2) out.suffix = PolyChain(suf);

    std::vector<PolyChain> chains;
    std::vector<RPoint> points;
    std::vector<Rational> mults;
    Provenance next_prov;
    if (out.prefix || out.suffix) {
        std::vector<RPoint> psi = pre;
        psi.insert(psi.end(), suf.begin() + 1, suf.end());
        std::vector<SegmentOrigin> psi_origin = pre_origin;
        psi_origin.insert(psi_origin.end(), suf_origin.begin(), suf_origin.end());
        try {
            chains.push_back(PolyChain(std::move(psi)));
        } catch (const InvalidInput& e) {
            throw TheoremViolation(std::string("spliced chain is not simple: ") + e.what());
        }
        points.push_back(sys.base_points()[0]);
        mults.push_back(sys.multipliers()[0] + Rational(L));
        next_prov.push_back(std::move(psi_origin));
    } else {
        // Junction is both the start of chain 0 and the end of the translated
        // merged chain: the spliced curve is a single point and is skipped.
        if (M + 1 == k) throw TheoremViolation("degenerate splice closes the cycle");
        out.head_dropped = true;
    }
    const RVec lv = v * Rational(L);
    for (std::size_t i = M + 1; i < k; ++i) {
        chains.push_back(sys.chain(i).translated(lv));
        points.push_back(sys.base_points()[i] + lv);
        mults.push_back(sys.multipliers()[i]);
        std::vector<SegmentOrigin> o = prov[i];
        for (SegmentOrigin& so : o) so.shift += L;
        next_prov.push_back(std::move(o));
    }
    if (out.head_dropped) mults.front() = mults.front() + sys.multipliers()[0] + Rational(L);

    out.system = CurveSystem(std::move(chains), std::move(points), std::move(mults), v);
    out.provenance = std::move(next_prov);
    return out;
}

namespace detail {

// Carries a witness on `step.system` back to the system the step was taken from.
inline ViolationWitness lift_witness(const Reduction& step, const ViolationWitness& w) {
    const RVec lv = step.system.v() * Rational(step.shift);
    const RVec& v = step.system.v();
    const std::size_t M = step.merged;
    const bool has_psi = !step.head_dropped;
    const RPoint& J = step.junction;

    auto original = [&](std::size_t idx) -> std::optional<std::size_t> {
        if (has_psi && idx == 0) return std::nullopt;
        return M + idx + (has_psi ? 0 : 1);
    };
    auto on_prefix = [&](const RPoint& p) { return p == J || (step.prefix && on_chain(*step.prefix, p)); };
    auto on_suffix = [&](const RPoint& p) { return p == J || (step.suffix && on_chain(*step.suffix, p)); };

    if (w.kind == ViolationWitness::Kind::SelfTranslation) {
        if (auto o = original(w.i)) return self_translation_witness(*o, w.point - lv);
        const RPoint& p = w.point;
        const RPoint q = p - v;
        // Both on_prefix and on_suffix accept J. A prefix point other than J
        // on the suffix side would contradict the minimality of the junction.
        if (on_prefix(p) && on_prefix(q)) return self_translation_witness(0, p);
        if (on_suffix(p) && on_suffix(q)) return self_translation_witness(M, p - lv);
        throw TheoremViolation("cannot lift self-translation witness through reduction");
    }
    if (w.kind == ViolationWitness::Kind::Pairwise) {
        auto oi = original(w.i);
        auto oj = original(w.j);
        if (oi && oj) return pairwise_witness(*oi, *oj, w.point - lv);
        const std::size_t other = oi ? *oi : *oj;
        if (on_suffix(w.point)) return pairwise_witness(M, other, w.point - lv);
        throw TheoremViolation("cannot lift pairwise witness through reduction");
    }
    throw InvalidInput("endpoint witnesses cannot be lifted");
}

}  // namespace detail

enum class ViolationMode { Direct, Reduce };

/// For a system with positive integer multipliers whose endpoint condition
/// holds, returns an exactly verified point where some chain meets its own
/// translate by v, or two chains meet. Such a point always exists.
///
/// Direct mode scans the chains. Reduce mode repeatedly applies
/// `reduce_step` down to a single chain, takes its self-translation point,
/// and carries that point back through every step to the input system.
inline ViolationWitness find_violation(const CurveSystem& sys, ViolationMode mode = ViolationMode::Reduce) {
    detail::require_reducible_input(sys);

    if (mode == ViolationMode::Direct) {
        const ConditionReport report = validate_curve_system(sys);
        if (!report.self_translation_failures.empty()) return report.self_translation_failures.front();
        if (!report.pairwise_failures.empty()) return report.pairwise_failures.front();
        throw TheoremViolation("integer-multiplier system satisfies all three conditions");
    }

    std::vector<Reduction> steps;
    const CurveSystem* current = &sys;
    Provenance prov = identity_provenance(sys);
    std::optional<ViolationWitness> found;
    while (current->size() > 1) {
        steps.push_back(reduce_step(*current, prov));
        const Reduction& step = steps.back();
        if (step.shift == 0) {
            // Chain 0 meets chain M untranslated: already a violation one level up.
            found = pairwise_witness(0, step.merged, step.junction);
            steps.pop_back();
            break;
        }
        prov = step.provenance;
        current = &step.system;
    }
    if (!found) {
        const PolyChain& last = current->chain(0);
        found = self_translation_witness(
            0, self_translation_intersection(last, current->v(), current->multipliers()[0].num()));
    }
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) found = detail::lift_witness(*it, *found);
    if (!verify_witness(sys, *found)) throw TheoremViolation("lifted witness does not verify");
    return *found;
}

// ---------------------------------------------------------------------------

/// Chain from (0,0) to (x,0) that misses its own shift by (1,0), for
/// non-integer x with |x| > 1. With n = floor(|x|), y = |x| - n it is the
/// zig-zag mu_0 nu_0 ... mu_{n-1} nu_{n-1} mu_n, where mu runs from (0,0) to
/// (y, n·eps), nu from there to (1, -eps), and index k shifts by k·(1, -eps).
/// Negative x is handled by mirroring in the y axis.
inline PolyChain gen_noninteger_example(const Rational& x, const Rational& eps) {
    if (x.is_integer()) throw InvalidInput("x must not be an integer");
    if (x <= 1 && x >= -1) throw InvalidInput("|x| must exceed 1; a plain segment already avoids its shift");
    if (eps <= 0) throw InvalidInput("eps must be positive");
    const bool mirror = x < 0;
    const Rational ax = mirror ? -x : x;
    const std::int64_t n = ax.floor();
    const Rational y = ax - Rational(n);

    std::vector<RPoint> pts;
    pts.reserve(static_cast<std::size_t>(2 * n + 2));
    for (std::int64_t k = 0; k < n; ++k) {
        pts.push_back({Rational(k), -eps * Rational(k)});
        pts.push_back({y + Rational(k), eps * Rational(n - k)});
    }
    pts.push_back({Rational(n), -eps * Rational(n)});
    pts.push_back({ax, Rational(0)});
    if (mirror)
        for (RPoint& p : pts) p.x = -p.x;
    return PolyChain(std::move(pts));
}

}  // namespace tileasm
