#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "tileasm/curves.hpp"
#include "tileasm/io.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/tile_model.hpp"

// Deterministic SVG 1.1 output. Identical inputs give identical bytes: no
// timestamps, numbers printed at fixed precision, colors from a fixed
// palette indexed by a stable hash of the name.

namespace tileasm::svg {

inline constexpr double kCell = 40.0;
inline constexpr double kMargin = 20.0;

inline constexpr std::array<const char*, 12> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
};

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline const char* color_for(std::string_view name) { return kPalette[fnv1a(name) % kPalette.size()]; }

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

inline std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

namespace detail {

struct Frame {
    double min_x, min_y, max_x, max_y;  // model coordinates

    double width() const { return (max_x - min_x) * kCell + 2 * kMargin; }
    double height() const { return (max_y - min_y) * kCell + 2 * kMargin; }
    double sx(double x) const { return kMargin + (x - min_x) * kCell; }
    double sy(double y) const { return kMargin + (max_y - y) * kCell; }  // y axis points up
};

inline void open(std::ostringstream& out, const Frame& f) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(f.width()) << "\" height=\""
        << num(f.height()) << "\" viewBox=\"0 0 " << num(f.width()) << ' ' << num(f.height()) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height())
        << "\" fill=\"#ffffff\"/>\n";
}

inline Frame cell_frame(const PointSet& cells) {
    Frame f{0, 0, 0, 0};
    bool first = true;
    for (Point p : cells) {
        const double x = static_cast<double>(p.x), y = static_cast<double>(p.y);
        if (first) {
            f = {x, y, x + 1, y + 1};
            first = false;
        }
        f.min_x = std::min(f.min_x, x);
        f.min_y = std::min(f.min_y, y);
        f.max_x = std::max(f.max_x, x + 1);
        f.max_y = std::max(f.max_y, y + 1);
    }
    return f;
}

// Tick marks along the inner edge of a side, one per unit of strength.
inline void ticks(std::ostringstream& out, const Frame& f, Point p, Side side, std::int64_t count) {
    const double x0 = f.sx(static_cast<double>(p.x)), y0 = f.sy(static_cast<double>(p.y) + 1);
    const std::int64_t shown = std::min<std::int64_t>(count, 5);
    for (std::int64_t i = 0; i < shown; ++i) {
        const double off = kCell * static_cast<double>(i + 1) / static_cast<double>(shown + 1);
        double ax = 0, ay = 0, bx = 0, by = 0;
        const double len = kCell * 0.15;
        switch (side) {
            case Side::N: ax = bx = x0 + off; ay = y0; by = y0 + len; break;
            case Side::S: ax = bx = x0 + off; ay = y0 + kCell; by = y0 + kCell - len; break;
            case Side::W: ay = by = y0 + off; ax = x0; bx = x0 + len; break;
            case Side::E: ay = by = y0 + off; ax = x0 + kCell; bx = x0 + kCell - len; break;
        }
        out << "<line x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx) << "\" y2=\"" << num(by)
            << "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    }
}

}  // namespace detail

/// Shape as filled unit cells.
inline std::string render(const Shape& s) {
    const detail::Frame f = detail::cell_frame(s.cells());
    std::ostringstream out;
    detail::open(out, f);
    for (Point p : s.cells())
        out << "<rect x=\"" << num(f.sx(static_cast<double>(p.x))) << "\" y=\""
            << num(f.sy(static_cast<double>(p.y) + 1)) << "\" width=\"" << num(kCell) << "\" height=\"" << num(kCell)
            << "\" fill=\"#4e79a7\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    out << "</svg>\n";
    return out.str();
}

/// Assembly as labelled unit squares. With a tile system, each side carries
/// one tick per unit of bond strength to the neighbor on that side, or per
/// unit of the glue's self-strength on an exposed side.
inline std::string render(const Assembly& a, const TileSystem* sys = nullptr) {
    const detail::Frame f = detail::cell_frame(a.domain());
    std::ostringstream out;
    detail::open(out, f);
    for (const auto& [p, name] : a.tiles()) {
        const double x = f.sx(static_cast<double>(p.x)), y = f.sy(static_cast<double>(p.y) + 1);
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(kCell) << "\" height=\""
            << num(kCell) << "\" fill=\"" << color_for(name) << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << num(x + kCell / 2) << "\" y=\"" << num(y + kCell / 2 + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << escape(name) << "</text>\n";
        if (!sys) continue;
        const auto ti = sys->find(name);
        if (!ti) continue;
        const TileType& t = sys->tiles()[*ti];
        for (Side s : kSides) {
            std::int64_t strength = 0;
            if (const std::string* nb = a.at(p + step(s))) {
                if (const auto ni = sys->find(*nb)) strength = sys->bond(*ti, s, *ni);
            } else {
                strength = sys->strength()(t.glue(s), t.glue(s));
            }
            detail::ticks(out, f, p, s, strength);
        }
    }
    out << "</svg>\n";
    return out.str();
}

/// Tile types of a system laid out in a row, declaration order.
inline std::string render(const TileSystem& sys) {
    // One empty column between tiles.
    const detail::Frame f{0, 0, static_cast<double>(2 * sys.tiles().size() - 1), 1};
    std::ostringstream out;
    detail::open(out, f);
    std::int64_t col = 0;
    for (const TileType& t : sys.tiles()) {
        const Point p{2 * col++, 0};
        const double px = f.sx(static_cast<double>(p.x)), py = f.sy(1);
        out << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(kCell) << "\" height=\""
            << num(kCell) << "\" fill=\"" << color_for(t.name) << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << num(px + kCell / 2) << "\" y=\"" << num(py + kCell / 2 + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << escape(t.name) << "</text>\n";
        for (Side s : kSides) detail::ticks(out, f, p, s, sys.strength()(t.glue(s), t.glue(s)));
    }
    out << "</svg>\n";
    return out.str();
}

/// Curves as polylines; base points of each system as dots.
inline std::string render(const io::CurveFile& file) {
    bool first = true;
    detail::Frame f{0, 0, 1, 1};
    auto grow = [&](const RPoint& p) {
        const double x = p.x.to_double(), y = p.y.to_double();
        if (first) {
            f = {x, y, x, y};
            first = false;
        }
        f.min_x = std::min(f.min_x, x);
        f.min_y = std::min(f.min_y, y);
        f.max_x = std::max(f.max_x, x);
        f.max_y = std::max(f.max_y, y);
    };
    for (const auto& c : file.curves)
        for (const RPoint& p : c.chain.vertices()) grow(p);
    for (const auto& s : file.systems)
        for (const auto& m : s.members) grow(m.base);
    std::ostringstream out;
    detail::open(out, f);
    for (const auto& c : file.curves) {
        out << "<polyline fill=\"none\" stroke=\"" << color_for(c.name) << "\" stroke-width=\"2\" points=\"";
        bool sep = false;
        for (const RPoint& p : c.chain.vertices()) {
            out << (sep ? " " : "") << num(f.sx(p.x.to_double())) << ',' << num(f.sy(p.y.to_double()));
            sep = true;
        }
        out << "\"/>\n";
    }
    for (const auto& s : file.systems)
        for (const auto& m : s.members)
            out << "<circle cx=\"" << num(f.sx(m.base.x.to_double())) << "\" cy=\"" << num(f.sy(m.base.y.to_double()))
                << "\" r=\"3\" fill=\"#000000\"/>\n";
    out << "</svg>\n";
    return out.str();
}

/// Renders any supported file by its detected kind. Assemblies use `sys`
/// for glue ticks when given.
inline std::string render_text(std::string_view text, const TileSystem* sys = nullptr) {
    switch (io::detect_kind(text)) {
        case io::FileKind::TileSystem: return render(io::parse_tile_system(text));
        case io::FileKind::Assembly: return render(io::parse_assembly(text), sys);
        case io::FileKind::Shape: return render(io::parse_shape(text));
        case io::FileKind::Curves: return render(io::parse_curve_file(text));
        case io::FileKind::Unknown: break;
    }
    throw ParseError(1, "cannot determine file kind");
}

}  // namespace tileasm::svg
