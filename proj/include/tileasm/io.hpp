#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tileasm/curves.hpp"
#include "tileasm/errors.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/rational.hpp"
#include "tileasm/tile_model.hpp"

// Line-based text formats. Every format accepts `#` comments and blank
// lines; the serializers emit a canonical form that parses back to the same
// value and re-serializes byte for byte.
//
//   tile system   temperature T | glue g s | strength g h s | tile NAME N=g E=g S=g W=g
//   assembly      place X Y NAME
//   shape         cell X Y
//   curves        curve NAME, then  v X Y  lines (rationals as n or n/d);
//                 system [NAME], then  vec X Y  and  member CURVE PX PY N  lines

namespace tileasm::io {

namespace detail {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> words;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string w; in >> w;) line.words.push_back(w);
        if (!line.words.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

inline std::int64_t to_int(const Line& line, const std::string& word) {
    std::int64_t value = 0;
    const char* first = word.data();
    if (!word.empty() && word.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, word.data() + word.size(), value);
    if (word.empty() || ec != std::errc() || ptr != word.data() + word.size())
        throw ParseError(line.number, "expected an integer, got '" + word + "'");
    return value;
}

inline Rational to_rational(const Line& line, const std::string& word) {
    try {
        return Rational::parse(word);
    } catch (const std::exception& e) {
        throw ParseError(line.number, e.what());
    }
}

inline void expect_arity(const Line& line, std::size_t n, const char* usage) {
    if (line.words.size() != n) throw ParseError(line.number, std::string("expected '") + usage + "'");
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << content;
}

// --- tile systems ----------------------------------------------------------

inline TileSystem parse_tile_system(std::string_view text) {
    std::optional<std::int64_t> temperature;
    StrengthFn strength;
    std::vector<TileType> tiles;
    for (const auto& line : detail::tokenize(text)) {
        const std::string& kw = line.words[0];
        try {
            if (kw == "temperature") {
                detail::expect_arity(line, 2, "temperature T");
                if (temperature) throw ParseError(line.number, "temperature declared twice");
                temperature = detail::to_int(line, line.words[1]);
                if (*temperature < 1) throw ParseError(line.number, "temperature must be positive");
            } else if (kw == "glue") {
                detail::expect_arity(line, 3, "glue NAME STRENGTH");
                strength.set(line.words[1], line.words[1], detail::to_int(line, line.words[2]));
            } else if (kw == "strength") {
                detail::expect_arity(line, 4, "strength GLUE GLUE STRENGTH");
                strength.set(line.words[1], line.words[2], detail::to_int(line, line.words[3]));
            } else if (kw == "tile") {
                if (line.words.size() < 2) throw ParseError(line.number, "expected 'tile NAME [N=g E=g S=g W=g]'");
                TileType t;
                t.name = line.words[1];
                bool set[4] = {false, false, false, false};
                for (std::size_t i = 2; i < line.words.size(); ++i) {
                    const std::string& w = line.words[i];
                    if (w.size() < 3 || w[1] != '=') throw ParseError(line.number, "bad side spec '" + w + "'");
                    const std::string sides = "NESW";
                    auto s = sides.find(w[0]);
                    if (s == std::string::npos) throw ParseError(line.number, "unknown side in '" + w + "'");
                    if (set[s]) throw ParseError(line.number, "side given twice in '" + w + "'");
                    set[s] = true;
                    t.glues[s] = w.substr(2);
                }
                tiles.push_back(std::move(t));
            } else {
                throw ParseError(line.number, "unknown keyword '" + kw + "' in tile system");
            }
        } catch (const InvalidInput& e) {
            throw ParseError(line.number, e.what());
        }
    }
    if (!temperature) throw ParseError(0, "tile system has no temperature line");
    try {
        return TileSystem(std::move(tiles), *temperature, std::move(strength));
    } catch (const InvalidInput& e) {
        throw ParseError(0, e.what());
    }
}

inline std::string serialize(const TileSystem& sys) {
    std::ostringstream out;
    out << "temperature " << sys.temperature() << '\n';
    for (const auto& [pair, s] : sys.strength().entries()) {
        if (pair.first == pair.second)
            out << "glue " << pair.first << ' ' << s << '\n';
        else
            out << "strength " << pair.first << ' ' << pair.second << ' ' << s << '\n';
    }
    for (const TileType& t : sys.tiles()) {
        out << "tile " << t.name;
        for (Side s : kSides) out << ' ' << side_name(s) << '=' << t.glue(s);
        out << '\n';
    }
    return out.str();
}

// --- assemblies ------------------------------------------------------------

inline Assembly parse_assembly(std::string_view text) {
    Assembly::Map m;
    for (const auto& line : detail::tokenize(text)) {
        if (line.words[0] != "place") throw ParseError(line.number, "unknown keyword '" + line.words[0] + "' in assembly");
        detail::expect_arity(line, 4, "place X Y NAME");
        Point p{detail::to_int(line, line.words[1]), detail::to_int(line, line.words[2])};
        if (!m.emplace(p, line.words[3]).second) throw ParseError(line.number, "position placed twice");
    }
    try {
        return Assembly(std::move(m));
    } catch (const InvalidInput& e) {
        throw ParseError(0, e.what());
    }
}

inline std::string serialize(const Assembly& a) {
    std::ostringstream out;
    for (const auto& [p, t] : a.tiles()) out << "place " << p.x << ' ' << p.y << ' ' << t << '\n';
    return out.str();
}

// --- shapes ----------------------------------------------------------------

inline Shape parse_shape(std::string_view text) {
    PointSet cells;
    for (const auto& line : detail::tokenize(text)) {
        if (line.words[0] != "cell") throw ParseError(line.number, "unknown keyword '" + line.words[0] + "' in shape");
        detail::expect_arity(line, 3, "cell X Y");
        if (!cells.insert({detail::to_int(line, line.words[1]), detail::to_int(line, line.words[2])}).second)
            throw ParseError(line.number, "cell listed twice");
    }
    try {
        return Shape(std::move(cells));
    } catch (const InvalidInput& e) {
        throw ParseError(0, e.what());
    }
}

inline std::string serialize(const Shape& s) {
    std::ostringstream out;
    for (Point p : s.cells()) out << "cell " << p.x << ' ' << p.y << '\n';
    return out.str();
}

// --- curves ----------------------------------------------------------------

struct NamedChain {
    std::string name;
    PolyChain chain;
};

struct SystemMember {
    std::string curve;
    RPoint base;
    Rational multiplier;
};

struct SystemSpec {
    std::string name;  // may be empty
    std::optional<RVec> v;
    std::vector<SystemMember> members;
};

struct CurveFile {
    std::vector<NamedChain> curves;
    std::vector<SystemSpec> systems;

    const PolyChain* find(const std::string& name) const {
        for (const auto& c : curves)
            if (c.name == name) return &c.chain;
        return nullptr;
    }

    CurveSystem build(std::size_t index) const {
        if (index >= systems.size()) throw InvalidInput("curve file has no system #" + std::to_string(index));
        const SystemSpec& spec = systems[index];
        if (!spec.v) throw InvalidInput("system without a 'vec' line");
        std::vector<PolyChain> chains;
        std::vector<RPoint> base;
        std::vector<Rational> mult;
        for (const auto& m : spec.members) {
            const PolyChain* c = find(m.curve);
            if (!c) throw InvalidInput("system refers to unknown curve '" + m.curve + "'");
            chains.push_back(*c);
            base.push_back(m.base);
            mult.push_back(m.multiplier);
        }
        return CurveSystem(std::move(chains), std::move(base), std::move(mult), *spec.v);
    }
};

inline CurveFile parse_curve_file(std::string_view text) {
    CurveFile file;
    enum class Block { None, Curve, System } block = Block::None;
    std::string curve_name;
    std::vector<RPoint> vertices;
    std::size_t curve_line = 0;

    auto finish_curve = [&] {
        if (block != Block::Curve) return;
        try {
            file.curves.push_back({curve_name, PolyChain(std::move(vertices))});
        } catch (const InvalidInput& e) {
            throw ParseError(curve_line, "curve '" + curve_name + "': " + e.what());
        }
        vertices.clear();
    };

    for (const auto& line : detail::tokenize(text)) {
        const std::string& kw = line.words[0];
        if (kw == "curve") {
            detail::expect_arity(line, 2, "curve NAME");
            finish_curve();
            if (file.find(line.words[1])) throw ParseError(line.number, "curve '" + line.words[1] + "' defined twice");
            block = Block::Curve;
            curve_name = line.words[1];
            curve_line = line.number;
        } else if (kw == "v") {
            if (block != Block::Curve) throw ParseError(line.number, "'v' outside a curve block");
            detail::expect_arity(line, 3, "v X Y");
            vertices.push_back({detail::to_rational(line, line.words[1]), detail::to_rational(line, line.words[2])});
        } else if (kw == "system") {
            if (line.words.size() > 2) throw ParseError(line.number, "expected 'system [NAME]'");
            finish_curve();
            block = Block::System;
            file.systems.push_back({line.words.size() == 2 ? line.words[1] : std::string(), std::nullopt, {}});
        } else if (kw == "vec") {
            if (block != Block::System) throw ParseError(line.number, "'vec' outside a system block");
            detail::expect_arity(line, 3, "vec X Y");
            if (file.systems.back().v) throw ParseError(line.number, "system vector given twice");
            RVec v{detail::to_rational(line, line.words[1]), detail::to_rational(line, line.words[2])};
            if (v.is_zero()) throw ParseError(line.number, "system vector must be nonzero");
            file.systems.back().v = v;
        } else if (kw == "member") {
            if (block != Block::System) throw ParseError(line.number, "'member' outside a system block");
            detail::expect_arity(line, 5, "member CURVE PX PY N");
            Rational n = detail::to_rational(line, line.words[4]);
            if (n <= 0) throw ParseError(line.number, "multiplier must be positive");
            file.systems.back().members.push_back(
                {line.words[1], {detail::to_rational(line, line.words[2]), detail::to_rational(line, line.words[3])}, n});
        } else {
            throw ParseError(line.number, "unknown keyword '" + kw + "' in curve file");
        }
    }
    finish_curve();
    return file;
}

inline std::string serialize(const CurveFile& file) {
    std::ostringstream out;
    for (const auto& c : file.curves) {
        out << "curve " << c.name << '\n';
        for (const RPoint& p : c.chain.vertices()) out << "v " << p.x << ' ' << p.y << '\n';
    }
    for (const auto& s : file.systems) {
        out << "system";
        if (!s.name.empty()) out << ' ' << s.name;
        out << '\n';
        if (s.v) out << "vec " << s.v->dx << ' ' << s.v->dy << '\n';
        for (const auto& m : s.members)
            out << "member " << m.curve << ' ' << m.base.x << ' ' << m.base.y << ' ' << m.multiplier << '\n';
    }
    return out.str();
}

/// Curve file holding the given system, chains named phi1..phik.
inline CurveFile to_curve_file(const CurveSystem& sys, const std::string& name = {}) {
    CurveFile file;
    SystemSpec spec{name, sys.v(), {}};
    for (std::size_t i = 0; i < sys.size(); ++i) {
        std::string cname = "phi" + std::to_string(i + 1);
        file.curves.push_back({cname, sys.chain(i)});
        spec.members.push_back({cname, sys.base_points()[i], sys.multipliers()[i]});
    }
    file.systems.push_back(std::move(spec));
    return file;
}

// --- format detection ------------------------------------------------------

enum class FileKind { TileSystem, Assembly, Shape, Curves, Unknown };

/// Classifies a file by its first keyword.
inline FileKind detect_kind(std::string_view text) {
    for (const auto& line : detail::tokenize(text)) {
        const std::string& kw = line.words[0];
        if (kw == "temperature" || kw == "glue" || kw == "strength" || kw == "tile") return FileKind::TileSystem;
        if (kw == "place") return FileKind::Assembly;
        if (kw == "cell") return FileKind::Shape;
        if (kw == "curve" || kw == "system") return FileKind::Curves;
        return FileKind::Unknown;
    }
    return FileKind::Unknown;
}

}  // namespace tileasm::io
