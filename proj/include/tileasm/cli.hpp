#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tileasm/curves.hpp"
#include "tileasm/errors.hpp"
#include "tileasm/io.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/pumping.hpp"
#include "tileasm/svg.hpp"
#include "tileasm/tile_model.hpp"

// Command-line front end. Exit codes: 0 success or the property holds,
// 1 violation or negative result, 2 usage or input error.

namespace tileasm::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

namespace detail {

// An input error already carrying its file name.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
auto load(const std::string& path, F parse) {
    const std::string text = io::read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw FileError(path + ": " + e.what());
    }
}

inline TileSystem load_system(const std::string& path) { return load(path, io::parse_tile_system); }
inline Assembly load_assembly(const std::string& path) { return load(path, io::parse_assembly); }
inline Shape load_shape(const std::string& path) { return load(path, io::parse_shape); }
inline io::CurveFile load_curves(const std::string& path) { return load(path, io::parse_curve_file); }

inline Vec parse_vec(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw InvalidInput("vector must be 'dx,dy', got '" + s + "'");
    try {
        std::size_t a = 0, b = 0;
        const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
        const long long dx = std::stoll(xs, &a), dy = std::stoll(ys, &b);
        if (a != xs.size() || b != ys.size()) throw std::invalid_argument("trailing");
        return {dx, dy};
    } catch (const std::logic_error&) {
        throw InvalidInput("vector must be 'dx,dy', got '" + s + "'");
    }
}

inline void print_cells(std::ostream& out, const PointSet& cells) {
    bool sep = false;
    for (Point p : cells) {
        out << (sep ? " " : "") << p;
        sep = true;
    }
}

inline std::string witness_text(const ViolationWitness& w) {
    std::ostringstream s;
    switch (w.kind) {
        case ViolationWitness::Kind::Endpoint:
            s << "endpoint: chain " << w.i + 1 << (w.j == w.i ? " starts" : " ends") << " at " << w.point;
            break;
        case ViolationWitness::Kind::SelfTranslation:
            s << "self-translation: chain " << w.i + 1 << " meets its translate by v at " << w.point;
            break;
        case ViolationWitness::Kind::Pairwise:
            s << "pairwise: chains " << w.i + 1 << " and " << w.j + 1 << " meet at " << w.point;
            break;
    }
    return s.str();
}

inline std::string rvec_text(const RVec& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tile assembly and curve-system toolkit", "tileasm"};
    app.require_subcommand(1);

    std::string system_path, assembly_path, shape_path, curve_path, in_path, svg_path, out_path, vec_text;
    std::string x_text, eps_text, mode_text = "reduce";
    std::size_t max_size = 0, iters = 0, certify_bound = 0, system_index = 0;
    bool has_system_index = false;

    auto* enumerate = app.add_subcommand("enumerate", "List producible assemblies up to a size bound");
    enumerate->add_option("--system", system_path, "Tile system file")->required();
    enumerate->add_option("--max-size", max_size, "Largest assembly size")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--out", out_path, "Directory for one file per assembly");

    auto* stable = app.add_subcommand("stable", "Check tau-stability of an assembly");
    stable->add_option("--system", system_path, "Tile system file")->required();
    stable->add_option("--assembly", assembly_path, "Assembly file")->required();

    auto* reps = app.add_subcommand("repetitions", "List repetition vectors of an assembly");
    reps->add_option("--assembly", assembly_path, "Assembly file")->required();

    auto* pump_cmd = app.add_subcommand("pump", "Grow a repetitious assembly");
    pump_cmd->add_option("--system", system_path, "Tile system file")->required();
    pump_cmd->add_option("--assembly", assembly_path, "Assembly file")->required();
    pump_cmd->add_option("--vec", vec_text, "Repetition vector dx,dy")->required();
    pump_cmd->add_option("--iters", iters, "Number of iterations")->required()->check(CLI::PositiveNumber);
    pump_cmd->add_option("--certify-bound", certify_bound, "Certify iterates up to this size by enumeration");
    pump_cmd->add_option("--out", out_path, "Directory for one file per iterate");

    auto* component = app.add_subcommand("shape-component", "Non-conflicting component of a shape");
    component->add_option("--shape", shape_path, "Shape file")->required();
    component->add_option("--vec", vec_text, "Vector dx,dy")->required();

    auto* walk = app.add_subcommand("shape-walk", "Constructive walk to a non-conflicting component");
    walk->add_option("--shape", shape_path, "Shape file")->required();
    walk->add_option("--vec", vec_text, "Vector dx,dy")->required();

    auto* curves = app.add_subcommand("curves", "Curve systems");
    curves->require_subcommand(1);
    auto* check = curves->add_subcommand("check", "Report the three conditions for each system");
    check->add_option("--file", curve_path, "Curve file")->required();
    check->add_option("--system", system_index, "Only this system (0-based)")->each([&](const std::string&) {
        has_system_index = true;
    });
    auto* violate = curves->add_subcommand("violate", "Find a violated condition");
    violate->add_option("--file", curve_path, "Curve file")->required();
    violate->add_option("--system", system_index, "System index (0-based)");
    violate->add_option("--mode", mode_text, "direct or reduce")->check(CLI::IsMember({"direct", "reduce"}));
    auto* example = curves->add_subcommand("example", "Curve that misses its (1,0) shift");
    example->add_option("--x", x_text, "Endpoint x, non-integer rational")->required();
    example->add_option("--eps", eps_text, "Zig-zag height, positive rational")->required();
    example->add_option("--out", out_path, "Write the curve file here");

    auto* render = app.add_subcommand("render", "Render a file as SVG");
    render->add_option("--in", in_path, "Tile system, assembly, shape or curve file")->required();
    render->add_option("--svg", svg_path, "Output SVG path")->required();
    render->add_option("--system", system_path, "Tile system for glue ticks on assemblies");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (*enumerate) {
            const TileSystem sys = detail::load_system(system_path);
            const std::set<Assembly> found = enumerate_producible(sys, max_size);
            if (!out_path.empty()) std::filesystem::create_directories(out_path);
            std::size_t i = 0;
            for (const Assembly& a : found) {
                ++i;
                out << "# assembly " << i << " size " << a.size() << '\n';
                if (out_path.empty()) {
                    out << io::serialize(a);
                } else {
                    std::ostringstream name;
                    name << "assembly_" << std::setw(5) << std::setfill('0') << i << ".txt";
                    io::write_file((std::filesystem::path(out_path) / name.str()).string(), io::serialize(a));
                }
            }
            out << "count " << found.size() << '\n';
            return kOk;
        }

        if (*stable) {
            const TileSystem sys = detail::load_system(system_path);
            const Assembly a = detail::load_assembly(assembly_path);
            require_known_tiles(a, sys);
            if (a.size() == 1) {
                out << "stable: single tile, no cut\n";
                return kOk;
            }
            const std::int64_t cut = min_cut_weight(a, sys);
            const std::int64_t tau = sys.temperature();
            if (cut >= tau) {
                out << "stable: min cut " << cut << " >= τ=" << tau << '\n';
                return kOk;
            }
            out << "unstable: min cut " << cut << " < τ=" << tau << '\n';
            return kNegative;
        }

        if (*reps) {
            const Assembly a = detail::load_assembly(assembly_path);
            const auto found = find_repetitions(a);
            for (const Repetition& r : found) out << "v=" << r.v << " overlap " << r.overlap.size() << '\n';
            if (found.empty()) {
                out << "no repetitions\n";
                return kNegative;
            }
            return kOk;
        }

        if (*pump_cmd) {
            const TileSystem sys = detail::load_system(system_path);
            const Assembly a = detail::load_assembly(assembly_path);
            const Vec v = detail::parse_vec(vec_text);
            const PumpTrace trace = pump(a, v, iters, sys);
            std::set<Assembly> universe;
            if (certify_bound > 0) universe = enumerate_producible(sys, certify_bound);
            if (!out_path.empty()) std::filesystem::create_directories(out_path);
            int code = kOk;
            std::size_t i = 0;
            out << "start: size " << a.size() << ", v=" << v << '\n';
            for (const PumpStep& s : trace.iterations) {
                ++i;
                out << "iteration " << i << ": size " << s.assembly.size() << ", v=" << trace.v << ", |C1|="
                    << s.added.size() << ", stable, repetitious";
                if (certify_bound > 0 && s.assembly.size() <= certify_bound) {
                    if (certify_producible_small(s.assembly, universe)) {
                        out << ", producible (enumerated to size " << certify_bound << ")";
                    } else {
                        out << ", NOT found among producible assemblies up to size " << certify_bound;
                        code = kNegative;
                    }
                } else {
                    out << ", producible by staged union of producible pieces (not enumerated)";
                }
                out << '\n';
                if (!out_path.empty()) {
                    std::ostringstream name;
                    name << "iterate_" << std::setw(3) << std::setfill('0') << i << ".txt";
                    io::write_file((std::filesystem::path(out_path) / name.str()).string(), io::serialize(s.assembly));
                }
            }
            return code;
        }

        if (*component) {
            const Shape s0 = detail::load_shape(shape_path);
            const Vec v = detail::parse_vec(vec_text);
            const Shape c = find_nonconflicting_component(s0, v);
            out << "component size " << c.size() << ": ";
            detail::print_cells(out, c.cells());
            out << '\n';
            return kOk;
        }

        if (*walk) {
            const Shape s0 = detail::load_shape(shape_path);
            const Vec v = detail::parse_vec(vec_text);
            const WalkTrace trace = shape_walk(s0, v);
            std::size_t i = 0;
            for (const WalkStep& st : trace.steps) {
                out << "step " << ++i << ": component at " << st.component.min_point() << " size "
                    << st.component.size() << ", anchor " << st.anchor << ", n=" << st.exit_multiplier << '\n';
            }
            out << "final component size " << trace.final_component.size() << ": ";
            detail::print_cells(out, trace.final_component.cells());
            out << '\n';
            return kOk;
        }

        if (*check) {
            const io::CurveFile file = detail::load_curves(curve_path);
            if (file.systems.empty()) throw InvalidInput("curve file has no system block");
            bool all = true;
            for (std::size_t s = 0; s < file.systems.size(); ++s) {
                if (has_system_index && s != system_index) continue;
                const CurveSystem sys = file.build(s);
                const ConditionReport r = validate_curve_system(sys);
                out << "system " << s;
                if (!file.systems[s].name.empty()) out << " (" << file.systems[s].name << ")";
                out << ": k=" << sys.size() << ", v=" << detail::rvec_text(sys.v()) << '\n';
                const std::vector<ViolationWitness>* lists[] = {&r.endpoint_failures, &r.self_translation_failures,
                                                                &r.pairwise_failures};
                const char* labels[] = {"endpoints", "disjoint from own translate", "pairwise disjoint"};
                for (int c = 0; c < 3; ++c) {
                    out << "  condition " << c + 1 << " (" << labels[c] << "): "
                        << (lists[c]->empty() ? "holds" : "fails") << '\n';
                    for (const ViolationWitness& w : *lists[c]) out << "    " << detail::witness_text(w) << '\n';
                }
                all = all && r.all_hold();
            }
            if (has_system_index && system_index >= file.systems.size())
                throw InvalidInput("curve file has no system " + std::to_string(system_index));
            return all ? kOk : kNegative;
        }

        if (*violate) {
            const io::CurveFile file = detail::load_curves(curve_path);
            const CurveSystem sys = file.build(system_index);
            const ViolationWitness w =
                find_violation(sys, mode_text == "direct" ? ViolationMode::Direct : ViolationMode::Reduce);
            out << "witness " << detail::witness_text(w) << '\n';
            out << "verified exactly\n";
            return kOk;
        }

        if (*example) {
            const Rational x = Rational::parse(x_text);
            const Rational eps = Rational::parse(eps_text);
            const PolyChain phi = gen_noninteger_example(x, eps);
            io::CurveFile file;
            file.curves.push_back({"phi", phi});
            const Rational n = x < 0 ? -x : x;
            const RVec v = x < 0 ? RVec{Rational(-1), Rational(0)} : RVec{Rational(1), Rational(0)};
            file.systems.push_back({"shift", v, {{"phi", RPoint{Rational(0), Rational(0)}, n}}});
            const std::string text = io::serialize(file);
            if (out_path.empty())
                out << text;
            else
                io::write_file(out_path, text);
            return kOk;
        }

        if (*render) {
            const std::string text = io::read_file(in_path);
            std::optional<TileSystem> sys;
            if (!system_path.empty()) sys = detail::load_system(system_path);
            std::string svg_text;
            try {
                svg_text = svg::render_text(text, sys ? &*sys : nullptr);
            } catch (const ParseError& e) {
                throw detail::FileError(in_path + ": " + e.what());
            }
            io::write_file(svg_path, svg_text);
            out << "wrote " << svg_path << '\n';
            return kOk;
        }
    } catch (const TheoremViolation& e) {
        err << "error: " << e.what() << '\n';
        return kNegative;
    } catch (const detail::FileError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace tileasm::cli
