#include "knotforge/cli/commands.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "knotforge/cli/fixtures.hpp"
#include "knotforge/cli/plot.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/synth.hpp"

namespace knotforge::cli {

ExitCode exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::degenerate: return ExitCode::degenerate;
        case ErrorKind::infeasible: return ExitCode::infeasible;
        case ErrorKind::invalid_input:
        case ErrorKind::domain: break;
    }
    return ExitCode::bad_input;
}

namespace {

std::pair<Axis, Axis> parse_axes(const std::string& s) {
    auto axis = [&](char c) {
        switch (c) {
            case 'x': return Axis::x;
            case 'y': return Axis::y;
            case 'z': return Axis::z;
            default: fail(ErrorKind::invalid_input, "--axes: expected two of x, y, z such as \"xy\", got \"" + s + "\"");
        }
    };
    if (s.size() != 2) fail(ErrorKind::invalid_input, "--axes: expected two of x, y, z such as \"xy\", got \"" + s + "\"");
    const Axis a = axis(s[0]), b = axis(s[1]);
    if (a == b) fail(ErrorKind::invalid_input, "--axes: the two axes must differ");
    return {a, b};
}

Axis remaining(Axis a, Axis b) {
    for (Axis c : {Axis::x, Axis::y, Axis::z})
        if (c != a && c != b) return c;
    return Axis::z;
}

KnotType target_of(const std::string& s) {
    const auto k = parse_knot_type(s);
    if (!k || *k == KnotType::unknown)
        fail(ErrorKind::invalid_input, "--target: unknown knot \"" + s + "\" (expected unknot, 3_1, 4_1, 5_1 or 5_2)");
    return *k;
}

SolverOptions solver_of(const RunConfig& cfg) {
    SolverOptions s;
    s.tol = cfg.tol;
    return s;
}

SynthOptions synth_of(const RunConfig& cfg) {
    SynthOptions o;
    o.min_margin = cfg.min_margin;
    o.lift_factor = cfg.lift_factor;
    o.restarts = cfg.budget;
    o.seed = cfg.seed;
    o.solver = solver_of(cfg);
    return o;
}

std::optional<SignPattern> load_pattern(const RunConfig& cfg) {
    if (cfg.pattern && cfg.pattern_name)
        fail(ErrorKind::invalid_input, "--pattern and --pattern-name are mutually exclusive");
    if (cfg.pattern) return pattern_from_json(read_json(*cfg.pattern));
    if (cfg.pattern_name) {
        auto p = pattern_fixture(*cfg.pattern_name);
        if (!p) fail(ErrorKind::invalid_input, "--pattern-name: no built-in pattern \"" + *cfg.pattern_name + "\"");
        return p;
    }
    return std::nullopt;
}

// Writes `text` to --out, or to `out` when no file was requested.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out)
        write_text(*cfg.out, text);
    else
        out << text;
}

std::string g(double v) { return fmt::format("{:.10g}", v); }

std::string curve_label(const CurveFile& c) { return c.name.empty() ? std::string("(unnamed)") : c.name; }

void require_projection(const CurveFile& c, Axis a, Axis b) {
    if (!c.curve.has(a) || !c.curve.has(b))
        fail(ErrorKind::invalid_input, "--axes: curve \"" + curve_label(c) + "\" has no z coordinate");
}

int cmd_crossings(const RunConfig& cfg, std::ostream& out) {
    const auto c = load_curve(cfg);
    const auto [a, b] = parse_axes(cfg.axes);
    require_projection(c, a, b);
    const auto& f = c.curve.coord(a);
    const auto& gf = c.curve.coord(b);
    const auto dps = double_points(f, gf, solver_of(cfg));

    std::ostringstream rep;
    rep << fmt::format("curve: {} (projection {}-{})\n", curve_label(c), to_string(a), to_string(b));
    rep << fmt::format("double points: {}\n", dps.size());
    rep << fmt::format("{:>4} {:>4} {:>4} {:>16} {:>16} {:>16} {:>16} {:>10}\n", "#", "i", "j", "s", "t", to_string(a),
                       to_string(b), "residual");
    auto arr = nlohmann::json::array();
    for (const auto& dp : dps) {
        const auto [i, j] = parameter_indices(dps, dp);
        const double r = pair_check(f, gf, dp);
        rep << fmt::format("{:>4} {:>4} {:>4} {:>16.10f} {:>16.10f} {:>16.10f} {:>16.10f} {:>10.2e}\n", dp.index + 1, i, j,
                           dp.s, dp.t, dp.position.x, dp.position.y, r);
        arr.push_back({{"index", dp.index + 1}, {"i", i}, {"j", j}, {"s", dp.s}, {"t", dp.t},
                       {"position", {dp.position.x, dp.position.y}}, {"residual", r}});
    }
    const auto params = crossing_parameters(dps);
    rep << "parameters:";
    for (double p : params) rep << ' ' << g(p);
    rep << '\n';
    out << rep.str();
    if (cfg.out) {
        nlohmann::json j{{"curve", curve_label(c)}, {"axes", cfg.axes}, {"parameters", params}, {"double_points", arr}};
        write_text(*cfg.out, dump(j));
    }
    return ExitCode::ok;
}

void describe_diagram(std::ostream& rep, const Diagram& d) {
    rep << fmt::format("crossings: {}\n", d.crossing_count());
    rep << "gauss: " << gauss_string(d) << '\n';
    rep << "pd: " << pd_string(d) << '\n';
    const auto tc = tricolor_count(d);
    rep << fmt::format("tricolor count: {} ({})\n", tc, tc > 3 ? "tricolorable" : "not tricolorable");
    rep << fmt::format("determinant: {}\n", determinant(d));
    rep << "alexander: " << to_string(alexander(d)) << '\n';
    rep << "knot: " << to_string(identify(d)) << '\n';
}

int cmd_identify(const RunConfig& cfg, std::ostream& out, bool axes_given) {
    const auto c = load_curve(cfg);
    if (!c.curve.z) fail(ErrorKind::invalid_input, "--input: identify needs a curve with x, y and z");
    std::ostringstream rep;
    rep << "curve: " << curve_label(c) << '\n';
    rep << "degree sequence: " << to_string(degree_sequence(c.curve.x, c.curve.y, *c.curve.z)) << '\n';
    Diagram d;
    if (axes_given) {
        const auto [a, b] = parse_axes(cfg.axes);
        const Axis h = remaining(a, b);
        const auto dps = double_points(c.curve.coord(a), c.curve.coord(b), solver_of(cfg));
        d = build_diagram(c.curve.coord(a), c.curve.coord(b), c.curve.coord(h), dps, cfg.tol);
        rep << fmt::format("projection: {}-{}, height {}\n", to_string(a), to_string(b), to_string(h));
    } else {
        const auto id = identify_curve(c.curve, solver_of(cfg));
        Axis a = Axis::x, b = Axis::y;
        if (id.height == Axis::y) b = Axis::z;
        if (id.height == Axis::x) a = Axis::y, b = Axis::z;
        rep << fmt::format("projection: {}-{}, height {}\n", to_string(a), to_string(b), to_string(id.height));
        d = id.diagram;
    }
    describe_diagram(rep, d);
    out << rep.str();
    if (cfg.out) {
        nlohmann::json j{{"curve", curve_label(c)},
                         {"crossings", d.crossing_count()},
                         {"gauss", gauss_string(d)},
                         {"pd", pd_string(d)},
                         {"tricolor_count", tricolor_count(d)},
                         {"determinant", determinant(d)},
                         {"alexander", to_string(alexander(d))},
                         {"knot", std::string(to_string(identify(d)))}};
        write_text(*cfg.out, dump(j));
    }
    return ExitCode::ok;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = load_curve(cfg);
    const auto dps = double_points(c.curve.x, c.curve.y, solver_of(cfg));
    auto pattern = load_pattern(cfg);
    if (!pattern) {
        if (!cfg.target) fail(ErrorKind::invalid_input, "synth needs --pattern, --pattern-name or --target");
        auto pats = enumerate_patterns(dps, target_of(*cfg.target), 1);
        if (pats.empty())
            fail(ErrorKind::infeasible, "no over/under pattern on this projection identifies as " + *cfg.target);
        pattern = pats.front();
    }
    const auto res = synthesize_height(dps, *pattern, synth_of(cfg));
    c.curve.z = res.h;
    c.name = (c.name.empty() ? std::string("curve") : c.name) + "_z";
    c.meta["pattern"] = to_json(*pattern)["constraints"];
    c.meta["margins"] = res.margins;
    c.meta["seed"] = cfg.seed;
    c.meta["trace"] = res.trace;

    std::ostringstream rep;
    rep << fmt::format("double points: {}\n", dps.size());
    rep << "pattern: " << to_string(*pattern) << '\n';
    for (const auto& t : res.trace) rep << "  " << t << '\n';
    rep << "z = " << to_string(res.h) << '\n';
    rep << "relative margins:";
    for (double m : res.margins) rep << ' ' << fmt::format("{:.4g}", m);
    rep << '\n';
    const auto dg = diagram_from_crossings(dps, assign_over_under(res.h, dps));
    rep << "knot: " << to_string(identify(dg)) << '\n';

    const std::string file = dump(to_json(c));
    if (cfg.out) {
        write_text(*cfg.out, file);
        out << rep.str();
    } else {
        out << file;
        err << rep.str();
    }
    return ExitCode::ok;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = load_curve(cfg);
    const auto pattern = load_pattern(cfg);
    KnotType target;
    if (cfg.target) {
        target = target_of(*cfg.target);
    } else if (pattern) {
        // the knot the pattern draws on the xy projection
        const auto dps = double_points(c.curve.x, c.curve.y, solver_of(cfg));
        target = identify(diagram_from_crossings(dps, crossings_from_pattern(dps, *pattern)));
        if (target == KnotType::unknown) fail(ErrorKind::invalid_input, "--pattern: the pattern is not a tabulated knot");
    } else if (c.curve.z) {
        target = identify_curve(c.curve, solver_of(cfg)).knot;
        if (target == KnotType::unknown) fail(ErrorKind::invalid_input, "--target: the input is not a tabulated knot");
    } else {
        fail(ErrorKind::invalid_input, "--target: required when the input has no z coordinate or pattern");
    }
    const auto red = reduce_to_minimal(c.curve, target, synth_of(cfg), pattern);
    c.curve = red.curve;
    c.name = (c.name.empty() ? std::string("curve") : c.name) + "_minimal";
    c.meta["target"] = std::string(to_string(target));
    c.meta["seed"] = cfg.seed;
    c.meta["log"] = red.log;

    std::ostringstream rep;
    for (const auto& l : red.log) rep << l << '\n';
    for (Axis a : {Axis::x, Axis::y, Axis::z}) rep << to_string(a) << " = " << to_string(c.curve.coord(a)) << '\n';
    const std::string file = dump(to_json(c));
    if (cfg.out) {
        write_text(*cfg.out, file);
        out << rep.str();
    } else {
        out << file;
        err << rep.str();
    }
    return ExitCode::ok;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
    const auto c = load_curve(cfg);
    const auto [a, b] = parse_axes(cfg.axes);
    require_projection(c, a, b);
    PlotOptions po;
    po.horizontal = a;
    po.vertical = b;
    po.color = cfg.color;
    emit(cfg, render_svg(c.curve, po, solver_of(cfg)), out);
    return ExitCode::ok;
}

int cmd_patterns(const RunConfig& cfg, std::ostream& out) {
    const auto c = load_curve(cfg);
    if (!cfg.target) fail(ErrorKind::invalid_input, "--target: required for patterns");
    const auto target = target_of(*cfg.target);
    const auto [a, b] = parse_axes(cfg.axes);
    require_projection(c, a, b);
    const auto dps = double_points(c.curve.coord(a), c.curve.coord(b), solver_of(cfg));
    const auto pats = enumerate_patterns(dps, target, cfg.limit);
    std::ostringstream rep;
    rep << fmt::format("{} of {} over/under assignments identify as {}{}\n", pats.size(), std::uint64_t{1} << dps.size(),
                       to_string(target), cfg.limit > 0 ? fmt::format(" (limit {})", cfg.limit) : "");
    auto arr = nlohmann::json::array();
    for (const auto& p : pats) {
        rep << "  " << to_string(p) << '\n';
        arr.push_back(to_json(p));
    }
    out << rep.str();
    if (cfg.out) write_text(*cfg.out, dump({{"target", std::string(to_string(target))}, {"patterns", arr}}));
    return ExitCode::ok;
}

int cmd_fixture(const RunConfig& cfg, const std::string& name, bool list, std::ostream& out) {
    if (list || name.empty()) {
        out << "curves:";
        for (const auto& n : curve_fixture_names()) out << ' ' << n;
        out << "\npatterns:";
        for (const auto& n : pattern_fixture_names()) out << ' ' << n;
        out << '\n';
        return ExitCode::ok;
    }
    if (auto c = curve_fixture(name)) {
        emit(cfg, dump(to_json(*c)), out);
        return ExitCode::ok;
    }
    if (auto p = pattern_fixture(name)) {
        emit(cfg, dump(to_json(*p)), out);
        return ExitCode::ok;
    }
    fail(ErrorKind::invalid_input, "fixture: no fixture named \"" + name + "\"");
}

}  // namespace

void validate(const RunConfig& cfg) {
    auto bad = [](const std::string& m) { fail(ErrorKind::invalid_input, m); };
    if (!(cfg.tol > 0) || !std::isfinite(cfg.tol)) bad("--tol: must be a positive number");
    if (!(cfg.min_margin > 0) || !std::isfinite(cfg.min_margin)) bad("--min-margin: must be a positive number");
    if (!(cfg.lift_factor > 0) || !std::isfinite(cfg.lift_factor)) bad("--lift-factor: must be a positive number");
    if (cfg.budget < 1) bad("--budget: must be at least 1");
    if (cfg.limit < 0) bad("--limit: must be non-negative");
    if (cfg.input && cfg.fixture) bad("--input and --fixture are mutually exclusive");
    if (cfg.pattern && cfg.pattern_name) bad("--pattern and --pattern-name are mutually exclusive");
    parse_axes(cfg.axes);
    if (cfg.target) target_of(*cfg.target);
}

CurveFile load_curve(const RunConfig& cfg) {
    if (cfg.fixture) {
        auto c = curve_fixture(*cfg.fixture);
        if (!c) fail(ErrorKind::invalid_input, "--fixture: no curve fixture named \"" + *cfg.fixture + "\"");
        return *c;
    }
    if (!cfg.input) fail(ErrorKind::invalid_input, "--input: a curve file (or --fixture) is required");
    return curve_from_json(read_json(*cfg.input));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Crossing data, knot invariants and degree-2/4 height synthesis for compact rational knots", "knotforge"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string input, fixture, pattern, pattern_name, outpath, target;
    bool axes_given = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input,-i", input, "Curve file (JSON)");
        sub->add_option("--fixture,-f", fixture, "Built-in curve instead of --input");
        sub->add_option("--tol", cfg.tol, "Root and solver tolerance");
        sub->add_option("--out,-o", outpath, "Output file");
    };
    auto synth_opts = [&](CLI::App* sub) {
        sub->add_option("--pattern", pattern, "Pattern file (JSON)");
        sub->add_option("--pattern-name", pattern_name, "Built-in pattern: 3_1, 4_1, 5_1, 5_2");
        sub->add_option("--target", target, "Knot type: unknot, 3_1, 4_1, 5_1, 5_2");
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--lift-factor", cfg.lift_factor, "Lift margin as a multiple of |min| (plus 1)");
        sub->add_option("--min-margin", cfg.min_margin, "Minimum relative constraint margin");
        sub->add_option("--budget", cfg.budget, "Randomized restarts after the 15 seed assignments");
    };

    auto* crossings = app.add_subcommand("crossings", "Double points of a planar projection");
    common(crossings);
    crossings->add_option("--axes", cfg.axes, "Projection axes, e.g. xy");
    auto* ident = app.add_subcommand("identify", "Gauss/PD codes, invariants and knot type of a space curve");
    common(ident);
    auto* axes_opt = ident->add_option("--axes", cfg.axes, "Projection axes (default: automatic)");
    auto* synth = app.add_subcommand("synth", "Synthesize a degree-2/4 z for an x-y projection");
    common(synth);
    synth_opts(synth);
    auto* reduce = app.add_subcommand("reduce", "Reduce every coordinate to degree 2/4");
    common(reduce);
    synth_opts(reduce);
    auto* plot = app.add_subcommand("plot", "SVG drawing of a projection");
    common(plot);
    plot->add_option("--axes", cfg.axes, "Projection axes, e.g. xy");
    plot->add_flag("--color", cfg.color, "Color arcs by a 3-coloring");
    auto* patterns = app.add_subcommand("patterns", "Over/under patterns realizing a knot type");
    common(patterns);
    patterns->add_option("--axes", cfg.axes, "Projection axes, e.g. xy");
    patterns->add_option("--target", target, "Knot type")->required();
    patterns->add_option("--limit", cfg.limit, "Maximum number of patterns (0 = all)");
    auto* fixture_cmd = app.add_subcommand("fixture", "Print a built-in curve or pattern");
    std::string fixture_name;
    bool list = false;
    fixture_cmd->add_option("name", fixture_name, "Fixture name");
    fixture_cmd->add_flag("--list", list, "List fixture names");
    fixture_cmd->add_option("--out,-o", outpath, "Output file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::bad_input;
    }
    axes_given = axes_opt->count() > 0;
    if (!input.empty()) cfg.input = input;
    if (!fixture.empty()) cfg.fixture = fixture;
    if (!pattern.empty()) cfg.pattern = pattern;
    if (!pattern_name.empty()) cfg.pattern_name = pattern_name;
    if (!outpath.empty()) cfg.out = outpath;
    if (!target.empty()) cfg.target = target;

    try {
        validate(cfg);
        if (crossings->parsed()) return cmd_crossings(cfg, out);
        if (ident->parsed()) return cmd_identify(cfg, out, axes_given);
        if (synth->parsed()) return cmd_synth(cfg, out, err);
        if (reduce->parsed()) return cmd_reduce(cfg, out, err);
        if (plot->parsed()) return cmd_plot(cfg, out);
        if (patterns->parsed()) return cmd_patterns(cfg, out);
        return cmd_fixture(cfg, fixture_name, list, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, out, err);
}

}  // namespace knotforge::cli
