// Command line driver: one subcommand per operation.
// Exit codes: 0 success, 1 semantic negative, 2 usage or parse error.

#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "hubbard/io.hpp"
#include "hubbard/report.hpp"
#include "hubbard/tameness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace hubbard;

namespace {

struct Usage : Error {
    using Error::Error;
};

struct Options {
    std::string format = "text";
    std::string mode = "direct";
    std::string output;
    int max_k = 3;
    std::string input, schema, left, right, cycle1, cycle2, angle, vertex, strategy = "auto";
    int degree = 0;
};

void emit(const Options &o, const std::string &text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f)
        throw Usage("cannot write '" + o.output + "'");
    f << text;
}

Schema load_schema(const std::string &path) { return parse_schema(read_file(path)); }
AngledForest load_forest(const std::string &path) { return parse_forest(read_file(path)); }

// Input forests of constructors must be valid before anything runs.
AngledForest load_valid_forest(const std::string &path) {
    auto h = load_forest(path);
    auto r = validate_forest(h);
    if (!r.ok())
        throw Usage(path + ": invalid forest: (" + r.violations.front().condition + ") " +
                    r.violations.front().message);
    return h;
}

TMode parse_mode(const std::string &m) { return m == "strict" ? TMode::Strict : TMode::Direct; }

int forest_out(const Options &o, const AngledForest &h, const std::string &route) {
    if (o.format == "json") {
        Json j;
        if (!route.empty())
            j["route"] = route;
        j["valid"] = validate_forest(h).ok();
        j["forest"] = write_forest(h);
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, (route.empty() ? "" : "# route: " + route + "\n") + write_forest(h));
    }
    return 0;
}

int run_validate_schema(const Options &o) {
    auto s = load_schema(o.input);
    auto r = validate_schema(s);
    if (o.format == "json") {
        Json j = validation_json(r);
        j["inner_degree"] = r.ok() ? inner_degree(s) : 0;
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, validation_text(r));
    }
    return r.ok() ? 0 : 1;
}

int run_validate_forest(const Options &o) {
    auto h = load_forest(o.input);
    std::optional<Schema> s;
    if (!o.schema.empty())
        s = load_schema(o.schema);
    auto r = validate_forest(h, s ? &*s : nullptr);
    emit(o, o.format == "json" ? validation_json(r).dump(2) + "\n" : validation_text(r));
    return r.ok() ? 0 : 1;
}

int run_analyze(const Options &o) {
    auto h = load_valid_forest(o.input);
    auto j = analyze_json(h, o.max_k);
    emit(o, o.format == "json" ? j.dump(2) + "\n" : analyze_text(j));
    return 0;
}

int run_tame(const Options &o) {
    auto h = load_valid_forest(o.input);
    auto r = assess_tameness(h, parse_mode(o.mode));
    auto j = tameness_json(r);
    emit(o, o.format == "json" ? j.dump(2) + "\n" : tameness_text(j));
    return r.verdict == Verdict::NotTameAsGiven ? 1 : 0;
}

int run_realize(const Options &o) {
    auto s = load_schema(o.input);
    auto r = validate_schema(s);
    if (!r.ok())
        throw Usage(o.input + ": schema not admissible: (" + r.violations.front().condition + ") " +
                    r.violations.front().message);
    static const std::map<std::string, Strategy> names{{"auto", Strategy::Auto},
                                                       {"critical-cycles", Strategy::CriticalCycles},
                                                       {"pseudo-chain", Strategy::PseudoChain},
                                                       {"subordinated", Strategy::Subordinated}};
    auto out = realize(s, names.at(o.strategy));
    return forest_out(o, out.forest, out.route);
}

int run_graft(const Options &o) {
    GraftPlan p;
    p.left = load_valid_forest(o.left);
    p.right = load_valid_forest(o.right);
    p.cycle1 = o.cycle1;
    p.cycle2 = o.cycle2;
    if (!o.angle.empty()) {
        try {
            p.angle = Angle::parse_gap(o.angle);
        } catch (const Error &e) {
            throw Usage("--angle: " + std::string(e.what()));
        }
    }
    p.general = o.mode == "general";
    return forest_out(o, graft(p).forest, "");
}

int run_union(const Options &o) {
    return forest_out(o, union_realize(load_valid_forest(o.left), load_valid_forest(o.right)), "");
}

int run_append(const Options &o) {
    return forest_out(o, append_vertex(load_valid_forest(o.input), load_schema(o.schema), o.vertex), "");
}

int run_criticalize(const Options &o) {
    return forest_out(o, criticalize(load_valid_forest(o.input), o.vertex, o.degree), "");
}

int run_export_dot(const Options &o) {
    emit(o, export_dot(load_valid_forest(o.input)));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Angled Hubbard forests: validation, dynamics, tameness and constructions"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App *c) {
        c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
        c->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    };
    auto input = [&](CLI::App *c, const char *what) {
        c->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
    };

    auto *vs = app.add_subcommand("validate-schema", "Check a schema for admissibility");
    input(vs, "Schema file");
    common(vs);
    auto *vf = app.add_subcommand("validate-forest", "Check an angled forest");
    input(vf, "Forest file");
    vf->add_option("--schema", o.schema, "Also check that the forest realizes this schema")
        ->check(CLI::ExistingFile);
    common(vf);
    auto *an = app.add_subcommand("analyze", "Cycle counts, zero-rotation set and expansion");
    input(an, "Forest file");
    an->add_option("--max-k", o.max_k, "Largest return period to search")->check(CLI::Range(1, 6));
    common(an);
    auto *tm = app.add_subcommand("tame", "Decide tameness");
    input(tm, "Forest file");
    tm->add_option("--mode", o.mode, "Preimages checked by condition (T)")
        ->check(CLI::IsMember({"direct", "strict"}));
    common(tm);
    auto *re = app.add_subcommand("realize", "Build a forest realizing a schema");
    input(re, "Schema file");
    re->add_option("--strategy", o.strategy, "Construction to use")
        ->check(CLI::IsMember({"auto", "critical-cycles", "pseudo-chain", "subordinated"}));
    common(re);
    auto *gr = app.add_subcommand("graft", "Glue two forests along tame cycles");
    gr->add_option("--left", o.left, "Left forest")->required()->check(CLI::ExistingFile);
    gr->add_option("--cycle1", o.cycle1, "Vertex on the left tame cycle")->required();
    gr->add_option("--right", o.right, "Right forest")->required()->check(CLI::ExistingFile);
    gr->add_option("--cycle2", o.cycle2, "Vertex on the right tame cycle")->required();
    gr->add_option("--angle", o.angle, "Glue angle j/(m1+m2)");
    gr->add_option("--mode", o.mode, "tame requires condition (T) on both cycles, general does not")
        ->check(CLI::IsMember({"tame", "general"}));
    common(gr);
    auto *un = app.add_subcommand("union", "Realize the disjoint union of two realized schemata");
    un->add_option("--left", o.left, "First forest")->required()->check(CLI::ExistingFile);
    un->add_option("--right", o.right, "Second forest")->required()->check(CLI::ExistingFile);
    common(un);
    auto *ap = app.add_subcommand("append", "Add a schema vertex whose image is realized");
    ap->add_option("--forest", o.input, "Forest")->required()->check(CLI::ExistingFile);
    ap->add_option("--schema", o.schema, "Schema")->required()->check(CLI::ExistingFile);
    ap->add_option("--vertex", o.vertex, "Schema vertex to add")->required();
    common(ap);
    auto *cr = app.add_subcommand("criticalize", "Raise the local degree of a preperiodic vertex");
    cr->add_option("--forest", o.input, "Forest")->required()->check(CLI::ExistingFile);
    cr->add_option("--vertex", o.vertex, "Vertex")->required();
    cr->add_option("--degree", o.degree, "New local degree")->required()->check(CLI::PositiveNumber);
    common(cr);
    auto *dot = app.add_subcommand("export-dot", "Graphviz rendering");
    input(dot, "Forest file");
    dot->add_option("--output,-o", o.output, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    const std::map<CLI::App *, int (*)(const Options &)> run{
        {vs, run_validate_schema}, {vf, run_validate_forest}, {an, run_analyze},   {tm, run_tame},
        {re, run_realize},         {gr, run_graft},           {un, run_union},     {ap, run_append},
        {cr, run_criticalize},     {dot, run_export_dot}};
    try {
        return run.at(app.get_subcommands().front())(o);
    } catch (const Usage &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
