// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "hubbard/io.hpp"
#include "hubbard/random_cases.hpp"
#include "hubbard/report.hpp"
#include "hubbard/tameness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

using namespace hubbard;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few end up in the detail line.
struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string &what) {
        ++checks;
        if (!ok)
            failures.push_back(what);
    }
    Outcome done(const std::string &summary) const {
        if (failures.empty())
            return {true, summary + " (" + std::to_string(checks) + " checks)"};
        std::string d = std::to_string(failures.size()) + "/" + std::to_string(checks) + " failed: ";
        for (std::size_t i = 0; i < failures.size() && i < 3; ++i)
            d += (i ? "; " : "") + failures[i];
        return {false, d};
    }
};

std::string corpus_dir;

Schema schema_named(const std::string &name) {
    return parse_schema(read_file(corpus_dir + "/schemas/" + name + ".schema"));
}

std::vector<std::pair<std::string, std::string>> files_in(const std::string &sub, const std::string &ext) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &e : fs::directory_iterator(corpus_dir + "/" + sub))
        if (e.path().extension() == ext)
            out.emplace_back(e.path().stem().string(), read_file(e.path().string()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::string, AngledForest>> corpus_forests() {
    std::vector<std::pair<std::string, AngledForest>> out;
    for (const auto &[name, text] : files_in("forests", ".forest"))
        out.emplace_back(name, parse_forest(text));
    return out;
}

// Orbits of exact length k of t -> n t on Z/(n^k - 1), plus the fixed
// point 0 = n^k - 1 for k = 1.
std::int64_t necklaces(std::int64_t n, int k) {
    std::int64_t mod = 1;
    for (int i = 0; i < k; ++i)
        mod *= n;
    mod -= 1;
    std::vector<bool> seen(static_cast<std::size_t>(mod), false);
    std::int64_t count = 0;
    for (std::int64_t t = 0; t < mod; ++t) {
        if (seen[static_cast<std::size_t>(t)])
            continue;
        int len = 0;
        std::int64_t x = t;
        do {
            seen[static_cast<std::size_t>(x)] = true;
            x = x * n % mod;
            ++len;
        } while (x != t);
        if (len == k)
            ++count;
    }
    return k == 1 ? count + 1 : count;
}

bool has_tame_witness(const AngledForest &h) {
    auto r = assess_tameness(h);
    if (r.verdict == Verdict::Tame)
        return !r.tame_cycles.empty() || criterion_6_3(h);
    if (r.verdict == Verdict::TameAfterExtension && r.witness)
        return validate_forest(*r.witness).ok() && !tame_cycles(*r.witness).empty();
    return false;
}

// Every linked vertex's forward orbit stays on realizers of its own side.
bool orbits_stay_apart(const AngledForest &h, const Schema &side1) {
    for (const auto &v : h.vertices()) {
        if (!v.realizes)
            continue;
        bool from1 = side1.contains(*v.realizes);
        std::string w = v.id;
        for (std::size_t i = 0; i < h.vertices().size(); ++i) {
            w = h.image(w);
            const auto &r = h.vertex(w).realizes;
            if (r && side1.contains(*r) != from1)
                return false;
        }
    }
    return true;
}

Outcome cycle_counts() {
    Tally t;
    for (int n = 2; n <= 6; ++n)
        t.expect(cycle_count(n, 1) == n, "N(" + std::to_string(n) + ",1)");
    t.expect(cycle_count(2, 2) == 1, "N(2,2)");
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= 4; ++k)
            t.expect(cycle_count(n, k) == necklaces(n, k),
                     "N(" + std::to_string(n) + "," + std::to_string(k) + ") vs necklaces");
    return t.done("N(n,1) = n, N(2,2) = 1, necklace oracle n <= 4, k <= 4");
}

Outcome dynamics_counts() {
    Tally t;
    int forests = 0;
    for (auto &[name, h] : corpus_forests()) {
        auto n = forest_inner_degree(h);
        if (n < 2 || n > 4)
            continue;
        ++forests;
        for (int k = 1; k <= 3; ++k) {
            auto found = static_cast<std::int64_t>(find_return_cycles(h, k).size());
            t.expect(found == cycle_count(n, k), name + " k=" + std::to_string(k) + ": " + std::to_string(found) +
                                                     " vs " + std::to_string(cycle_count(n, k)));
        }
    }
    return t.done(std::to_string(forests) + " corpus forests, k = 1..3");
}

Outcome z0_identity() {
    Tally t;
    for (auto &[name, h] : corpus_forests()) {
        materialize_all(h, 1);
        auto z = zero_rotation_fixed_set(h);
        auto n = forest_inner_degree(h);
        for (const auto &u : h.ambient().fibres())
            t.expect(z.incidence_sum[u] == n - 1, name + " fibre " + u + ": " + std::to_string(z.incidence_sum[u]) +
                                                      " vs " + std::to_string(n - 1));
    }
    return t.done("per-fibre incidence sum over Z0 = n - 1 on completed corpus forests");
}

Outcome figure5() {
    Tally t;
    AngledForest tr[3];
    for (int i = 0; i < 3; ++i)
        tr[i] = parse_forest(read_file(corpus_dir + "/forests/figure5_tree" + std::to_string(i + 1) + ".forest"));
    t.expect(assess_tameness(tr[0]).verdict == Verdict::Tame, "tree 1 tame");
    t.expect(assess_tameness(tr[1]).verdict == Verdict::Tame, "tree 2 tame");
    t.expect(assess_tameness(tr[2]).verdict == Verdict::NotTameAsGiven, "tree 3 not tame");
    // tree 1: x has no preimage besides itself
    t.expect(tr[0].preimages("x") == std::vector<std::string>{"x"}, "tree 1 condition vacuous");
    t.expect(condition_T(tr[0], vertex_cycle(tr[0], "x")), "tree 1 condition holds");
    auto fails = condition_T_failures(tr[2], vertex_cycle(tr[2], "x"), TMode::Direct);
    t.expect(fails.size() == 1, "tree 3 fails at one vertex");
    if (fails.size() == 1) {
        const auto &v = tr[2].vertex(fails.front());
        t.expect(v.degree == 1 && v.germs.size() == 2 && tr[2].image(v.id) == "x",
                 "tree 3 failure at a degree-1 interior preimage");
    }
    return t.done("verdicts tame, tame, not tame");
}

GraftPool corpus_pool() {
    GraftPool pool;
    for (auto &[name, h] : corpus_forests())
        pool.add(std::move(h));
    for (const auto &[name, text] : files_in("schemas", ".schema")) {
        auto s = parse_schema(text);
        if (!validate_schema(s).ok())
            continue;
        pool.add(realize(s).forest);
    }
    return pool;
}

Outcome grafting(std::mt19937 &rng) {
    Tally t;
    auto pool = corpus_pool();
    const int pairs = 24;
    for (int i = 0; i < pairs; ++i) {
        auto plan = pool.random_plan(rng);
        auto tag = "pair " + std::to_string(i);
        try {
            auto g = graft(plan);
            const auto &v = g.glued.front();
            t.expect(validate_forest(g.forest).ok(), tag + " valid");
            t.expect(expansion_check(g.forest).ok, tag + " expanding");
            t.expect(incidence(g.forest, v) == g.m1 + g.m2, tag + " incidence m1 + m2");
            t.expect(condition_T(g.forest, vertex_cycle(g.forest, v)), tag + " glued cycle tame");
        } catch (const Error &e) {
            t.expect(false, tag + ": " + e.what());
        }
    }
    auto t3 = parse_forest(read_file(corpus_dir + "/forests/figure5_tree3.forest"));
    auto right = parse_forest(read_file(corpus_dir + "/forests/quadratic_fixed.forest"));
    materialize_all(right, 1);
    GraftPlan general{t3, "x", right, tame_cycles(right).front().vertices.front(), std::nullopt, true};
    auto g = graft(general);
    t.expect(validate_forest(g.forest).ok(), "general graft valid");
    t.expect(expansion_check(g.forest).ok, "general graft expanding");
    return t.done(std::to_string(pairs) + " random pairs from " + std::to_string(pool.size()) +
                  " tame forests, plus a general-mode graft");
}

Outcome unions() {
    Tally t;
    const std::pair<const char *, const char *> cases[] = {
        {"quadratic_critical", "unicritical_fixed"}, {"unicritical_fixed", "post_critical_tame"},
        {"quadratic_critical", "post_critical_tame"}, {"critical_cycles_mixed", "quadratic_critical"},
        {"figure7", "unicritical_fixed"},           {"chain_same_fibre", "quadratic_critical"}};
    for (const auto &[a, b] : cases) {
        auto tag = std::string(a) + " + " + b;
        try {
            auto s1 = schema_named(a), s2 = schema_named(b);
            t.expect(superfluous_cycles(s1).empty() && superfluous_cycles(s2).empty(), tag + " no superfluous");
            auto h = union_realize(realize(s1).forest, realize(s2).forest);
            auto both = schema_union(s1, s2);
            t.expect(validate_forest(h, &both).ok(), tag + " realizes the union");
            t.expect(assess_tameness(h).verdict == Verdict::Tame, tag + " tame");
            t.expect(orbits_stay_apart(h, s1), tag + " no grand-orbit collision");
        } catch (const Error &e) {
            t.expect(false, tag + ": " + e.what());
        }
    }
    // the post-critical tame cycle: y1 still lands on y2
    auto h = union_realize(realize(schema_named("unicritical_fixed")).forest,
                           realize(schema_named("post_critical_tame")).forest);
    auto y1 = realizer(h, "y1");
    t.expect(y1 && h.vertex(h.image(*y1)).realizes == std::optional<std::string>("y2"), "pushed preimage of y2");
    return t.done(std::to_string(std::size(cases)) + " unions, one with a post-critical tame cycle");
}

Outcome conservation(std::mt19937 &rng) {
    Tally t;
    const int runs = 24;
    for (int i = 0; i < runs; ++i) {
        auto pc = random_pipeline_case(rng);
        auto tag = "run " + std::to_string(i);
        try {
            auto h = realize_critical_cycles(pc.schema.restrict_to(pc.base));
            std::vector<std::size_t> counts;
            for (int k = 1; k <= 3; ++k)
                counts.push_back(find_return_cycles(h, k).size());
            for (const auto &v : pc.tail) {
                h = append_vertex(h, pc.schema, v);
                for (int k = 1; k <= 3; ++k)
                    t.expect(find_return_cycles(h, k).size() == counts[static_cast<std::size_t>(k - 1)],
                             tag + " append " + v + " k=" + std::to_string(k));
            }
            auto before = vertex_cycles(h);
            auto c = criticalize(h, *realizer(h, pc.tail.back()), pc.last_degree);
            auto after = vertex_cycles(c);
            bool same = after.size() == before.size();
            for (std::size_t j = 0; same && j < after.size(); ++j)
                same = after[j].vertices == before[j].vertices && after[j].return_period == before[j].return_period;
            t.expect(same, tag + " periodic orbits kept by criticalize");
            auto n = forest_inner_degree(c);
            for (int k = 1; k <= 3; ++k)
                t.expect(static_cast<std::int64_t>(find_return_cycles(c, k).size()) == cycle_count(n, k),
                         tag + " count after criticalize k=" + std::to_string(k));
            t.expect(validate_forest(c, &pc.schema).ok(), tag + " valid");
        } catch (const Error &e) {
            t.expect(false, tag + ": " + e.what());
        }
    }
    return t.done(std::to_string(runs) + " random runs; append keeps |cycles|, criticalize keeps periodic orbits");
}

Outcome subordinated(std::mt19937 &rng) {
    Tally t;
    for (const auto *name : {"figure7", "figure8", "figure9"}) {
        auto s = schema_named(name);
        auto r = realize_subordinated(s);
        t.expect(validate_forest(r.forest, &s).ok(), std::string(name) + " valid");
        t.expect(has_tame_witness(r.forest), std::string(name) + " tame witness");
    }
    std::map<SubordinatedCase, int> seen;
    int configs = 0;
    for (int i = 0; i < 3000; ++i) {
        auto s = random_two_critical_schema(rng);
        if (!validate_schema(s).ok())
            continue;
        SubordinatedClassification c;
        try {
            c = classify_subordinated(s);
        } catch (const Error &) {
            continue;
        }
        ++configs;
        ++seen[c.kind];
        auto tag = to_string(c.kind) + " #" + std::to_string(configs);
        try {
            auto r = realize_subordinated(s);
            t.expect(validate_forest(r.forest, &s).ok(), tag + " valid");
            t.expect(has_tame_witness(r.forest), tag + " tame witness");
        } catch (const Error &e) {
            t.expect(false, tag + ": " + e.what());
        }
    }
    std::string spread;
    for (auto k : {SubordinatedCase::AdmissibleGate, SubordinatedCase::SameFibreChain,
                   SubordinatedCase::SameFibreCriticalCycle, SubordinatedCase::CrossFibreClosedChain,
                   SubordinatedCase::CrossFibreOpenChain}) {
        t.expect(seen[k] > 0, "branch " + to_string(k) + " covered");
        spread += (spread.empty() ? "" : ", ") + to_string(k) + " " + std::to_string(seen[k]);
    }
    return t.done("Figures 7-9 and " + std::to_string(configs) + " random configurations (" + spread + ")");
}

Outcome two_hub_checks(std::mt19937 &rng) {
    Tally t;
    auto check = [&](const Schema &s, const std::string &tag) {
        auto r = realize_subordinated(s);
        t.expect(r.checks.has_value(), tag + " checks ran");
        if (!r.checks)
            return;
        t.expect(r.checks->w1 == r.checks->w2 && r.checks->w1 >= 2, tag + " reduced fibres equal, >= 2");
        t.expect(r.checks->same_side, tag + " v2j on the v1j side of v20");
        t.expect(r.checks->copy_isomorphic, tag + " copied segment isomorphic");
    };
    check(schema_named("figure9"), "figure9");
    int extra = 0;
    for (int i = 0; i < 3000 && extra < 5; ++i) {
        auto s = random_two_critical_schema(rng);
        if (!validate_schema(s).ok())
            continue;
        try {
            if (classify_subordinated(s).kind != SubordinatedCase::CrossFibreOpenChain)
                continue;
        } catch (const Error &) {
            continue;
        }
        check(s, "random open chain " + std::to_string(++extra));
    }
    return t.done("Figure 9 and " + std::to_string(extra) + " random open chains");
}

Outcome io_determinism() {
    Tally t;
    for (const auto &[name, text] : files_in("schemas", ".schema")) {
        auto once = write_schema(parse_schema(text));
        t.expect(write_schema(parse_schema(once)) == once, name + " schema round trip");
    }
    for (const auto &[name, text] : files_in("forests", ".forest")) {
        auto once = write_forest(parse_forest(text));
        t.expect(write_forest(parse_forest(once)) == once, name + " forest round trip");
        auto run = [&] {
            auto h = parse_forest(text);
            std::string out = export_dot(h);
            out += analyze_json(h, 3).dump(2);
            out += tameness_json(assess_tameness(h)).dump(2);
            return out;
        };
        t.expect(run() == run(), name + " DOT and reports repeat byte for byte");
    }
    for (const auto *name : {"figure7", "figure9", "chain_across"}) {
        auto s = schema_named(name);
        t.expect(write_forest(realize(s).forest) == write_forest(realize(s).forest),
                 std::string(name) + " realization repeats");
    }
    return t.done("corpus round trip, repeated DOT/report/realize output");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance checks"};
    corpus_dir = HUBBARD_CORPUS;
    unsigned seed = 20240611;
    app.add_option("--corpus", corpus_dir, "corpus directory")->check(CLI::ExistingDirectory);
    app.add_option("--seed", seed, "seed for the randomized criteria");
    CLI11_PARSE(app, argc, argv);

    std::mt19937 rng(seed);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"cycle counts", cycle_counts},
        {"dynamics/count agreement", dynamics_counts},
        {"Z0 identity", z0_identity},
        {"Figure 5 triptych", figure5},
        {"grafting suite", [&] { return grafting(rng); }},
        {"union pipeline", unions},
        {"append/criticalize conservation", [&] { return conservation(rng); }},
        {"subordinated pipeline", [&] { return subordinated(rng); }},
        {"two-hub structural checks", [&] { return two_hub_checks(rng); }},
        {"IO determinism", io_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
                  << " [" << ms.count() << " ms]\n";
    }
    return failed == 0 ? 0 : 1;
}
