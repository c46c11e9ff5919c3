#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "hubbard/tameness.hpp"
#include "util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hubbard;

namespace {

const char *const kForests[] = {"basilica",      "critical_2cycle", "cubic_fixed",     "figure5_tree1", "figure5_tree2",
                                "figure5_tree3", "quadratic_fixed", "rabbit",          "z2_plus_i"};

bool has_cycle_through(const std::vector<CycleRecord> &cs, const std::string &v) {
    return std::any_of(cs.begin(), cs.end(), [&](const auto &c) {
        return std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
    });
}

} // namespace

TEST_CASE("condition T on the Figure 5 trees") {
    auto t1 = corpus_forest("figure5_tree1");
    auto t2 = corpus_forest("figure5_tree2");
    auto t3 = corpus_forest("figure5_tree3");
    CHECK(t1.preimages("x") == std::vector<std::string>{"x"});
    CHECK(condition_T(t1, vertex_cycle(t1, "x")));
    CHECK(condition_T(t2, vertex_cycle(t2, "x")));
    CHECK_FALSE(condition_T(t3, vertex_cycle(t3, "x")));
    CHECK(condition_T_failures(t3, vertex_cycle(t3, "x"), TMode::Direct) == std::vector<std::string>{"xt"});
    CHECK(t3.vertex("xt").degree == 1);
    CHECK(t3.vertex("xt").germs.size() == 2);

    CHECK(assess_tameness(t1).verdict == Verdict::Tame);
    CHECK(assess_tameness(t2).verdict == Verdict::Tame);
    CHECK(assess_tameness(t3).verdict == Verdict::NotTameAsGiven);
}

TEST_CASE("condition T rejects non-candidates") {
    auto t1 = corpus_forest("figure5_tree1");
    CHECK_THROWS_WITH(condition_T(t1, vertex_cycle(t1, "c1")), doctest::Contains("not a tame-cycle candidate"));
    auto b = corpus_forest("basilica");
    materialize_all(b, 1);
    for (const auto &c : vertex_cycles(b))
        if (c.return_period == 1 && vertex_type(b, c.vertices.front()) == VertexType::Julia &&
            !rotation_number_zero(b, c))
            CHECK_THROWS(condition_T(b, c));
}

TEST_CASE("tame cycles") {
    auto q = corpus_forest("quadratic_fixed");
    CHECK(tame_cycles(q).empty());
    materialize_all(q, 1);
    auto tc = tame_cycles(q);
    REQUIRE(tc.size() == 1);
    CHECK(incidence(q, tc.front().vertices.front()) == 1);
    CHECK(tc.front().tame);
    CHECK_FALSE(has_cycle_through(tc, "c"));

    auto b = corpus_forest("basilica");
    materialize_all(b, 1);
    for (const auto &c : tame_cycles(b))
        CHECK(incidence(b, c.vertices.front()) == 1);
}

TEST_CASE("tame cycles are non-critical zero-rotation fixed cycles") {
    for (const auto *name : kForests) {
        auto h = corpus_forest(name);
        materialize_all(h, 1);
        std::vector<std::string> fixed;
        for (const auto &c : find_return_cycles(h, 1))
            if (!c.critical && c.rotation_zero)
                fixed.push_back(c.points.front().vertex);
        for (const auto &t : tame_cycles(h))
            CHECK(std::any_of(t.vertices.begin(), t.vertices.end(), [&](const auto &v) {
                return std::find(fixed.begin(), fixed.end(), v) != fixed.end();
            }));
    }
}

TEST_CASE("criterion") {
    auto uni = realize_critical_cycles(corpus_schema("unicritical_fixed"));
    CHECK(criterion_6_3(uni));

    auto f5 = corpus_forest("figure5_tree1");
    materialize_all(f5, 1);
    CHECK_FALSE(criterion_6_3(f5));

    // appending a new critical point enlarges the ambient degree
    auto s = parse_schema("ambient: u\n"
                          "vertex c1 fibre=u deg=2 to=c1\n"
                          "vertex c2 fibre=u deg=2 to=c2\n"
                          "vertex y fibre=u deg=1 to=c1\n"
                          "vertex g fibre=u deg=2 to=y\n");
    REQUIRE(validate_schema(s).ok());
    auto h = realize_critical_cycles(s.restrict_to({"c1", "c2"}));
    materialize_all(h, 1);
    CHECK_FALSE(criterion_6_3(h));
    auto grown = complete_by_appending(h, s);
    CHECK(validate_forest(grown, &s).ok());
    CHECK(criterion_6_3(grown));
    CHECK(assess_tameness(grown).verdict != Verdict::NotTameAsGiven);
}

TEST_CASE("criterion yields a tame extension") {
    for (const auto *name : kForests) {
        CAPTURE(name);
        auto h = corpus_forest(name);
        if (!criterion_6_3(h))
            continue;
        auto r = assess_tameness(h);
        CHECK(r.verdict != Verdict::NotTameAsGiven);
        const auto &w = r.witness ? *r.witness : h;
        CHECK_FALSE(tame_cycles(w).empty());
        CHECK(validate_forest(w).ok());
    }
}

TEST_CASE("superfluous cycle extension") {
    auto cubic = realize_critical_cycles(corpus_schema("unicritical_fixed"));
    auto before = cubic.vertices().size();
    auto ext = extend_with_superfluous_cycle(cubic);
    CHECK(ext.forest.vertices().size() == before + 1);
    CHECK(ext.cycle.return_period == 1);
    CHECK(find_return_cycles(ext.forest, 1).size() == 3);
    CHECK_FALSE(ext.forest.vertex(ext.cycle.vertices.front()).realizes);

    auto full = cubic;
    materialize_all(full, 1);
    auto again = extend_with_superfluous_cycle(full);
    CHECK(again.forest.vertices().size() == full.vertices().size());
}

TEST_CASE("extension keeps tame cycles, validity and counts") {
    for (const auto *name : kForests) {
        CAPTURE(name);
        auto h = corpus_forest(name);
        auto tame = tame_cycles(h);
        Extension ext;
        try {
            ext = extend_with_superfluous_cycle(h);
        } catch (const Error &) {
            continue; // every return-1 cycle is linked or post-critical
        }
        CHECK(validate_forest(ext.forest).ok());
        CHECK(expansion_check(ext.forest).ok);
        auto n = forest_inner_degree(h);
        for (int k = 1; k <= 3; ++k)
            CHECK(static_cast<std::int64_t>(find_return_cycles(ext.forest, k).size()) == cycle_count(n, k));
        auto after = tame_cycles(ext.forest);
        for (const auto &c : tame)
            CHECK(has_cycle_through(after, c.vertices.front()));
    }
}

TEST_CASE("direct and strict modes") {
    auto t3 = corpus_forest("figure5_tree3");
    auto rec = vertex_cycle(t3, "x");
    CHECK_FALSE(condition_T(t3, rec, TMode::Strict));
    auto t2 = corpus_forest("figure5_tree2");
    CHECK(condition_T(t2, vertex_cycle(t2, "x"), TMode::Strict));
    auto r = assess_tameness(t3, TMode::Strict);
    CHECK(r.mode == TMode::Strict);
}
