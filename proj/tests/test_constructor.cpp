#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "hubbard/tameness.hpp"
#include "util.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hubbard;

namespace {

// Critical fixed point of degree d with every fixed point materialized.
AngledForest completed_unicritical(int d) {
    auto s = parse_schema("ambient: u\nvertex c fibre=u deg=" + std::to_string(d) + " to=c\n");
    auto h = realize_critical_cycles(s);
    materialize_all(h, 1);
    return h;
}

std::string first_tame(const AngledForest &h) {
    auto tc = tame_cycles(h);
    REQUIRE_FALSE(tc.empty());
    return tc.front().vertices.front();
}

void check_counts_equal(const AngledForest &a, const AngledForest &b) {
    for (int k = 1; k <= 3; ++k)
        CHECK(find_return_cycles(a, k).size() == find_return_cycles(b, k).size());
}

} // namespace

TEST_CASE("critical cycle realizations") {
    auto uni = realize_critical_cycles(corpus_schema("unicritical_fixed"));
    CHECK(uni.vertices().size() == 1);
    CHECK(uni.edges().empty());
    CHECK(validate_forest(uni).ok());
    CHECK(criterion_6_3(uni));

    auto two = realize_critical_cycles(corpus_schema("critical_2cycle_two_fibres"));
    CHECK(two.vertices().size() == 2);
    CHECK(forest_inner_degree(two) == 4);
    auto done = two;
    materialize_all(done, 1);
    CHECK(find_return_cycles(done, 1).size() == 4);

    auto mixed_s = corpus_schema("critical_cycles_mixed");
    auto mixed = realize_critical_cycles(mixed_s);
    CHECK(validate_forest(mixed, &mixed_s).ok());
    CHECK(assess_tameness(mixed).verdict != Verdict::NotTameAsGiven);

    CHECK_THROWS(realize_critical_cycles(corpus_schema("figure7")));
}

TEST_CASE("pseudo-chain realizations") {
    for (const auto *name : {"chain_same_fibre", "chain_across"}) {
        CAPTURE(name);
        auto s = corpus_schema(name);
        auto h = realize_pseudo_chain(s);
        CHECK(validate_forest(h, &s).ok());
        CHECK(expansion_check(h).ok);
        CHECK(assess_tameness(h).verdict != Verdict::NotTameAsGiven);
    }
    CHECK_THROWS_WITH(realize_pseudo_chain(corpus_schema("not_pseudo_chain")), doctest::Contains("not a pseudo-chain"));
}

TEST_CASE("graft two critical fixed point forests") {
    auto left = completed_unicritical(2), right = completed_unicritical(2);
    GraftPlan p{left, first_tame(left), right, first_tame(right), std::nullopt, false};
    auto g = graft(p);
    CHECK(validate_forest(g.forest).ok());
    CHECK(expansion_check(g.forest).ok);
    const auto &v = g.glued.front();
    CHECK(incidence(g.forest, v) == g.m1 + g.m2);
    CHECK(g.m1 + g.m2 == 2);
    CHECK(condition_T(g.forest, vertex_cycle(g.forest, v)));
    CHECK(forest_inner_degree(g.forest) == 3);
    // the glued cycle appears once
    CHECK(std::count_if(g.forest.vertices().begin(), g.forest.vertices().end(),
                        [&](const auto &x) { return x.id == v; }) == 1);
}

TEST_CASE("graft rejects bad input") {
    auto left = completed_unicritical(2), right = completed_unicritical(3);
    auto crit = left.vertices().front().id;
    GraftPlan bad{left, crit, right, first_tame(right), std::nullopt, false};
    CHECK_THROWS_WITH(graft(bad), doctest::Contains("critical"));

    GraftPlan zero{left, first_tame(left), right, first_tame(right), Rational(0), false};
    CHECK_THROWS_WITH(graft(zero), doctest::Contains("non trivial multiple required"));

    auto other = realize_critical_cycles(corpus_schema("critical_2cycle_two_fibres"));
    materialize_all(other, 1);
    GraftPlan mismatch{left, first_tame(left), other, first_tame(other), std::nullopt, false};
    CHECK_THROWS(graft(mismatch));
}

TEST_CASE("graft glue angles") {
    auto left = completed_unicritical(3), right = completed_unicritical(2);
    // a fixed leaf of the cubic side has one germ
    GraftPlan p{left, first_tame(left), right, first_tame(right), Rational(1, 2), false};
    auto g = graft(p);
    CHECK(validate_forest(g.forest).ok());
    p.angle = Rational(2, 2);
    CHECK_THROWS(graft(p));
}

TEST_CASE("general graft of non-tame cycles") {
    auto t3 = corpus_forest("figure5_tree3");
    auto right = completed_unicritical(2);
    GraftPlan p{t3, "x", right, first_tame(right), std::nullopt, false};
    CHECK_THROWS_WITH(graft(p), doctest::Contains("condition (T)"));
    p.general = true;
    auto g = graft(p);
    CHECK(validate_forest(g.forest).ok());
    CHECK(expansion_check(g.forest).ok);
}

TEST_CASE("union without push") {
    auto s1 = corpus_schema("quadratic_critical");
    auto s2 = corpus_schema("unicritical_fixed");
    auto h = union_realize(realize(s1).forest, realize(s2).forest);
    auto both = schema_union(s1, s2);
    CHECK(validate_forest(h, &both).ok());
    CHECK(assess_tameness(h).verdict == Verdict::Tame);
}

TEST_CASE("union with a post-critical tame cycle pushes preimages") {
    auto s1 = corpus_schema("unicritical_fixed");
    auto s2 = corpus_schema("post_critical_tame");
    auto h2 = realize(s2).forest;
    auto y2 = *realizer(h2, "y2");
    CHECK(condition_T(h2, vertex_cycle(h2, y2)));

    auto h = union_realize(realize(s1).forest, h2);
    auto both = schema_union(s1, s2);
    CHECK(validate_forest(h, &both).ok());
    // y1 now maps to a cycle that is not the glued one, and orbits stay apart
    auto y1 = *realizer(h, "y1");
    auto img = h.image(y1);
    CHECK(h.vertex(img).realizes == std::optional<std::string>("y2"));
    for (const auto &v : h.vertices()) {
        if (!v.realizes)
            continue;
        bool from1 = s1.contains(*v.realizes);
        std::string w = v.id;
        for (std::size_t i = 0; i < h.vertices().size(); ++i) {
            w = h.image(w);
            if (h.vertex(w).realizes)
                CHECK(s1.contains(*h.vertex(w).realizes) == from1);
        }
    }
    // germ coherence at the pushed vertex
    for (const auto &e : h.incident_edges(y1))
        CHECK(h.has_germ(img, h.germ_image(y1, e)));
    CHECK(assess_tameness(h).verdict == Verdict::Tame);
}

TEST_CASE("union rejects superfluous cycles") {
    auto s = parse_schema("ambient: u\n"
                          "vertex c fibre=u deg=2 to=c\n"
                          "vertex z fibre=u deg=1 to=z\n");
    auto h = realize_critical_cycles(s.restrict_to({"c"}));
    materialize_all(h, 1);
    for (const auto &v : h.vertices())
        if (!v.realizes && is_periodic(h, v.id))
            h.vertex(v.id).realizes = "z";
    CHECK_THROWS_WITH(union_realize(h, realize(corpus_schema("unicritical_fixed")).forest),
                      doctest::Contains("superfluous cycles not allowed"));
}

TEST_CASE("append and criticalize") {
    auto s = parse_schema("ambient: u\n"
                          "vertex c1 fibre=u deg=2 to=c1\n"
                          "vertex c2 fibre=u deg=2 to=c2\n"
                          "vertex y fibre=u deg=1 to=c1\n"
                          "vertex g fibre=u deg=2 to=y\n");
    auto h = realize_critical_cycles(s.restrict_to({"c1", "c2"}));
    auto a1 = append_vertex(h, s, "y");
    CHECK(validate_forest(a1).ok());
    check_counts_equal(h, a1);
    auto a2 = append_vertex(a1, s, "g");
    check_counts_equal(h, a2);
    auto g = *realizer(a2, "g");
    CHECK_THROWS_WITH(criticalize(a2, g, 1), doctest::Contains("does not exceed"));
    auto c = criticalize(a2, g, 2);
    CHECK(validate_forest(c, &s).ok());
    // same periodic vertices with the same periods; the symbolic count
    // follows the new inner degree
    CHECK(vertex_cycles(c).size() == vertex_cycles(a2).size());
    CHECK(forest_inner_degree(c) == 4);
    for (int k = 1; k <= 3; ++k)
        CHECK(static_cast<std::int64_t>(find_return_cycles(c, k).size()) == cycle_count(4, k));
    for (const auto &germ : c.vertex(g).germs)
        CHECK(germ.gap.is_integer() == (c.vertex(g).germs.size() == 1));
    CHECK(criterion_6_3(c));

    CHECK_THROWS_WITH(criticalize(a2, *realizer(a2, "c1"), 3), doctest::Contains("cannot criticalize periodic"));
    CHECK_THROWS_WITH(append_vertex(realize_critical_cycles(corpus_schema("unicritical_fixed")),
                                    parse_schema("ambient: u0\nvertex c fibre=u0 deg=3 to=c\n"
                                                 "vertex w fibre=u0 deg=1 to=c\n"),
                                    "w"),
                      doctest::Contains("saturated"));
}

TEST_CASE("appending along an orbit tail terminates") {
    auto s = parse_schema("ambient: u\n"
                          "vertex c fibre=u deg=2 to=c\n"
                          "vertex d fibre=u deg=2 to=d\n"
                          "vertex a fibre=u deg=1 to=c\n"
                          "vertex b fibre=u deg=1 to=a\n"
                          "vertex w fibre=u deg=2 to=b\n");
    REQUIRE(validate_schema(s).ok());
    auto h = realize_critical_cycles(s.restrict_to({"c", "d"}));
    auto full = complete_by_appending(h, s);
    CHECK(validate_forest(full, &s).ok());
    CHECK(assess_tameness(full).verdict != Verdict::NotTameAsGiven);
}

TEST_CASE("subordinated figures") {
    auto f7 = realize_subordinated(corpus_schema("figure7"));
    CHECK(f7.route == "gate");
    auto f8 = realize_subordinated(corpus_schema("figure8"));
    CHECK(f8.route == "critical-cycle-line");
    auto f9 = realize_subordinated(corpus_schema("figure9"));
    CHECK(f9.route == "two-hub");
    REQUIRE(f9.checks);
    CHECK(f9.checks->w1 == f9.checks->w2);
    CHECK(f9.checks->w1 >= 2);
    CHECK(f9.checks->same_side);
    CHECK(f9.checks->copy_isomorphic);
    for (const auto *r : {&f7, &f8, &f9}) {
        CHECK(validate_forest(r->forest).ok());
        CHECK(expansion_check(r->forest).ok);
        CHECK_FALSE(tame_cycles(r->forest).empty());
    }
}

TEST_CASE("auto strategy on the schema corpus") {
    for (const auto *name : {"figure7", "figure8", "figure9", "chain_same_fibre", "chain_across", "gate_critical",
                             "critical_cycles_mixed", "critical_2cycle_two_fibres", "unicritical_fixed",
                             "post_critical_tame", "quadratic_critical"}) {
        CAPTURE(name);
        auto s = corpus_schema(name);
        auto r = realize(s);
        CHECK(validate_forest(r.forest, &s).ok());
        CHECK(assess_tameness(r.forest).verdict != Verdict::NotTameAsGiven);
    }
}
