#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "util.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

using namespace hubbard;

namespace {

const char *const kForests[] = {"basilica",      "critical_2cycle", "cubic_fixed",     "figure5_tree1", "figure5_tree2",
                                "figure5_tree3", "quadratic_fixed", "rabbit",          "z2_plus_i"};

std::string replace(std::string s, const std::string &from, const std::string &to) {
    auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

// Components of the tree of v with v removed.
int components_without(const AngledForest &h, const std::string &v) {
    std::set<std::string> seen{v};
    int n = 0;
    for (const auto &e : h.incident_edges(v)) {
        const auto &start = h.other_end(e, v);
        if (seen.count(start))
            continue;
        ++n;
        std::function<void(const std::string &)> walk = [&](const std::string &x) {
            if (!seen.insert(x).second)
                return;
            for (const auto &f : h.incident_edges(x))
                walk(h.other_end(f, x));
        };
        walk(start);
    }
    return n;
}

} // namespace

TEST_CASE("single-vertex trees of a critical cycle are valid") {
    auto h = parse_forest("ambient: u v\n"
                          "tree u\nvertex a deg=2\n"
                          "tree v\nvertex b deg=2\n"
                          "vmap a -> b\nvmap b -> a\n");
    CHECK(validate_forest(h).ok());
    CHECK(vertex_type(h, "a") == VertexType::Fatou);
}

TEST_CASE("corpus forests validate") {
    for (const auto *name : kForests) {
        CAPTURE(name);
        auto r = validate_forest(corpus_forest(name));
        CHECK(r.ok());
    }
}

TEST_CASE("angle condition breach is flagged") {
    auto text = read_file(corpus_path("forests/figure5_tree2.forest"));
    auto h = parse_forest(replace(text, "angles c1: e0 1/2 e1 1/2", "angles c1: e0 1/3 e1 2/3"));
    auto r = validate_forest(h);
    CHECK(r.has("angle"));
}

TEST_CASE("incidence") {
    auto h = corpus_forest("figure5_tree2");
    CHECK(incidence(h, "xt") == 1);
    CHECK(incidence(h, "x") == 2);
    CHECK(incidence(h, "c1") == 0);
    CHECK_THROWS(incidence(h, "nope"));
}

TEST_CASE("vertex type follows the eventual cycle") {
    auto h = corpus_forest("figure5_tree3");
    CHECK(vertex_type(h, "c1") == VertexType::Fatou);
    CHECK(vertex_type(h, "x") == VertexType::Julia);
    CHECK(vertex_type(h, "ct") == VertexType::Fatou);
    CHECK_FALSE(is_periodic(h, "ct"));
}

TEST_CASE("return period") {
    CHECK(return_period(corpus_forest("figure5_tree1"), "x") == 1);
    CHECK(return_period(corpus_forest("basilica"), "c0") == 2);
    CHECK_THROWS_WITH(return_period(corpus_forest("figure5_tree2"), "xt"), doctest::Contains("preperiodic"));

    auto fig9 = realize_subordinated(corpus_schema("figure9")).forest;
    auto v12 = realizer(fig9, "v12");
    REQUIRE(v12);
    CHECK(return_period(fig9, *v12) == 2);
}

TEST_CASE("rotation number zero") {
    auto q = corpus_forest("quadratic_fixed");
    materialize_all(q, 1);
    for (const auto &c : vertex_cycles(q))
        if (vertex_type(q, c.vertices.front()) == VertexType::Julia) {
            CHECK(incidence(q, c.vertices.front()) == 1);
            CHECK(rotation_number_zero(q, c));
        }

    auto b = corpus_forest("basilica");
    materialize_all(b, 1);
    bool swapped = false;
    for (const auto &c : vertex_cycles(b))
        if (c.return_period == 1 && vertex_type(b, c.vertices.front()) == VertexType::Julia &&
            incidence(b, c.vertices.front()) == 2) {
            CHECK_FALSE(rotation_number_zero(b, c));
            swapped = true;
        }
    CHECK(swapped);

    auto f5 = corpus_forest("figure5_tree1");
    CHECK(rotation_number_zero(f5, vertex_cycle(f5, "x")));
    CHECK_THROWS(rotation_number_zero(f5, vertex_cycle(f5, "c1")));
    CHECK_THROWS(rotation_number_zero(b, vertex_cycle(b, "c0")));
}

TEST_CASE("angle between germs") {
    auto f5 = corpus_forest("figure5_tree1");
    auto g = f5.incident_edges("x");
    REQUIRE(g.size() == 2);
    CHECK(angle_between(f5, "x", g[0], g[1]) == Angle(1, 2));
    CHECK(angle_between(f5, "x", g[1], g[0]) == Angle(1, 2));
    CHECK_THROWS(angle_between(f5, "x", g[0], "nope"));

    // star hubs of a pseudo-chain have consecutive angles 1/m
    auto star = realize_pseudo_chain(corpus_schema("chain_same_fibre"));
    auto hub = star.vertex(star.vertices_in("u0").front());
    for (const auto &v : star.vertices())
        if (v.id.starts_with("p_"))
            hub = v;
    REQUIRE(hub.id.starts_with("p_"));
    int m = static_cast<int>(hub.germs.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j)
                CHECK(angle_between(star, hub.id, hub.germs[i].edge, hub.germs[j].edge) ==
                      Angle(((j - i) % m + m) % m, m));

    // the critical point inserted in the Figure 9 construction
    auto fig9 = realize_subordinated(corpus_schema("figure9")).forest;
    auto v10 = *realizer(fig9, "v10");
    const auto &gv = fig9.vertex(v10).germs;
    REQUIRE(gv.size() == 2);
    CHECK(angle_between(fig9, v10, gv[0].edge, gv[1].edge) == Angle(1, fig9.vertex(v10).degree));
}

TEST_CASE("structural properties on the corpus") {
    std::vector<AngledForest> all;
    for (const auto *name : kForests) {
        all.push_back(corpus_forest(name));
        auto done = all.back();
        materialize_all(done, 1);
        all.push_back(done);
    }
    for (const auto &h : all) {
        for (const auto &v : h.vertices()) {
            Rational sum(0);
            for (const auto &g : v.germs)
                sum = sum + g.gap;
            if (!v.germs.empty())
                CHECK(sum == Rational(1));
            CHECK((incidence(h, v.id) == 0) == (vertex_type(h, v.id) == VertexType::Fatou));
            if (vertex_type(h, v.id) == VertexType::Julia && is_periodic(h, v.id) && incidence(h, v.id) >= 2)
                CHECK(components_without(h, v.id) == incidence(h, v.id));
            CHECK(angle_condition_holds(h, v.id, true) == angle_condition_holds(h, v.id, false));
        }
        for (const auto &c : vertex_cycles(h)) {
            if (c.return_period != 1 || vertex_type(h, c.vertices.front()) != VertexType::Julia)
                continue;
            bool first = rotation_number_zero(h, c);
            for (const auto &v : c.vertices)
                CHECK(rotation_number_zero(h, vertex_cycle(h, v)) == first);
        }
    }
}

TEST_CASE("forest round trip") {
    for (const auto *name : kForests) {
        auto text = write_forest(corpus_forest(name));
        CHECK(write_forest(parse_forest(text)) == text);
    }
}

TEST_CASE("forest parse errors") {
    auto text = read_file(corpus_path("forests/figure5_tree2.forest"));
    CHECK_THROWS_WITH(parse_forest(replace(text, "angles x: e1 1/2 e2 1/2", "angles x: e1 3/2 e2 1/2")),
                      doctest::Contains("angle out of range"));
    CHECK_THROWS_WITH(parse_forest(replace(text, "angles x: e1 1/2 e2 1/2", "angles x: e1 2/4 e2 1/2")),
                      doctest::Contains("line"));
    CHECK_THROWS_AS(parse_forest(replace(text, "vmap x -> x", "vmap x -> nowhere")), ParseError);
}
