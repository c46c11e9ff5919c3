#include "hubbard/constructor.hpp"
#include "hubbard/dynamics.hpp"
#include "hubbard/tameness.hpp"
#include "util.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hubbard;

namespace {

const char *const kForests[] = {"basilica",      "critical_2cycle", "cubic_fixed",     "figure5_tree1", "figure5_tree2",
                                "figure5_tree3", "quadratic_fixed", "rabbit",          "z2_plus_i"};

const char *const kSchemas[] = {"figure7",       "figure8",         "figure9",
                                "chain_same_fibre", "chain_across", "gate_critical",
                                "critical_cycles_mixed", "critical_2cycle_two_fibres", "unicritical_fixed"};

void check_counts(const AngledForest &h, int max_k) {
    auto n = forest_inner_degree(h);
    for (int k = 1; k <= max_k; ++k) {
        CAPTURE(k);
        CHECK(static_cast<std::int64_t>(find_return_cycles(h, k).size()) == cycle_count(n, k));
    }
}

const char *const kStuck = "ambient: u\ntree u\n"
                           "vertex a deg=1\nvertex b deg=1\n"
                           "edge e a b\n"
                           "vmap a -> a\nvmap b -> b\n"
                           "emap e -> e\n";

} // namespace

TEST_CASE("expansion") {
    auto f5 = corpus_forest("figure5_tree1");
    CHECK(expansion_check(f5).ok);

    auto stuck = parse_forest(kStuck);
    auto r = expansion_check(stuck);
    CHECK_FALSE(r.ok);
    CHECK(r.witnesses == std::vector<std::string>{"e"});
    CHECK_THROWS_WITH(find_return_cycles(stuck, 1), doctest::Contains("not expanding"));
}

TEST_CASE("return cycles of small forests") {
    auto uni = realize_critical_cycles(corpus_schema("unicritical_fixed"));
    CHECK(find_return_cycles(uni, 1).size() == 3);

    auto f5 = corpus_forest("figure5_tree1");
    auto fixed = find_return_cycles(f5, 1);
    CHECK(fixed.size() == 3);
    std::vector<std::string> on;
    for (const auto &c : fixed)
        if (c.on_forest())
            on.push_back(c.points.front().vertex);
    std::sort(on.begin(), on.end());
    CHECK(on == std::vector<std::string>{"c1", "c2", "x"});

    CHECK(find_return_cycles(corpus_forest("basilica"), 2).size() == 1);
    CHECK_THROWS(find_return_cycles(f5, 0));
}

TEST_CASE("cycle counts on corpus forests") {
    for (const auto *name : kForests) {
        CAPTURE(name);
        auto h = corpus_forest(name);
        check_counts(h, 3);
        materialize_all(h, 1);
        check_counts(h, 3);
    }
}

TEST_CASE("cycle counts on constructed forests") {
    for (const auto *name : kSchemas) {
        CAPTURE(name);
        check_counts(realize(corpus_schema(name)).forest, 3);
    }
}

TEST_CASE("materialize an interior point") {
    auto h = corpus_forest("basilica");
    auto before = h.vertices().size();
    PeriodicCycle alpha;
    for (const auto &c : find_return_cycles(h, 1))
        if (!c.on_forest() && c.incidence == 2)
            alpha = c;
    REQUIRE_FALSE(alpha.points.empty());
    CHECK(alpha.points.front().kind == SymbolicPoint::Kind::Interior);
    auto ids = materialize(h, alpha);
    CHECK(ids.size() == 1);
    CHECK(h.vertices().size() == before + 1);
    CHECK(validate_forest(h).ok());
    CHECK(expansion_check(h).ok);
    CHECK(incidence(h, ids.front()) == 2);
    for (const auto &g : h.vertex(ids.front()).germs)
        CHECK(g.gap == Rational(1, 2));
    check_counts(h, 3);
    CHECK_THROWS_WITH(materialize(h, alpha), doctest::Contains("already present"));
}

TEST_CASE("materialize a leaf cycle") {
    auto h = corpus_forest("quadratic_fixed");
    std::optional<PeriodicCycle> leaf;
    for (const auto &c : find_return_cycles(h, 1))
        if (!c.on_forest() && c.incidence == 1)
            leaf = c;
    REQUIRE(leaf);
    auto ids = materialize(h, *leaf);
    CHECK(validate_forest(h).ok());
    CHECK(incidence(h, ids.front()) == 1);
    auto rec = vertex_cycle(h, ids.front());
    CHECK(condition_T(h, rec));
    check_counts(h, 3);
}

TEST_CASE("materializing keeps expansion and schema") {
    for (const auto *name : kSchemas) {
        CAPTURE(name);
        auto s = corpus_schema(name);
        auto h = realize(s).forest;
        materialize_all(h, 1);
        CHECK(validate_forest(h, &s).ok());
        CHECK(expansion_check(h).ok);
    }
}

TEST_CASE("zero-rotation set") {
    auto f5 = corpus_forest("figure5_tree1");
    auto uncompleted = corpus_forest("basilica");
    CHECK_THROWS_WITH(zero_rotation_fixed_set(uncompleted), doctest::Contains("materialize return-1 cycles first"));

    materialize_all(f5, 1);
    CHECK(zero_rotation_fixed_set(f5).incidence_sum.at("u") == 2);

    materialize_all(uncompleted, 1);
    auto z = zero_rotation_fixed_set(uncompleted);
    REQUIRE(z.cycles.size() == 1);
    CHECK(incidence(uncompleted, z.cycles.front().vertices.front()) == 1);
    CHECK(z.incidence_sum.at("u") == 1);

    for (int n = 2; n <= 5; ++n) {
        auto s = parse_schema("ambient: u\nvertex c fibre=u deg=" + std::to_string(n) + " to=c\n");
        auto h = realize_critical_cycles(s);
        materialize_all(h, 1);
        CHECK(zero_rotation_fixed_set(h).incidence_sum.at("u") == n - 1);
    }
}

TEST_CASE("zero-rotation identity on completed forests") {
    std::vector<AngledForest> all;
    for (const auto *name : kForests)
        all.push_back(corpus_forest(name));
    for (const auto *name : kSchemas)
        all.push_back(realize(corpus_schema(name)).forest);
    for (auto &h : all) {
        materialize_all(h, 1);
        auto z = zero_rotation_fixed_set(h);
        auto n = forest_inner_degree(h);
        for (const auto &u : h.ambient().fibres())
            CHECK(z.incidence_sum[u] == n - 1);
    }
}

TEST_CASE("free preimages") {
    auto f5 = corpus_forest("figure5_tree1");
    auto site = locate_free_preimage(f5, "c1", "u");
    auto id = insert_preimage(f5, site, "c1", "c1t");
    f5.vertex(id).realizes = "c1t";
    CHECK(f5.image(id) == "c1");
    CHECK(validate_forest(f5).ok());
    CHECK(f5.preimages("c1").size() == 2);

    auto uni = realize_critical_cycles(corpus_schema("unicritical_fixed"));
    auto c = uni.vertices().front().id;
    CHECK_THROWS_WITH(locate_free_preimage(uni, c, "u0"), doctest::Contains("saturated"));

    // the collision image in C1 + S2 has a free preimage: realize S2, then
    // link a free cycle of the period of C1
    auto s = corpus_schema("figure7");
    auto cls = classify_subordinated(s);
    auto h = realize_critical_cycles(s.restrict_to(cls.component2));
    auto k = static_cast<int>(cls.cycle1.size());
    std::optional<PeriodicCycle> spare;
    for (const auto &c : find_return_cycles(h, k))
        if (!c.on_forest())
            spare = c;
    REQUIRE(spare);
    auto made = materialize(h, *spare);
    REQUIRE(made.size() == cls.cycle1.size());
    for (std::size_t i = 0; i < made.size(); ++i)
        h.vertex(made[i]).realizes = cls.cycle1[i];
    auto w = realizer(h, s.image(cls.v1i));
    REQUIRE(w);
    auto free = locate_free_preimage(h, *w, s.vertex(cls.v1i).fibre);
    auto nid = insert_preimage(h, free, *w, "fresh");
    CHECK(h.image(nid) == *w);
}

TEST_CASE("interior points lie on self-covering edges") {
    for (const auto *name : kForests) {
        auto base = corpus_forest(name);
        int s = static_cast<int>(base.ambient().size());
        for (int k = 1; k <= 3; ++k) {
            // points refer to the forest refined for this period
            auto h = base;
            refine_preimages(h, k * s);
            for (const auto &c : find_return_cycles(base, k))
                for (const auto &p : c.points) {
                    if (p.kind != SymbolicPoint::Kind::Interior || !h.has_edge(p.edge))
                        continue;
                    // edges reached after k*s steps, folds kept
                    std::set<std::string> reach{p.edge};
                    for (int i = 0; i < k * s; ++i) {
                        std::set<std::string> next;
                        for (const auto &e : reach)
                            for (const auto &d : h.edge(e).image)
                                next.insert(d.edge);
                        reach = std::move(next);
                    }
                    bool covers = reach.count(p.edge) > 0;
                    CAPTURE(name);
                    CAPTURE(p.str());
                    CHECK(covers);
                }
        }
    }
}

TEST_CASE("twin hair cycles through one direction") {
    auto s = parse_schema("ambient: u0\n"
                          "vertex c1 fibre=u0 deg=2 to=c1\n"
                          "vertex c2 fibre=u0 deg=2 to=c2\n"
                          "vertex c3 fibre=u0 deg=2 to=c3\n");
    auto h = realize_critical_cycles(s);
    check_counts(h, 4);
    // c1 -> c2 -> c3 and c1 -> c3 -> c2 both leave at direction 1/2
    std::vector<PeriodicCycle> twins;
    for (const auto &c : find_return_cycles(h, 3))
        if (std::all_of(c.points.begin(), c.points.end(), [](const auto &p) { return !p.exit.empty(); }))
            twins.push_back(c);
    REQUIRE(twins.size() == 2);
    CHECK(twins[0].points.front().direction == twins[1].points.front().direction);
    CHECK(twins[0].points.front().exit != twins[1].points.front().exit);

    materialize(h, twins[0]);
    CHECK_THROWS_WITH(materialize(h, twins[1]), doctest::Contains("locate it again"));
    std::optional<PeriodicCycle> again;
    for (const auto &c : find_return_cycles(h, 3))
        if (!c.on_forest() && std::all_of(c.points.begin(), c.points.end(), [](const auto &p) { return !p.exit.empty(); }))
            again = c;
    REQUIRE(again);
    materialize(h, *again);
    CHECK(validate_forest(h).ok());
    CHECK(expansion_check(h).ok);
    check_counts(h, 3);
}

TEST_CASE("counts past period 3") {
    for (const auto *name : {"gate_critical", "figure7", "figure9"}) {
        CAPTURE(name);
        check_counts(realize(corpus_schema(name)).forest, 5);
    }
}
