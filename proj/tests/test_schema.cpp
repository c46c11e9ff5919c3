#include "util.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace hubbard;

namespace {

// Orbits of exact length k of t -> n t on Z/(n^k - 1), the necklace count.
std::int64_t necklace_orbits(std::int64_t n, std::int64_t k) {
    std::int64_t mod = 1;
    for (int i = 0; i < k; ++i)
        mod *= n;
    mod -= 1;
    std::set<std::int64_t> seen;
    std::int64_t count = 0;
    for (std::int64_t t = 0; t < mod; ++t) {
        if (seen.count(t))
            continue;
        std::vector<std::int64_t> orbit{t};
        for (std::int64_t x = (t * n) % mod; x != t; x = (x * n) % mod)
            orbit.push_back(x);
        seen.insert(orbit.begin(), orbit.end());
        if (static_cast<std::int64_t>(orbit.size()) == k)
            ++count;
    }
    // t = n^k - 1 is the fixed point identified with 0 on the circle; it
    // only adds a cycle for k = 1.
    return k == 1 ? count + 1 : count;
}

} // namespace

TEST_CASE("ambient degree") {
    auto s = parse_schema("ambient: u v w\n"
                          "vertex a fibre=u deg=3 to=b\n"
                          "vertex b fibre=v deg=1 to=c\n"
                          "vertex c fibre=w deg=1 to=a\n");
    CHECK(ambient_degree(s, "u") == 3);
    CHECK(ambient_degree(s, "v") == 1);
    CHECK_THROWS_WITH(ambient_degree(s, "nope"), doctest::Contains("no such fibre"));

    auto cubic = parse_schema("ambient: u\n"
                              "vertex c1 fibre=u deg=2 to=c1\n"
                              "vertex c2 fibre=u deg=2 to=c2\n");
    CHECK(ambient_degree(cubic, "u") == 3);
    CHECK(inner_degree(cubic) == 3);
}

TEST_CASE("inner degree is the product over fibres") {
    CHECK(inner_degree(parse_schema("ambient: u\nvertex c fibre=u deg=2 to=c\n")) == 2);
    CHECK(inner_degree(corpus_schema("critical_2cycle_two_fibres")) == 4);
}

TEST_CASE("cycle counts") {
    CHECK(cycle_count(3, 1) == 3);
    CHECK(cycle_count(2, 2) == 1);
    CHECK(cycle_count(2, 3) == 2);
    for (int n = 2; n <= 6; ++n)
        CHECK(cycle_count(n, 1) == n);
    CHECK_THROWS(cycle_count(1, 1));
    CHECK_THROWS(cycle_count(2, 0));
}

TEST_CASE("cycle counts agree with necklace orbits") {
    for (std::int64_t n = 2; n <= 4; ++n)
        for (std::int64_t k = 1; k <= 4; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(cycle_count(n, k) == necklace_orbits(n, k));
        }
}

TEST_CASE("points of period dividing k are counted through cycles") {
    for (std::int64_t n = 2; n <= 5; ++n)
        for (std::int64_t k = 1; k <= 8; ++k) {
            std::int64_t total = 0, nk = 1;
            for (std::int64_t j = 1; j <= k; ++j)
                if (k % j == 0)
                    total += j * cycle_count(n, j);
            for (int i = 0; i < k; ++i)
                nk *= n;
            CHECK(total == nk);
        }
    // fewer than two cycles only for n = k = 2
    for (std::int64_t n = 2; n <= 5; ++n)
        for (std::int64_t k = 1; k <= 6; ++k)
            CHECK((cycle_count(n, k) < 2) == (n == 2 && k == 2));
}

TEST_CASE("admissibility") {
    auto crowded = parse_schema("ambient: u\n"
                                "vertex a fibre=u deg=2 to=w\n"
                                "vertex b fibre=u deg=2 to=w\n"
                                "vertex w fibre=u deg=1 to=w\n");
    auto r = validate_schema(crowded);
    CHECK_FALSE(r.ok());
    CHECK(r.has("a"));

    auto cyc = parse_schema("ambient: u v\n"
                            "vertex a fibre=u deg=2 to=b\n"
                            "vertex b fibre=v deg=2 to=a\n");
    CHECK(validate_schema(cyc).ok());

    auto wrong = parse_schema("ambient: u v\n"
                              "vertex a fibre=u deg=2 to=b\n"
                              "vertex b fibre=u deg=2 to=a\n");
    CHECK(validate_schema(wrong).has("b"));

    auto flat = parse_schema("ambient: u\nvertex a fibre=u deg=1 to=a\n");
    CHECK(validate_schema(flat).has("c"));
}

TEST_CASE("saturation") {
    auto s = parse_schema("ambient: u\nvertex c fibre=u deg=2 to=c\n");
    CHECK(is_saturated(s, "c", "u"));

    auto chain = corpus_schema("chain_across");
    for (const auto &v : chain.vertices())
        if (chain.preimages(v.id).empty())
            CHECK_FALSE(is_saturated(chain, v.id, chain.ambient().predecessor(v.fibre)));
    CHECK_THROWS(is_saturated(chain, "a1", "U"));
}

TEST_CASE("saturation of the collision image in C1 + S2") {
    auto s = corpus_schema("chain_same_fibre");
    auto c = classify_subordinated(s);
    std::vector<std::string> keep = c.cycle1;
    keep.insert(keep.end(), c.component2.begin(), c.component2.end());
    auto part = s.restrict_to(keep);
    const auto &w = s.image(c.v1i);
    CHECK_FALSE(is_saturated(part, w, s.vertex(c.v1i).fibre));
}

TEST_CASE("superfluous cycles") {
    CHECK(superfluous_cycles(parse_schema("ambient: u\nvertex c fibre=u deg=2 to=c\n")).empty());
    auto s = parse_schema("ambient: u\n"
                          "vertex c fibre=u deg=2 to=c\n"
                          "vertex x fibre=u deg=1 to=y\n"
                          "vertex y fibre=u deg=1 to=x\n");
    auto sc = superfluous_cycles(s);
    REQUIRE(sc.size() == 1);
    CHECK(sc.front().vertices.size() == 2);
    for (const auto *name : {"figure7", "figure8", "figure9", "chain_same_fibre", "chain_across"})
        CHECK(superfluous_cycles(corpus_schema(name)).empty());
}

TEST_CASE("subordinated classification") {
    auto same = classify_subordinated(corpus_schema("chain_same_fibre"));
    CHECK(same.kind == SubordinatedCase::SameFibreChain);
    CHECK(same.same_fibre);
    CHECK_FALSE(same.v20_periodic);

    auto across = classify_subordinated(corpus_schema("chain_across"));
    CHECK(across.kind == SubordinatedCase::CrossFibreClosedChain);
    CHECK(across.v20_periodic);

    auto fig9 = classify_subordinated(corpus_schema("figure9"));
    CHECK(fig9.kind == SubordinatedCase::CrossFibreOpenChain);
    CHECK(fig9.v1j == "v15");
    CHECK(fig9.v2j == std::optional<std::string>("v26"));

    CHECK(classify_subordinated(corpus_schema("figure8")).kind == SubordinatedCase::SameFibreCriticalCycle);
    CHECK(classify_subordinated(corpus_schema("figure7")).kind == SubordinatedCase::AdmissibleGate);
    CHECK_THROWS_WITH(classify_subordinated(corpus_schema("critical_cycles_mixed")),
                      doctest::Contains("not a subordinated configuration"));
}

TEST_CASE("schema round trip") {
    for (const auto *name : {"figure7", "figure8", "figure9", "chain_same_fibre", "chain_across", "gate_critical",
                             "critical_cycles_mixed", "critical_2cycle_two_fibres", "unicritical_fixed"}) {
        auto s = corpus_schema(name);
        auto text = write_schema(s);
        CHECK(write_schema(parse_schema(text)) == text);
    }
}

TEST_CASE("schema parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_schema("ambient: u\nvertex a fibre=u deg=2 to=b\n"), ParseError);
    try {
        parse_schema("ambient: u\nvertex a fibre=u deg=2 to=a\nvertex a fibre=u deg=1 to=a\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
}
