#include "construct_internal.hpp"

#include <algorithm>
#include <set>

namespace hubbard {

namespace {

// Copy of h with vertex and edge ids passed through `ren`.
AngledForest renamed(const AngledForest &h, const std::map<std::string, std::string> &ren) {
    auto r = [&](const std::string &id) {
        auto it = ren.find(id);
        return it == ren.end() ? id : it->second;
    };
    AngledForest out(h.ambient());
    for (auto v : h.vertices()) {
        v.id = r(v.id);
        v.image = r(v.image);
        for (auto &g : v.germs)
            g.edge = r(g.edge);
        out.add_vertex(std::move(v));
    }
    for (auto e : h.edges()) {
        e.id = r(e.id);
        e.a = r(e.a);
        e.b = r(e.b);
        for (auto &d : e.image)
            d.edge = r(d.edge);
        out.add_edge(std::move(e));
    }
    return out;
}

// Cycle through v in orbit order, starting over the first fibre.
std::vector<std::string> aligned_cycle(const AngledForest &h, const std::string &v) {
    auto c = vertex_cycle(h, v).vertices;
    const auto &u0 = h.ambient().fibres().front();
    auto it = std::find_if(c.begin(), c.end(), [&](const auto &x) { return h.vertex(x).fibre == u0; });
    std::rotate(c.begin(), it, c.end());
    return c;
}

// Germs at c[t] listed from an anchor carried along the cycle by F.
std::vector<std::vector<std::string>> anchored_germs(const AngledForest &h, const std::vector<std::string> &c) {
    std::vector<std::vector<std::string>> out(c.size());
    if (h.vertex(c.front()).germs.empty())
        return out;
    std::string anchor = h.vertex(c.front()).germs.front().edge;
    for (std::size_t t = 0; t < c.size(); ++t) {
        auto ps = h.positions(c[t]);
        Angle a = h.position(c[t], anchor);
        std::sort(ps.begin(), ps.end(), [&](const auto &x, const auto &y) { return x.second - a < y.second - a; });
        for (const auto &p : ps)
            out[t].push_back(p.first);
        anchor = h.germ_image(c[t], anchor);
    }
    return out;
}

void check_graftable(const AngledForest &h, const std::vector<std::string> &c, bool general, const char *side) {
    auto rec = vertex_cycle(h, c.front());
    if (is_critical_cycle(h, rec))
        throw Error(std::string(side) + " cycle is critical; tame cycles are non-critical");
    if (!is_tame_candidate(h, rec))
        throw Error(std::string(side) + " cycle is not a return-1 Julia cycle with rotation number zero");
    if (!general && !condition_T(h, rec))
        throw Error(std::string(side) + " cycle fails condition (T); use the general mode");
}

} // namespace

GraftResult graft(const GraftPlan &plan) {
    const auto &left = plan.left;
    if (!(left.ambient() == plan.right.ambient()))
        throw Error("graft: forests live over different ambients");
    GraftResult res;
    std::set<std::string> taken;
    for (const auto &v : left.vertices())
        taken.insert(v.id);
    for (const auto &e : left.edges())
        taken.insert(e.id);
    auto rename_one = [&](const std::string &id) {
        if (!taken.count(id))
            return;
        std::string n = id + "_2";
        for (int i = 3; taken.count(n) || plan.right.has_vertex(n) || plan.right.has_edge(n); ++i)
            n = id + "_" + std::to_string(i);
        res.renamed[id] = n;
        taken.insert(n);
    };
    for (const auto &v : plan.right.vertices())
        rename_one(v.id);
    for (const auto &e : plan.right.edges())
        rename_one(e.id);
    AngledForest right = renamed(plan.right, res.renamed);
    std::string c2id = res.renamed.count(plan.cycle2) ? res.renamed.at(plan.cycle2) : plan.cycle2;

    auto c1 = aligned_cycle(left, plan.cycle1);
    auto c2 = aligned_cycle(right, c2id);
    if (c1.size() != c2.size())
        throw Error("graft: cycles have different lengths");
    check_graftable(left, c1, plan.general, "left");
    check_graftable(right, c2, plan.general, "right");

    auto g1 = anchored_germs(left, c1);
    auto g2 = anchored_germs(right, c2);
    int m1 = static_cast<int>(g1.front().size()), m2 = static_cast<int>(g2.front().size());
    res.m1 = m1;
    res.m2 = m2;
    int total = m1 + m2;
    int k = 1;
    if (plan.angle) {
        Rational a = *plan.angle;
        if (a == Rational(0))
            throw Error("non trivial multiple required");
        Rational scaled = a * Rational(total);
        if (!scaled.is_integer() || scaled < Rational(1) || scaled > Rational(std::max(m1, 1)))
            throw Error("glue angle must be j/" + std::to_string(total) + " with 1 <= j <= " +
                        std::to_string(std::max(m1, 1)));
        k = static_cast<int>(scaled.num());
    }
    if (m1 == 0)
        k = 0;

    for (std::size_t t = 0; t < c1.size(); ++t) {
        const auto &a = left.vertex(c1[t]);
        const auto &b = right.vertex(c2[t]);
        if (a.realizes && b.realizes)
            throw Error("graft: both '" + a.id + "' and '" + b.id + "' realize schema vertices");
    }

    detail::PositionTable old = detail::snapshot_positions(left);
    for (auto &[v, row] : detail::snapshot_positions(right))
        old[v].insert(row.begin(), row.end());

    // Merge: right vertices on C2 are replaced by their partners on C1.
    AngledForest h = left;
    std::map<std::string, std::string> glue;
    for (std::size_t t = 0; t < c1.size(); ++t)
        glue[c2[t]] = c1[t];
    auto g = [&](const std::string &id) {
        auto it = glue.find(id);
        return it == glue.end() ? id : it->second;
    };
    for (auto v : right.vertices()) {
        if (glue.count(v.id)) {
            if (v.realizes)
                h.vertex(glue.at(v.id)).realizes = v.realizes;
            continue;
        }
        v.image = g(v.image);
        h.add_vertex(std::move(v));
    }
    for (auto e : right.edges()) {
        e.a = g(e.a);
        e.b = g(e.b);
        h.add_edge(std::move(e));
    }
    for (std::size_t t = 0; t < c1.size(); ++t) {
        std::vector<std::pair<std::string, Angle>> ps;
        for (int r = 0; r < m1; ++r)
            ps.emplace_back(g1[t][r], Angle(r < k ? r : r + m2, total));
        for (int r = 0; r < m2; ++r)
            ps.emplace_back(g2[t][r], Angle(k + r, total));
        h.set_positions(c1[t], ps);
        old[c1[t]].insert(old[c2[t]].begin(), old[c2[t]].end());
    }
    h.recompute_edge_images();
    if (plan.general)
        detail::propagate_back(h, c1, old);
    res.forest = std::move(h);
    res.glued = c1;
    return res;
}

} // namespace hubbard
