#include "construct_internal.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hubbard {

using detail::ForestBuilder;

namespace {

std::string fresh_in(const Schema &s, std::set<std::string> &used, const std::string &stem) {
    std::string id = stem;
    for (int i = 1; s.contains(id) || used.count(id); ++i)
        id = stem + "_" + std::to_string(i);
    used.insert(id);
    return id;
}

// Line v1j - v20 - v10 - v21 - v11 for the shape forced when the gate fails
// and v20 lies on a critical cycle in the fibre of v10. Over several fibres
// the line sits in the critical fibre (first-return points) and every other
// fibre carries a copy of its image with v10 dropped, mapped on by degree 1.
AngledForest critical_cycle_line(const Schema &s, const SubordinatedClassification &c) {
    const std::size_t n = s.ambient().size();
    if (c.orbit1.size() != 1 + 2 * n || c.cycle1.size() != 2 * n || c.orbit2.size() != 2 * n)
        throw Error("unsupported layout: expected v10 -> v11 and critical v20, both cycles of return period 2");
    // F^i of the points of each orbit
    auto o1 = [&](std::size_t j, std::size_t i) {
        std::size_t t = j + i;
        return c.orbit1[t <= 2 * n ? t : (t - 1) % (2 * n) + 1];
    };
    auto o2 = [&](std::size_t j, std::size_t i) { return c.orbit2[(j + i) % (2 * n)]; };

    ForestBuilder b;
    b.ambient = s.ambient();
    for (const auto &v : s.vertices())
        b.vertex(v.id, v.fibre, v.degree, v.image, v.id);
    std::set<std::string> used;
    auto chain = [&](const std::vector<std::string> &line) {
        std::vector<std::string> es;
        for (std::size_t i = 0; i + 1 < line.size(); ++i) {
            es.push_back(fresh_in(s, used, "e" + std::to_string(used.size() + 1)));
            b.edge(es.back(), line[i], line[i + 1]);
        }
        return es;
    };

    const auto &v10 = c.orbit1[0];
    auto es = chain({o1(2 * n, 0), o2(0, 0), v10, o2(n, 0), o1(n, 0)});
    b.germ(o1(2 * n, 0), es[0], Angle());
    b.germ(o2(0, 0), es[0], Angle());
    b.germ(o2(0, 0), es[1], Angle(1, 2));
    b.germ(v10, es[1], Angle());
    b.germ(v10, es[2], Angle(1, s.vertex(v10).degree));
    b.germ(o2(n, 0), es[2], Angle());
    b.germ(o2(n, 0), es[3], Angle(1, 2));
    b.germ(o1(n, 0), es[3], Angle());
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<std::string> line{o1(2 * n, i), o2(0, i), o2(n, i), o1(n, i)};
        auto fs = chain(line);
        b.germ(line[0], fs[0], Angle());
        b.germ(line[1], fs[0], Angle());
        b.germ(line[1], fs[1], Angle(1, 2));
        b.germ(line[2], fs[1], Angle());
        b.germ(line[2], fs[2], Angle(1, 2));
        b.germ(line[3], fs[2], Angle());
    }
    return b.build();
}

struct Hull {
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
};

Hull hull_of(const AngledForest &h, const std::vector<std::string> &terms) {
    std::set<std::string> vs, es;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            auto p = h.tree_path(terms[i], terms[j]);
            for (const auto &x : h.path_vertices(terms[i], p))
                vs.insert(x);
            for (const auto &d : p)
                es.insert(d.edge);
        }
    Hull out;
    for (const auto &v : h.vertices())
        if (vs.count(v.id))
            out.vertices.push_back(v.id);
    for (const auto &e : h.edges())
        if (es.count(e.id))
            out.edges.push_back(e.id);
    return out;
}

// Two hubs over two fibres; the segment [v20, v1j] is replaced by a copy of
// the tree spanned by the images of v20, v1j and v2j.
SubordinatedResult open_chain_across(const Schema &s, const SubordinatedClassification &c) {
    const auto &amb = s.ambient();
    if (amb.size() != 2)
        throw Error("unsupported layout: the open chain across fibres needs exactly two fibres");
    const auto &v10 = c.v10, &v20 = c.v20, &v1j = c.v1j, &v2j = *c.v2j;
    const auto &u1 = s.vertex(v10).fibre, &u2 = s.vertex(v20).fibre;
    std::vector<std::string> chain = c.orbit1;
    chain.insert(chain.end(), c.orbit2.begin(), c.orbit2.end());
    std::vector<std::string> w1, w2;
    for (const auto &x : chain) {
        if (s.vertex(x).fibre == u1 && x != v10)
            w1.push_back(x);
        if (s.vertex(x).fibre == u2 && x != v20 && x != v2j)
            w2.push_back(x);
    }
    TwoHubChecks chk;
    chk.w1 = w1.size();
    chk.w2 = w2.size();
    if (w1.size() != w2.size() || w1.size() < 2)
        throw Error("reduced fibres have sizes " + std::to_string(w1.size()) + " and " + std::to_string(w2.size()) +
                    "; need equal sizes of at least 2");
    if (c.orbit2.size() < 2 || s.vertex(c.orbit2[c.orbit2.size() - 2]).fibre != u1)
        throw Error("unsupported layout: predecessor of v2j is not over the fibre of v10");
    const auto &before = c.orbit2[c.orbit2.size() - 2];
    auto m = static_cast<std::int64_t>(w1.size());

    ForestBuilder b;
    b.ambient = amb;
    std::set<std::string> used;
    std::string p1 = fresh_in(s, used, "p1"), p2 = fresh_in(s, used, "p2");
    b.vertex(p1, u1, 1, p2);
    b.vertex(p2, u2, 1, p1);
    for (const auto &v : s.vertices())
        if (v.id != v2j)
            b.vertex(v.id, v.fibre, v.degree, v.image, v.id);
    auto star = [&](const std::string &p, const std::vector<std::string> &ws, const std::string &mid,
                    const std::string &host) {
        for (std::size_t k = 0; k < ws.size(); ++k) {
            Angle at(static_cast<std::int64_t>(k), m);
            if (ws[k] != host) {
                auto e = fresh_in(s, used, "s_" + ws[k]);
                b.edge(e, p, ws[k]);
                b.germ(p, e, at);
                b.germ(ws[k], e, Angle());
                continue;
            }
            auto e1 = fresh_in(s, used, "s_" + mid), e2 = fresh_in(s, used, "t_" + mid);
            b.edge(e1, p, mid);
            b.edge(e2, mid, host);
            b.germ(p, e1, at);
            b.germ(mid, e1, Angle());
            b.germ(mid, e2, Angle(1, s.vertex(mid).degree));
            b.germ(host, e2, Angle());
        }
    };
    star(p1, w1, v10, before);
    star(p2, w2, v20, v1j);
    AngledForest h = b.build(false);

    // Replace [v20, v1j] by a copy of the hull of the three images.
    std::string cut;
    for (const auto &e : h.incident_edges(v20))
        if (h.other_end(e, v20) == v1j)
            cut = e;
    Angle keep = h.position(v20, h.incident_edges(v20).front() == cut ? h.incident_edges(v20).back()
                                                                      : h.incident_edges(v20).front());
    h.remove_edge(cut);
    const auto &a = s.image(v20), &bb = s.image(v1j), &cc = s.image(v2j);
    if (a == bb || a == cc || bb == cc)
        throw Error("unsupported layout: images of v20, v1j and v2j are not distinct");
    Hull hull = hull_of(h, {a, bb, cc});
    std::map<std::string, std::string> copy{{a, v20}, {bb, v1j}, {cc, v2j}};
    for (const auto &t : {a, bb, cc}) {
        int deg = 0;
        for (const auto &e : hull.edges)
            deg += (h.edge(e).a == t || h.edge(e).b == t);
        if (deg != 1)
            throw Error("unsupported layout: image of a segment end is not a leaf of the spanned tree");
    }
    ForestVertex nv;
    nv.id = v2j;
    nv.fibre = u2;
    nv.degree = s.vertex(v2j).degree;
    nv.image = cc;
    nv.realizes = v2j;
    h.add_vertex(nv);
    for (const auto &w : hull.vertices) {
        if (copy.count(w))
            continue;
        ForestVertex cv;
        cv.id = h.fresh_id(w + "_c");
        cv.fibre = u2;
        cv.image = w;
        copy[w] = cv.id;
        h.add_vertex(cv);
    }
    std::map<std::string, std::string> ecopy;
    for (const auto &e : hull.edges) {
        ForestEdge ne;
        ne.id = h.fresh_id(e + "_c");
        ne.a = copy.at(h.edge(e).a);
        ne.b = copy.at(h.edge(e).b);
        ecopy[e] = ne.id;
        h.add_edge(ne);
    }
    for (const auto &w : hull.vertices) {
        const auto &x = copy.at(w);
        std::vector<std::pair<std::string, Angle>> ps;
        if (x == v20) {
            for (const auto &[e, at] : h.positions(v20))
                ps.emplace_back(e, at);
        }
        for (const auto &e : hull.edges)
            if (h.edge(e).a == w || h.edge(e).b == w)
                ps.emplace_back(ecopy.at(e), x == v20 ? keep + Angle(1, s.vertex(v20).degree) : h.position(w, e));
        if (x == v1j || x == v2j)
            ps.front().second = Angle();
        h.set_positions(x, ps);
    }
    h.recompute_edge_images();

    auto to_j = h.tree_path(v20, v2j), to_1 = h.tree_path(v20, v1j);
    chk.same_side = !to_j.empty() && !to_1.empty() && to_j.front().edge == to_1.front().edge;
    chk.copy_isomorphic = true;
    for (const auto &[e, ce] : ecopy) {
        const auto &img = h.edge(ce).image;
        chk.copy_isomorphic &= img.size() == 1 && img.front().edge == e;
    }
    for (const auto &[w, x] : copy)
        if (x != v20)
            chk.copy_isomorphic &= angle_condition_holds(h, x, true);
    SubordinatedResult r;
    r.forest = std::move(h);
    r.checks = chk;
    return r;
}

// Link a cycle of h (listed in orbit order) to the schema cycle `target`.
void link_cycle(AngledForest &h, const Schema &s, const std::vector<std::string> &cyc,
                const std::vector<std::string> &target) {
    const auto &u0 = s.vertex(target.front()).fibre;
    auto it = std::find_if(cyc.begin(), cyc.end(), [&](const auto &v) { return h.vertex(v).fibre == u0; });
    std::string x = *it, y = target.front();
    for (std::size_t i = 0; i < target.size(); ++i) {
        h.vertex(x).realizes = y;
        x = h.image(x);
        y = s.image(y);
    }
}

AngledForest gate_route(const Schema &s, const SubordinatedClassification &c) {
    Schema s2 = s.restrict_to(c.component2);
    AngledForest h2 = realize(s2).forest;
    Schema c1 = s.restrict_to(c.cycle1);
    bool critical = std::any_of(c.cycle1.begin(), c.cycle1.end(), [&](const auto &v) { return s.vertex(v).degree > 1; });
    AngledForest h;
    if (critical) {
        h = union_realize(realize_critical_cycles(c1), h2);
    } else {
        int period = static_cast<int>(c.cycle1.size() / s.ambient().size());
        auto post = postcritical_vertices(h2);
        std::set<std::string> pc(post.begin(), post.end());
        h = h2;
        std::optional<std::vector<std::string>> found;
        for (const auto &pcyc : find_return_cycles(h, period)) {
            if (pcyc.on_forest()) {
                bool ok = std::none_of(pcyc.points.begin(), pcyc.points.end(), [&](const auto &p) {
                    return pc.count(p.vertex) || h.vertex(p.vertex).realizes.has_value();
                });
                if (!ok)
                    continue;
                std::vector<std::string> ids;
                for (const auto &p : pcyc.points)
                    ids.push_back(p.vertex);
                found = ids;
            } else {
                found = materialize(h, pcyc);
            }
            break;
        }
        if (!found)
            throw Error("internal invariant violation: no free cycle of return period " + std::to_string(period));
        link_cycle(h, s, *found, c.cycle1);
    }
    return complete_by_appending(h, s);
}

} // namespace

SubordinatedResult realize_subordinated(const Schema &s) {
    auto c = classify_subordinated(s);
    SubordinatedResult r;
    switch (c.kind) {
    case SubordinatedCase::AdmissibleGate:
        r.forest = gate_route(s, c);
        r.route = "gate";
        break;
    case SubordinatedCase::SameFibreChain:
    case SubordinatedCase::CrossFibreClosedChain:
        r.forest = realize_pseudo_chain(s);
        r.route = "pseudo-chain";
        break;
    case SubordinatedCase::SameFibreCriticalCycle:
        r.forest = critical_cycle_line(s, c);
        r.route = "critical-cycle-line";
        break;
    case SubordinatedCase::CrossFibreOpenChain: {
        auto o = open_chain_across(s, c);
        r.forest = std::move(o.forest);
        r.checks = o.checks;
        r.route = "two-hub";
        break;
    }
    }
    auto rep = validate_forest(r.forest, &s);
    if (!rep.ok())
        throw Error("route " + r.route + " produced an invalid forest: " + rep.violations.front().condition + ": " +
                    rep.violations.front().message);
    r.forest = ensure_tame_witness(r.forest);
    r.classification = std::move(c);
    return r;
}

Realization realize(const Schema &s, Strategy strategy) {
    switch (strategy) {
    case Strategy::CriticalCycles:
        return {realize_critical_cycles(s), "critical-cycles"};
    case Strategy::PseudoChain:
        return {realize_pseudo_chain(s), "pseudo-chain"};
    case Strategy::Subordinated: {
        auto r = realize_subordinated(s);
        return {std::move(r.forest), "subordinated/" + r.route};
    }
    case Strategy::Auto:
        break;
    }
    if (is_critical_cycle_union(s))
        return {realize_critical_cycles(s), "critical-cycles"};
    std::string why;
    try {
        auto r = realize_subordinated(s);
        return {std::move(r.forest), "subordinated/" + r.route};
    } catch (const Error &e) {
        why = e.what();
    }
    try {
        return {realize_pseudo_chain(s), "pseudo-chain"};
    } catch (const Error &) {
    }
    auto comps = components(s);
    if (comps.size() > 1) {
        AngledForest h = realize(s.restrict_to(comps.front())).forest;
        for (std::size_t i = 1; i < comps.size(); ++i)
            h = union_realize(h, realize(s.restrict_to(comps[i])).forest);
        return {h, "union"};
    }
    std::vector<std::string> periodic;
    for (const auto &v : s.vertices())
        if (s.is_periodic(v.id))
            periodic.push_back(v.id);
    Schema core = s.restrict_to(periodic);
    if (is_critical_cycle_union(core))
        return {complete_by_appending(realize_critical_cycles(core), s), "critical-cycles+append"};
    throw Error("no construction applies to this schema");
}

} // namespace hubbard
