#include "construct_internal.hpp"

#include <algorithm>
#include <set>
#include <string_view>

namespace hubbard {

Schema realized_schema(const AngledForest &h) {
    Schema s(h.ambient());
    auto ids = detail::realized_ids(h);
    for (const auto &v : h.vertices()) {
        if (!v.realizes)
            continue;
        const auto &img = h.vertex(v.image);
        if (!img.realizes)
            throw Error("realized vertex '" + v.id + "' maps to unlinked vertex '" + img.id + "'");
        s.add_vertex(SchemaVertex{*v.realizes, v.fibre, v.degree, *img.realizes});
    }
    s.check_references();
    return s;
}

AngledForest ensure_tame_witness(const AngledForest &h) {
    if (!tame_cycles(h).empty())
        return h;
    auto r = assess_tameness(h);
    if (!r.witness)
        throw Error("no tame witness: criterion fails in every fibre");
    return *r.witness;
}

namespace {

bool cycle_is_tame(const AngledForest &h, const std::string &v) {
    for (const auto &c : tame_cycles(h))
        if (std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end())
            return true;
    return false;
}

bool free_fixed_cycle(const AngledForest &h, const CycleRecord &c, const std::set<std::string> &pc) {
    return c.return_period == 1 && std::none_of(c.vertices.begin(), c.vertices.end(), [&](const auto &v) {
               return pc.count(v) || h.vertex(v).realizes.has_value();
           });
}

// A return-1 cycle of h off the critical orbits, unlinked and away from the
// cycle through `avoid`, materializing one if needed. `avoid` stays tame.
std::vector<std::string> superfluous_cycle_avoiding(AngledForest &h, const std::string &avoid) {
    auto post = postcritical_vertices(h);
    std::set<std::string> pc(post.begin(), post.end());
    auto skip = vertex_cycle(h, avoid).vertices;
    for (const auto &c : vertex_cycles(h))
        if (free_fixed_cycle(h, c, pc) && std::find(skip.begin(), skip.end(), c.vertices.front()) == skip.end())
            return c.vertices;
    std::vector<PeriodicCycle> pending;
    for (auto &c : find_return_cycles(h, 1))
        if (!c.on_forest())
            pending.push_back(std::move(c));
    std::stable_sort(pending.begin(), pending.end(),
                     [](const auto &a, const auto &b) { return a.incidence < b.incidence; });
    for (const auto &c : pending) {
        AngledForest g = h;
        auto ids = materialize(g, c);
        if (!cycle_is_tame(g, avoid))
            continue;
        h = std::move(g);
        return vertex_cycle(h, ids.front()).vertices;
    }
    throw Error("internal invariant violation: no superfluous return-1 cycle found");
}

std::string on_fibre(const AngledForest &h, const std::vector<std::string> &c, const std::string &u) {
    for (const auto &v : c)
        if (h.vertex(v).fibre == u)
            return v;
    throw Error("internal invariant violation: cycle misses fibre " + u);
}

} // namespace

AngledForest union_realize(const AngledForest &h1, const AngledForest &h2) {
    Schema s1 = realized_schema(h1), s2 = realized_schema(h2);
    if (!superfluous_cycles(s1).empty() || !superfluous_cycles(s2).empty())
        throw Error("superfluous cycles not allowed");
    Schema both = schema_union(s1, s2);

    AngledForest a = ensure_tame_witness(h1);
    AngledForest b = ensure_tame_witness(h2);
    auto pick = [](const AngledForest &h) {
        auto tc = tame_cycles(h);
        for (const auto &c : tc)
            if (std::none_of(c.vertices.begin(), c.vertices.end(),
                             [&](const auto &v) { return h.vertex(v).realizes.has_value(); }))
                return c.vertices;
        return tc.front().vertices;
    };
    auto c1 = pick(a);
    auto c2 = pick(b);

    std::set<std::string> c2set(c2.begin(), c2.end());
    std::vector<std::string> push;
    for (const auto &v : b.vertices())
        if (!c2set.count(v.id) && c2set.count(v.image))
            push.push_back(v.id);
    std::map<std::string, std::string> links; // fibre -> schema id moved off C2
    for (const auto &v : c2)
        if (auto &r = b.vertex(v).realizes)
            links[b.vertex(v).fibre] = *r;

    // Pushing needs a second return-1 cycle on side 1. It is only forced
    // when the grand orbit of S1 also meets C1.
    std::set<std::string> c1set(c1.begin(), c1.end());
    bool c1_busy = std::any_of(a.vertices().begin(), a.vertices().end(), [&](const auto &v) {
        return v.realizes && (c1set.count(v.id) || c1set.count(v.image));
    });
    std::vector<std::string> q;
    if (!push.empty() || !links.empty()) {
        AngledForest trial = a;
        try {
            q = superfluous_cycle_avoiding(trial, c1.front());
            a = std::move(trial);
        } catch (const Error &) {
            if (c1_busy)
                throw;
            push.clear();
            links.clear();
        }
    }
    for (const auto &[u, id] : links)
        for (const auto &v : c2)
            if (b.vertex(v).fibre == u)
                b.vertex(v).realizes.reset();

    GraftPlan plan;
    plan.left = a;
    plan.cycle1 = c1.front();
    plan.right = b;
    plan.cycle2 = c2.front();
    auto g = graft(plan);
    AngledForest h = std::move(g.forest);
    auto ren = [&](const std::string &id) { return g.renamed.count(id) ? g.renamed.at(id) : id; };
    for (const auto &v : push) {
        auto &vx = h.vertex(ren(v));
        vx.image = on_fibre(h, q, h.ambient().successor(vx.fibre));
    }
    for (const auto &[u, id] : links)
        h.vertex(on_fibre(h, q, u)).realizes = id;
    h.recompute_edge_images();
    auto rep = validate_forest(h, &both);
    if (!rep.ok())
        throw Error("internal invariant violation: union fails " + rep.violations.front().condition + ": " +
                    rep.violations.front().message);
    return h;
}

namespace {

// Insert a preimage of w over `fibre`. When no site exists yet, w hangs off
// a neighbour whose own preimages are not vertices; insert a helper preimage
// of that neighbour first, which opens a hair direction over w.
std::string place_preimage(AngledForest &h, const std::string &w, const std::string &fibre, const std::string &id,
                           int depth) {
    try {
        auto site = locate_free_preimage(h, w, fibre);
        return insert_preimage(h, site, w, id);
    } catch (const Error &e) {
        if (depth >= 3 || std::string_view(e.what()).find("no free preimage") == std::string_view::npos)
            throw;
        for (const auto &edge : h.incident_edges(w)) {
            auto trial = h;
            try {
                place_preimage(trial, h.other_end(edge, w), fibre, trial.fresh_id("q"), depth + 1);
                auto site = locate_free_preimage(trial, w, fibre);
                auto made = insert_preimage(trial, site, w, id);
                h = std::move(trial);
                return made;
            } catch (const Error &) {
            }
        }
        throw;
    }
}

} // namespace

AngledForest append_vertex(const AngledForest &h, const Schema &s, const std::string &v) {
    const auto &sv = s.vertex(v);
    auto ids = detail::realized_ids(h);
    if (ids.count(v))
        throw Error("vertex '" + v + "' is already realized");
    auto it = ids.find(sv.image);
    if (it == ids.end())
        throw Error("image '" + sv.image + "' of '" + v + "' is not realized");
    Schema part = realized_schema(h);
    if (is_saturated(part, sv.image, sv.fibre))
        throw Error("saturated: '" + sv.image + "' has all its preimages over fibre " + sv.fibre);
    AngledForest out = h;
    std::string id = out.has_vertex(v) || out.has_edge(v) ? out.fresh_id(v) : v;
    id = place_preimage(out, it->second, sv.fibre, id, 0);
    out.vertex(id).realizes = v;
    return out;
}

AngledForest criticalize(const AngledForest &h, const std::string &v, int d) {
    if (is_periodic(h, v))
        throw Error("cannot criticalize periodic vertex via this route");
    if (d <= h.vertex(v).degree)
        throw Error("criticalize: degree " + std::to_string(d) + " does not exceed the current local degree " +
                    std::to_string(h.vertex(v).degree));
    AngledForest out = h;
    auto old = detail::snapshot_positions(out);
    const auto &w = out.image(v);
    // Divide image positions by d, lifting to later sheets only to keep the
    // cyclic order of the germs.
    std::vector<std::pair<std::string, Angle>> ps;
    Rational prev(-1);
    std::int64_t sheet = 0;
    for (const auto &g : out.vertex(v).germs) {
        Rational y = out.position(w, out.germ_image(v, g.edge)).value();
        Rational x = (y + Rational(sheet)) / Rational(d);
        while (x <= prev) {
            if (++sheet >= d)
                throw Error("criticalize: angle system at '" + v + "' has no order-preserving solution");
            x = (y + Rational(sheet)) / Rational(d);
        }
        prev = x;
        ps.emplace_back(g.edge, Angle(x));
    }
    out.vertex(v).degree = d;
    out.set_positions(v, ps);
    detail::propagate_back(out, {v}, old);
    return out;
}

AngledForest complete_by_appending(const AngledForest &h, const Schema &s) {
    AngledForest out = h;
    for (;;) {
        auto ids = detail::realized_ids(out);
        std::optional<std::string> next;
        // Prefer the vertex nearest the realized part along its orbit.
        for (const auto &v : s.vertices())
            if (!ids.count(v.id) && ids.count(v.image)) {
                next = v.id;
                break;
            }
        if (!next)
            break;
        out = append_vertex(out, s, *next);
        int d = s.vertex(*next).degree;
        if (d > 1)
            out = criticalize(out, detail::realized_ids(out).at(*next), d);
    }
    for (const auto &v : s.vertices())
        if (!realizer(out, v.id))
            throw Error("cannot complete: '" + v.id + "' never reaches the realized part");
    return out;
}

} // namespace hubbard
