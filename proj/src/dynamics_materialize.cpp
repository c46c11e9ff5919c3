#include "dynamics_internal.hpp"

#include <algorithm>
#include <map>

namespace hubbard {

namespace {

using Kind = SymbolicPoint::Kind;

std::string add_point_vertex(AngledForest &h, const std::string &fibre, const std::string &stem) {
    ForestVertex v;
    v.id = h.fresh_id(stem);
    v.fibre = fibre;
    v.degree = 1;
    v.image = v.id; // patched once the whole orbit exists
    auto id = v.id;
    h.add_vertex(std::move(v));
    return id;
}

// Split edge e at the given parameters (increasing) through the given new
// vertices. Each new vertex gets two germs; the angle at it is `angles[i]`.
void split_edge(AngledForest &h, const std::string &e, const std::vector<std::string> &cuts,
                const std::vector<Angle> &angles) {
    std::string b = h.edge(e).b;
    auto b_positions = h.positions(b);
    h.edge(e).b = cuts.front();
    std::string prev_edge = e;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        std::string next_end = i + 1 < cuts.size() ? cuts[i + 1] : b;
        ForestEdge piece;
        piece.id = h.fresh_id(e);
        piece.a = cuts[i];
        piece.b = next_end;
        auto pid = piece.id;
        h.add_edge(std::move(piece));
        h.set_positions(cuts[i], {{prev_edge, Angle()}, {pid, angles[i]}});
        prev_edge = pid;
    }
    for (auto &[edge, pos] : b_positions)
        if (edge == e)
            edge = prev_edge;
    h.set_positions(b, b_positions);
}

void attach_hair(AngledForest &h, const std::string &a, Angle x, const std::string &leaf) {
    ForestEdge e;
    e.id = h.fresh_id("e" + leaf);
    e.a = a;
    e.b = leaf;
    auto eid = e.id;
    h.add_edge(std::move(e));
    auto pos = h.positions(a);
    pos.emplace_back(eid, x);
    h.set_positions(a, pos);
    h.set_positions(leaf, {{eid, Angle()}});
}

} // namespace

std::vector<std::string> refine_preimages(AngledForest &h, int depth) {
    std::vector<std::string> added;
    auto spare = [&](const std::string &w) {
        return vertex_type(h, w) == VertexType::Fatou || julia_valence(h, w) > 2;
    };
    for (int round = 0; round < depth; ++round) {
        struct Site {
            Rational t;
            std::string image;
            Angle angle;
        };
        std::map<std::string, std::vector<Site>> sites;
        for (const auto &e : h.edges()) {
            auto pv = h.path_vertices(h.image(e.a), e.image);
            auto len = static_cast<std::int64_t>(e.image.size());
            for (std::size_t j = 1; j + 1 < pv.size(); ++j)
                if (spare(pv[j]))
                    sites[e.id].push_back({Rational(static_cast<std::int64_t>(j), len), pv[j],
                                           angle_between(h, pv[j], e.image[j - 1].edge, e.image[j].edge)});
        }
        if (sites.empty())
            break;
        for (const auto &[e, list] : sites) {
            std::vector<std::string> ids;
            std::vector<Angle> angles;
            for (const auto &s : list) {
                ids.push_back(add_point_vertex(h, h.edge(e).fibre, "r"));
                h.vertex(ids.back()).image = s.image;
                angles.push_back(s.angle);
            }
            split_edge(h, e, ids, angles);
            added.insert(added.end(), ids.begin(), ids.end());
        }
        h.recompute_edge_images();
    }
    return added;
}

void prune_refinement(AngledForest &h, const std::vector<std::string> &ids) {
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto &p : ids) {
            if (!h.has_vertex(p))
                continue;
            auto inc = h.incident_edges(p);
            if (inc.size() != 2 || !h.preimages(p).empty() || h.vertex(p).realizes)
                continue;
            const auto &keep = inc[0], &drop = inc[1];
            std::string y = h.other_end(drop, p);
            auto ypos = h.positions(y);
            for (auto &[edge, pos] : ypos)
                if (edge == drop)
                    edge = keep;
            h.remove_edge(drop);
            auto &ke = h.edge(keep);
            (ke.a == p ? ke.a : ke.b) = y;
            h.set_positions(y, ypos);
            h.vertex(p).germs.clear();
            h.remove_vertex(p);
            changed = true;
        }
    }
    h.recompute_edge_images();
}

namespace {

std::vector<std::string> materialize_unchecked(AngledForest &h, const PeriodicCycle &c) {
    auto refined = refine_preimages(h, c.return_period * static_cast<int>(h.ambient().size()));
    std::vector<std::string> ids;
    for (const auto &p : c.points)
        ids.push_back(add_point_vertex(h, p.fibre, "z"));
    for (std::size_t i = 0; i < ids.size(); ++i)
        h.vertex(ids[i]).image = ids[(i + 1) % ids.size()];

    if (c.points.front().kind == Kind::Hair) {
        for (std::size_t i = 0; i < ids.size(); ++i)
            attach_hair(h, c.points[i].vertex, c.points[i].direction, ids[i]);
    } else {
        std::map<std::string, std::vector<std::pair<Rational, std::string>>> cuts;
        for (std::size_t i = 0; i < ids.size(); ++i)
            cuts[c.points[i].edge].emplace_back(c.points[i].t, ids[i]);
        for (auto &[e, list] : cuts) {
            std::sort(list.begin(), list.end());
            std::vector<std::string> vs;
            for (const auto &[t, id] : list)
                vs.push_back(id);
            split_edge(h, e, vs, std::vector<Angle>(vs.size(), Angle(1, 2)));
        }
    }
    h.recompute_edge_images();
    prune_refinement(h, refined);
    return ids;
}

} // namespace

std::vector<std::string> materialize(AngledForest &h, const PeriodicCycle &c) {
    if (c.points.empty() || c.on_forest())
        throw Error("already present");
    // The cycle must still be one of the points off the forest.
    auto key = detail::cycle_key(c.points);
    auto now = find_return_cycles(h, c.return_period);
    if (std::none_of(now.begin(), now.end(),
                     [&](const auto &x) { return !x.on_forest() && detail::cycle_key(x.points) == key; }))
        throw Error("not an off-forest cycle of this forest: already present, or located before the forest "
                    "changed; locate it again");
    return materialize_unchecked(h, c);
}

void materialize_all(AngledForest &h, int k) {
    for (;;) {
        auto cycles = find_return_cycles(h, k);
        auto it = std::find_if(cycles.begin(), cycles.end(), [](const auto &c) { return !c.on_forest(); });
        if (it == cycles.end())
            return;
        materialize_unchecked(h, *it);
    }
}

ZeroRotationSet zero_rotation_fixed_set(const AngledForest &h) {
    ZeroRotationSet z;
    for (const auto &c : find_return_cycles(h, 1)) {
        if (!c.on_forest())
            throw Error("materialize return-1 cycles first");
        const auto &v = c.points.front().vertex;
        if (vertex_type(h, v) != VertexType::Julia || !c.rotation_zero)
            continue;
        auto rec = vertex_cycle(h, v);
        for (const auto &x : rec.vertices)
            z.incidence_sum[h.vertex(x).fibre] += incidence(h, x);
        z.cycles.push_back(std::move(rec));
    }
    return z;
}

FreeSite locate_free_preimage(const AngledForest &h, const std::string &w, const std::string &fibre) {
    if (h.vertex(w).fibre != h.ambient().successor(fibre))
        throw Error("fibre mismatch: '" + w + "' does not lie over the successor of fibre " + fibre);
    int load = 0;
    for (const auto &a : h.vertices_in(fibre))
        if (h.image(a) == w)
            load += h.vertex(a).degree;
    if (load >= forest_fibre_degree(h, fibre))
        throw Error("saturated: no free preimage");

    for (const auto &e : h.edges_in(fibre)) {
        const auto &ed = h.edge(e);
        auto pv = h.path_vertices(h.image(ed.a), ed.image);
        for (std::size_t j = 1; j + 1 < pv.size(); ++j)
            if (pv[j] == w)
                return FreeSite{FreeSite::Kind::Interior, e,
                                Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(ed.image.size())),
                                {}, {}};
    }
    for (const auto &a : h.vertices_in(fibre)) {
        const auto &fa = h.image(a);
        if (fa == w || (is_periodic(h, a) && vertex_type(h, a) == VertexType::Julia))
            continue;
        auto germ = h.tree_path(fa, w).front().edge;
        for (const auto &x : detail::direction_preimages(h, a, h.position(fa, germ)))
            if (detail::germ_at(h, a, x).empty())
                return FreeSite{FreeSite::Kind::Hair, {}, {}, a, x};
    }
    throw Error("no free preimage of '" + w + "' located in fibre " + fibre);
}

std::string insert_preimage(AngledForest &h, const FreeSite &site, const std::string &w, const std::string &id) {
    std::string fibre = site.kind == FreeSite::Kind::Hair ? h.vertex(site.vertex).fibre : h.edge(site.edge).fibre;
    if (h.has_vertex(id) || h.has_edge(id))
        throw Error("duplicate vertex id '" + id + "'");
    ForestVertex v;
    v.id = id;
    v.fibre = fibre;
    v.image = w;
    h.add_vertex(std::move(v));
    if (site.kind == FreeSite::Kind::Hair) {
        attach_hair(h, site.vertex, site.direction, id);
    } else {
        const auto &ed = h.edge(site.edge);
        // Germs at the new vertex copy the angle between the two image germs at w.
        auto j = static_cast<std::size_t>((site.t * Rational(static_cast<std::int64_t>(ed.image.size()))).floor());
        const auto &back = ed.image[j - 1].edge;
        const auto &ahead = ed.image[j].edge;
        Angle a = angle_between(h, w, back, ahead);
        split_edge(h, site.edge, {id}, {a});
    }
    h.recompute_edge_images();
    return id;
}

} // namespace hubbard
