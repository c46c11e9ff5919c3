#include "construct_internal.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hubbard {

using detail::ForestBuilder;

namespace detail {

std::map<std::string, std::string> realized_ids(const AngledForest &h) {
    std::map<std::string, std::string> out;
    for (const auto &v : h.vertices())
        if (v.realizes)
            out[*v.realizes] = v.id;
    return out;
}

PositionTable snapshot_positions(const AngledForest &h) {
    PositionTable t;
    for (const auto &v : h.vertices())
        for (const auto &[e, a] : h.positions(v.id))
            t[v.id][e] = a;
    return t;
}

void propagate_back(AngledForest &h, const std::vector<std::string> &changed, const PositionTable &old) {
    std::set<std::string> done(changed.begin(), changed.end());
    std::deque<std::string> queue(changed.begin(), changed.end());
    while (!queue.empty()) {
        auto y = queue.front();
        queue.pop_front();
        for (const auto &x : h.preimages(y)) {
            if (done.count(x))
                continue;
            done.insert(x);
            const auto &vx = h.vertex(x);
            std::vector<std::pair<std::string, Angle>> next;
            for (const auto &g : vx.germs) {
                auto gy = h.germ_image(x, g.edge);
                Rational m = Rational(vx.degree) * old.at(x).at(g.edge).value() - old.at(y).at(gy).value();
                next.emplace_back(g.edge, Angle((h.position(y, gy).value() + m) / Rational(vx.degree)));
            }
            h.set_positions(x, next);
            queue.push_back(x);
        }
    }
}

} // namespace detail

std::optional<std::string> realizer(const AngledForest &h, const std::string &id) {
    for (const auto &v : h.vertices())
        if (v.realizes && *v.realizes == id)
            return v.id;
    return std::nullopt;
}

Schema schema_union(const Schema &a, const Schema &b) {
    if (!(a.ambient() == b.ambient()))
        throw Error("schemata live over different ambients");
    Schema s(a.ambient());
    for (const auto &v : a.vertices())
        s.add_vertex(v);
    for (const auto &v : b.vertices()) {
        if (s.contains(v.id))
            throw Error("schemata share vertex '" + v.id + "'");
        s.add_vertex(v);
    }
    s.check_references();
    return s;
}

bool is_critical_cycle_union(const Schema &s) {
    if (s.vertices().empty())
        return false;
    for (const auto &c : schema_cycles(s)) {
        bool crit = std::any_of(c.vertices.begin(), c.vertices.end(),
                                [&](const auto &v) { return s.vertex(v).degree > 1; });
        if (!crit)
            return false;
    }
    return std::all_of(s.vertices().begin(), s.vertices().end(), [&](const auto &v) { return s.is_periodic(v.id); });
}

namespace {

std::string fresh(const Schema &s, std::set<std::string> &used, const std::string &stem) {
    std::string id = stem;
    for (int i = 1; s.contains(id) || used.count(id); ++i)
        id = stem + "_" + std::to_string(i);
    used.insert(id);
    return id;
}

} // namespace

AngledForest realize_critical_cycles(const Schema &s) {
    if (!is_critical_cycle_union(s))
        throw Error("not a union of critical cycles");
    const auto &amb = s.ambient();
    ForestBuilder b;
    b.ambient = amb;
    std::size_t m = s.fibre_members(amb.fibres().front()).size();
    for (const auto &v : s.vertices())
        b.vertex(v.id, v.fibre, v.degree, v.image, v.id);
    if (m == 1)
        return b.build();

    // Hub layout: cycle j (of N, all of return period k) sits at (j + i N)/m.
    auto cycles = schema_cycles(s);
    int k = cycles.front().return_period;
    for (const auto &c : cycles)
        if (c.return_period != k)
            throw Error("unsupported layout: cycles sharing a fibre have different return periods");
    std::int64_t n_cycles = static_cast<std::int64_t>(cycles.size());
    std::set<std::string> used;
    std::map<std::string, std::string> hub;
    for (const auto &u : amb.fibres())
        hub[u] = fresh(s, used, "p_" + u);
    for (const auto &u : amb.fibres())
        b.vertex(hub[u], u, 1, hub[amb.successor(u)]);
    const auto &u0 = amb.fibres().front();
    for (std::size_t j = 0; j < cycles.size(); ++j) {
        const auto &c = cycles[j];
        // Start from the member over u0 and walk the orbit.
        auto it = std::find_if(c.vertices.begin(), c.vertices.end(),
                               [&](const auto &v) { return s.vertex(v).fibre == u0; });
        std::string v = *it;
        for (std::size_t step = 0; step < c.vertices.size(); ++step) {
            std::int64_t i = static_cast<std::int64_t>(step / amb.size());
            auto e = fresh(s, used, "s_" + v);
            b.edge(e, hub[s.vertex(v).fibre], v);
            b.germ(hub[s.vertex(v).fibre], e,
                   Angle(static_cast<std::int64_t>(j) + i * n_cycles, static_cast<std::int64_t>(m)));
            b.germ(v, e, Angle());
            v = s.image(v);
        }
    }
    return b.build();
}

namespace {

// Orbit segments from the given generators, in the given order.
std::optional<std::vector<std::vector<std::string>>> chain_segments(const Schema &s,
                                                                    const std::vector<std::string> &gens) {
    std::set<std::string> seen(gens.begin(), gens.end());
    std::vector<std::vector<std::string>> segs;
    for (const auto &g : gens) {
        std::vector<std::string> seg{g};
        for (auto x = s.image(g); !seen.count(x); x = s.image(x)) {
            seen.insert(x);
            seg.push_back(x);
        }
        if (seg.size() < 2)
            return std::nullopt;
        segs.push_back(std::move(seg));
    }
    if (seen.size() != s.vertices().size())
        return std::nullopt;
    return segs;
}

std::optional<AngledForest> star_forest(const Schema &s, const std::vector<std::vector<std::string>> &segs) {
    const auto &amb = s.ambient();
    std::size_t r = segs.size();
    std::vector<std::string> ys;       // non-generators in chain order
    std::map<std::string, std::string> insert_at; // last element -> next generator
    for (std::size_t i = 0; i < r; ++i) {
        const auto &last = segs[i].back();
        const auto &next = segs[(i + 1) % r].front();
        if (s.vertex(last).fibre != s.vertex(next).fibre || s.image(last) == s.image(next))
            return std::nullopt;
        insert_at[last] = next;
        ys.insert(ys.end(), segs[i].begin() + 1, segs[i].end());
    }
    std::size_t sz = amb.size();
    if (ys.size() % sz != 0)
        return std::nullopt;
    std::int64_t m = static_cast<std::int64_t>(ys.size() / sz);
    std::size_t base = amb.index_of(s.vertex(ys.front()).fibre);
    for (std::size_t i = 0; i < ys.size(); ++i)
        if (amb.index_of(s.vertex(ys[i]).fibre) != (base + i) % sz)
            return std::nullopt;

    ForestBuilder b;
    b.ambient = amb;
    std::set<std::string> used;
    std::map<std::string, std::string> hub;
    for (const auto &u : amb.fibres())
        hub[u] = fresh(s, used, "p_" + u);
    for (const auto &u : amb.fibres())
        b.vertex(hub[u], u, 1, hub[amb.successor(u)]);
    for (const auto &v : s.vertices())
        b.vertex(v.id, v.fibre, v.degree, v.image, v.id);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const auto &y = ys[i];
        const auto &p = hub[s.vertex(y).fibre];
        Angle at(static_cast<std::int64_t>(i / sz), m);
        auto it = insert_at.find(y);
        if (it == insert_at.end()) {
            auto e = fresh(s, used, "s_" + y);
            b.edge(e, p, y);
            b.germ(p, e, at);
            b.germ(y, e, Angle());
            continue;
        }
        const auto &g = it->second;
        auto e1 = fresh(s, used, "s_" + g);
        auto e2 = fresh(s, used, "t_" + g);
        b.edge(e1, p, g);
        b.edge(e2, g, y);
        b.germ(p, e1, at);
        b.germ(g, e1, Angle());
        b.germ(g, e2, Angle(1, s.vertex(g).degree));
        b.germ(y, e2, Angle());
    }
    try {
        auto h = b.build();
        if (!validate_forest(h, &s).ok())
            return std::nullopt;
        return h;
    } catch (const Error &) {
        return std::nullopt;
    }
}

} // namespace

AngledForest realize_pseudo_chain(const Schema &s) {
    if (s.vertices().empty())
        throw Error("not a pseudo-chain");
    // Critical vertices without preimages must start segments; every cycle
    // not reached from them needs one critical vertex of its own.
    std::vector<std::string> fixed;
    for (const auto &v : s.vertices())
        if (v.degree > 1 && s.preimages(v.id).empty())
            fixed.push_back(v.id);
    std::set<std::string> reached;
    for (const auto &g : fixed)
        for (auto x = g; reached.insert(x).second; x = s.image(x)) {
        }
    std::vector<std::vector<std::string>> options;
    for (const auto &c : schema_cycles(s)) {
        if (reached.count(c.vertices.front()))
            continue;
        std::vector<std::string> crit;
        for (const auto &v : c.vertices)
            if (s.vertex(v).degree > 1)
                crit.push_back(v);
        if (crit.empty())
            throw Error("not a pseudo-chain");
        options.push_back(crit);
    }
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
        std::vector<std::string> gens = fixed;
        for (std::size_t i = 0; i < options.size(); ++i)
            gens.push_back(options[i][pick[i]]);
        std::sort(gens.begin(), gens.end());
        do {
            if (auto segs = chain_segments(s, gens))
                if (auto h = star_forest(s, *segs))
                    return *h;
        } while (std::next_permutation(gens.begin(), gens.end()));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    throw Error("not a pseudo-chain");
}

} // namespace hubbard
