#include "dynamics_internal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace hubbard {

std::string SymbolicPoint::str() const {
    switch (kind) {
    case Kind::Vertex:
        return vertex;
    case Kind::Interior:
        return edge + "@" + t.str();
    case Kind::Hair:
        return vertex + "#" + direction.str() + (exit.empty() ? "" : ">" + exit);
    }
    return {};
}

namespace detail {

// Smallest rotation of the orbit, written out.
std::string cycle_key(const std::vector<SymbolicPoint> &pts) {
    std::string best;
    for (std::size_t r = 0; r < pts.size(); ++r) {
        std::string out;
        for (std::size_t i = 0; i < pts.size(); ++i)
            out += pts[(r + i) % pts.size()].str() + ";";
        if (r == 0 || out < best)
            best = std::move(out);
    }
    return best;
}

// Smallest proper shift that maps the sequence onto itself, or its size.
std::size_t minimal_shift(const std::vector<SymbolicPoint> &pts) {
    for (std::size_t m = 1; m < pts.size(); ++m) {
        bool same = true;
        for (std::size_t i = 0; i < pts.size() && same; ++i)
            same = pts[i] == pts[(i + m) % pts.size()];
        if (same)
            return m;
    }
    return pts.size();
}

// Rotate so the orbit starts with the smallest point of the first fibre.
void canonical_rotation(const AngledForest &h, std::vector<SymbolicPoint> &pts) {
    const auto &u0 = h.ambient().fibres().front();
    std::size_t best = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].fibre == u0 && (best == pts.size() || pts[i].str() < pts[best].str()))
            best = i;
    if (best < pts.size())
        std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(best), pts.end());
}

} // namespace detail

namespace {

using detail::canonical_rotation;
using detail::cycle_key;
using detail::minimal_shift;

struct Collector {
    const AngledForest &h;
    int k;
    std::set<std::string> seen;
    std::vector<PeriodicCycle> out;

    void offer(std::vector<SymbolicPoint> pts, int inc, bool rot0) {
        if (minimal_shift(pts) != pts.size())
            return;
        if (!seen.insert(cycle_key(pts)).second)
            return;
        canonical_rotation(h, pts);
        PeriodicCycle c;
        c.points = std::move(pts);
        c.return_period = k;
        c.incidence = inc;
        c.rotation_zero = k == 1 && rot0;
        out.push_back(std::move(c));
    }
};

void interior_cycles(Collector &col) {
    const auto &h = col.h;
    const std::size_t L = static_cast<std::size_t>(col.k) * h.ambient().size();
    struct Step {
        std::string edge;
        Rational A, B;
    };
    for (const auto &e0 : h.edges()) {
        std::vector<Step> steps{{e0.id, Rational(1), Rational(0)}};
        std::function<void()> dfs = [&]() {
            const auto &cur = steps.back();
            if (steps.size() == L + 1) {
                if (cur.edge != e0.id || cur.A == Rational(1))
                    return;
                Rational t = cur.B / (Rational(1) - cur.A);
                if (!(Rational(0) < t && t < Rational(1)))
                    return;
                std::vector<SymbolicPoint> pts;
                for (std::size_t i = 0; i < L; ++i) {
                    SymbolicPoint p;
                    p.kind = SymbolicPoint::Kind::Interior;
                    p.edge = steps[i].edge;
                    p.t = steps[i].A * t + steps[i].B;
                    p.fibre = h.edge(p.edge).fibre;
                    pts.push_back(std::move(p));
                }
                col.offer(std::move(pts), 2, cur.A > Rational(0));
                return;
            }
            const auto &img = h.edge(cur.edge).image;
            const Rational len(static_cast<std::int64_t>(img.size()));
            const Rational A = cur.A, B = cur.B;
            for (std::size_t j = 0; j < img.size(); ++j) {
                const Rational jr(static_cast<std::int64_t>(j));
                Step nx{img[j].edge, len * A, len * B - jr};
                if (!img[j].forward) {
                    nx.A = -nx.A;
                    nx.B = Rational(1) - nx.B;
                }
                steps.push_back(nx);
                dfs();
                steps.pop_back();
            }
        };
        dfs();
    }
}

// Where an edge leaves a periodic Fatou vertex along a germ that returns, the
// boundary of the component is a periodic point. The linear model squeezes it
// onto the vertex, so it is reported at t = 0 or 1 of that edge. When every
// step maps the edge exactly onto the next one, the far ends are the
// boundary points and nothing new arises.
void boundary_cycles(Collector &col) {
    const auto &h = col.h;
    const std::size_t L = static_cast<std::size_t>(col.k) * h.ambient().size();
    for (const auto &c : h.vertices()) {
        if (!is_periodic(h, c.id) || vertex_type(h, c.id) != VertexType::Fatou)
            continue;
        for (const auto &g0 : c.germs) {
            std::string v = c.id, g = g0.edge;
            bool exact = true;
            std::vector<SymbolicPoint> pts;
            for (std::size_t i = 0; i < L; ++i) {
                SymbolicPoint p;
                p.kind = SymbolicPoint::Kind::Interior;
                p.edge = g;
                p.t = h.edge(g).a == v ? Rational(0) : Rational(1);
                p.fibre = h.vertex(v).fibre;
                pts.push_back(std::move(p));
                exact = exact && h.edge(g).image.size() == 1;
                g = h.germ_image(v, g);
                v = h.image(v);
            }
            if (v != c.id || g != g0.edge || exact)
                continue;
            col.offer(std::move(pts), 2, true);
        }
    }
}

} // namespace

std::vector<PeriodicCycle> find_return_cycles(const AngledForest &original, int k) {
    if (k < 1)
        throw Error("return period must be >= 1");
    if (!expansion_check(original).ok)
        throw Error("dynamics not expanding; symbolic location unsound");
    AngledForest h = original;
    refine_preimages(h, k * static_cast<int>(h.ambient().size()));
    Collector col{h, k, {}, {}};
    for (const auto &rec : vertex_cycles(h)) {
        if (rec.return_period != k)
            continue;
        PeriodicCycle c;
        for (const auto &v : rec.vertices) {
            SymbolicPoint p;
            p.vertex = v;
            p.fibre = h.vertex(v).fibre;
            c.points.push_back(std::move(p));
        }
        c.return_period = k;
        c.incidence = rec.incidences.front();
        c.rotation_zero = rec.rotation_zero;
        c.critical = is_critical_cycle(h, rec);
        col.seen.insert(cycle_key(c.points));
        col.out.push_back(std::move(c));
    }
    interior_cycles(col);
    boundary_cycles(col);
    detail::hair_cycles(h, k, col.out, col.seen);
    return col.out;
}

} // namespace hubbard
