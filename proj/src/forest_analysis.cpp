#include "hubbard/dynamics.hpp"
#include "hubbard/forest.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hubbard {

int forest_fibre_degree(const AngledForest &h, const std::string &fibre) {
    int d = 1;
    for (const auto &v : h.vertices_in(fibre))
        d += h.vertex(v).degree - 1;
    return d;
}

std::int64_t forest_inner_degree(const AngledForest &h) {
    std::int64_t n = 1;
    for (const auto &u : h.ambient().fibres())
        n *= forest_fibre_degree(h, u);
    return n;
}

bool is_periodic(const AngledForest &h, const std::string &v) {
    std::string x = h.image(v);
    for (std::size_t i = 0; i < h.vertices().size(); ++i) {
        if (x == v)
            return true;
        x = h.image(x);
    }
    return false;
}

std::vector<std::string> eventual_cycle(const AngledForest &h, const std::string &v) {
    std::string x = v;
    for (std::size_t i = 0; i < h.vertices().size(); ++i)
        x = h.image(x);
    std::vector<std::string> cyc;
    std::string y = x;
    do {
        cyc.push_back(y);
        y = h.image(y);
    } while (y != x);
    return cyc;
}

VertexType vertex_type(const AngledForest &h, const std::string &v) {
    for (const auto &x : eventual_cycle(h, v))
        if (h.vertex(x).degree >= 2)
            return VertexType::Fatou;
    return VertexType::Julia;
}

int incidence(const AngledForest &h, const std::string &v) {
    if (vertex_type(h, v) == VertexType::Fatou)
        return 0;
    return static_cast<int>(h.incident_edges(v).size());
}

int julia_valence(const AngledForest &h, const std::string &v) {
    int factor = 1;
    std::string x = v;
    for (std::size_t i = 0; i <= h.vertices().size(); ++i) {
        if (is_periodic(h, x))
            return factor * static_cast<int>(h.incident_edges(x).size());
        factor *= h.vertex(x).degree;
        x = h.image(x);
    }
    throw Error("orbit of '" + v + "' never becomes periodic");
}

int return_period(const AngledForest &h, const std::string &v) {
    if (!is_periodic(h, v))
        throw Error("vertex is preperiodic: '" + v + "'");
    int len = 0;
    std::string x = v;
    do {
        ++len;
        x = h.image(x);
    } while (x != v);
    return len / static_cast<int>(h.ambient().size());
}

Angle angle_between(const AngledForest &h, const std::string &v, const std::string &g1, const std::string &g2) {
    if (g1 == g2)
        throw Error("angle_between needs two distinct germs");
    return h.position(v, g2) - h.position(v, g1);
}

std::string return_germ(const AngledForest &h, const std::string &v, const std::string &edge) {
    std::string x = v, g = edge;
    for (std::size_t i = 0; i < h.ambient().size(); ++i) {
        g = h.germ_image(x, g);
        x = h.image(x);
    }
    return g;
}

bool rotation_number_zero(const AngledForest &h, const CycleRecord &c) {
    if (c.vertices.empty() || c.vertices.size() != h.ambient().size())
        throw Error("rotation number: cycle is not of return period 1");
    for (const auto &v : c.vertices)
        if (vertex_type(h, v) != VertexType::Julia)
            throw Error("rotation number: cycle is not of Julia type");
    const auto &v = c.vertices.front();
    for (const auto &e : h.incident_edges(v))
        if (return_germ(h, v, e) == e)
            return true;
    return false;
}

CycleRecord vertex_cycle(const AngledForest &h, const std::string &v) {
    if (!is_periodic(h, v))
        throw Error("vertex is preperiodic: '" + v + "'");
    CycleRecord c;
    std::string x = v;
    do {
        c.vertices.push_back(x);
        c.incidences.push_back(incidence(h, x));
        x = h.image(x);
    } while (x != v);
    c.return_period = static_cast<int>(c.vertices.size() / h.ambient().size());
    if (c.return_period == 1 && vertex_type(h, v) == VertexType::Julia)
        c.rotation_zero = rotation_number_zero(h, c);
    return c;
}

std::vector<CycleRecord> vertex_cycles(const AngledForest &h) {
    std::vector<CycleRecord> out;
    std::set<std::string> seen;
    for (const auto &v : h.vertices()) {
        if (seen.count(v.id) || !is_periodic(h, v.id))
            continue;
        auto c = vertex_cycle(h, v.id);
        seen.insert(c.vertices.begin(), c.vertices.end());
        out.push_back(std::move(c));
    }
    return out;
}

bool is_critical_cycle(const AngledForest &h, const CycleRecord &c) {
    return std::any_of(c.vertices.begin(), c.vertices.end(), [&](const auto &v) { return h.vertex(v).degree >= 2; });
}

std::vector<std::string> postcritical_vertices(const AngledForest &h) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const auto &v : h.vertices()) {
        if (v.degree < 2)
            continue;
        std::string x = v.id;
        while (seen.insert(x).second) {
            out.push_back(x);
            x = h.image(x);
        }
    }
    return out;
}

namespace {

void check_trees(const AngledForest &h, ValidationReport &r) {
    for (const auto &u : h.ambient().fibres()) {
        auto vs = h.vertices_in(u);
        auto es = h.edges_in(u);
        if (vs.empty()) {
            r.violations.push_back({"tree", "fibre " + u + " has an empty tree"});
            continue;
        }
        if (es.size() + 1 != vs.size()) {
            r.violations.push_back({"tree", "tree " + u + " has " + std::to_string(vs.size()) + " vertices and " +
                                                std::to_string(es.size()) + " edges"});
            continue;
        }
        std::set<std::string> seen{vs.front()};
        std::deque<std::string> queue{vs.front()};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (const auto &e : h.incident_edges(x))
                if (seen.insert(h.other_end(e, x)).second)
                    queue.push_back(h.other_end(e, x));
        }
        if (seen.size() != vs.size())
            r.violations.push_back({"tree", "tree " + u + " is not connected"});
    }
}

void check_maps(const AngledForest &h, ValidationReport &r) {
    const auto &amb = h.ambient();
    for (const auto &v : h.vertices()) {
        if (!h.has_vertex(v.image)) {
            r.violations.push_back({"ref", "vertex '" + v.id + "' maps to unknown vertex '" + v.image + "'"});
            continue;
        }
        if (h.vertex(v.image).fibre != amb.successor(v.fibre))
            r.violations.push_back({"fibre", "vertex '" + v.id + "' maps outside the successor tree"});
    }
    for (const auto &e : h.edges()) {
        if (e.image.empty()) {
            r.violations.push_back({"emap", "edge '" + e.id + "' has an empty image"});
            continue;
        }
        bool known = std::all_of(e.image.begin(), e.image.end(), [&](const auto &de) { return h.has_edge(de.edge); });
        if (!known) {
            r.violations.push_back({"ref", "edge '" + e.id + "' maps onto an unknown edge"});
            continue;
        }
        if (!h.has_vertex(h.vertex(e.a).image) || !h.has_vertex(h.vertex(e.b).image))
            continue;
        const auto &fa = h.image(e.a);
        const auto &fb = h.image(e.b);
        try {
            auto end = h.path_end(fa, e.image);
            if (end != fb)
                r.violations.push_back({"emap", "image of edge '" + e.id + "' ends at '" + end + "', expected '" +
                                                    fb + "'"});
        } catch (const Error &ex) {
            r.violations.push_back({"emap", "image of edge '" + e.id + "' does not start at '" + fa + "'"});
        }
        for (std::size_t i = 1; i < e.image.size(); ++i)
            if (e.image[i].edge == e.image[i - 1].edge)
                r.violations.push_back({"emap", "image of edge '" + e.id + "' backtracks"});
    }
}

void germs_ok(const AngledForest &h, ValidationReport &r) {
    for (const auto &v : h.vertices()) {
        auto inc = h.incident_edges(v.id);
        std::set<std::string> want(inc.begin(), inc.end()), have;
        Rational sum = 0;
        for (const auto &g : v.germs) {
            have.insert(g.edge);
            sum += g.gap;
            if (g.gap <= Rational(0))
                r.violations.push_back({"angle-sum", "vertex '" + v.id + "' has a non-positive gap"});
        }
        if (want != have || have.size() != v.germs.size()) {
            r.violations.push_back({"germs", "germs listed at '" + v.id + "' differ from its incident edges"});
            continue;
        }
        if (!v.germs.empty() && sum != Rational(1)) {
            r.violations.push_back({"angle-sum", "angles at '" + v.id + "' sum to " + sum.str()});
        }
    }
}

} // namespace

bool angle_condition_holds(const AngledForest &h, const std::string &v, bool all_pairs) {
    const auto &vx = h.vertex(v);
    const auto &g = vx.germs;
    auto image_angle = [&](const std::string &a, const std::string &b) {
        auto ia = h.germ_image(v, a), ib = h.germ_image(v, b);
        return ia == ib ? Angle() : angle_between(h, vx.image, ia, ib);
    };
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j || (!all_pairs && j != (i + 1) % g.size()))
                continue;
            if (image_angle(g[i].edge, g[j].edge) != vx.degree * angle_between(h, v, g[i].edge, g[j].edge))
                return false;
        }
    }
    return true;
}

ValidationReport validate_forest(const AngledForest &h, const Schema *schema) {
    ValidationReport r;
    check_trees(h, r);
    check_maps(h, r);
    germs_ok(h, r);
    if (!r.ok())
        return r;

    for (const auto &v : h.vertices()) {
        if (v.germs.size() >= 2 && !angle_condition_holds(h, v.id, false))
            r.violations.push_back({"angle", "angle condition fails at '" + v.id + "'"});
        if (vertex_type(h, v.id) == VertexType::Julia) {
            int val = julia_valence(h, v.id);
            for (const auto &g : v.germs)
                if (!Angle(g.gap).multiple_of_inverse(val))
                    r.violations.push_back({"julia-normalization", "angle " + g.gap.str() + " at Julia vertex '" +
                                                                       v.id + "' is not a multiple of 1/" +
                                                                       std::to_string(val)});
        }
        if (h.incident_edges(v.id).size() == 1 && !v.realizes && v.degree < 2 && !is_periodic(h, v.id))
            r.violations.push_back({"leaf", "leaf '" + v.id + "' is neither linked, critical nor periodic"});
    }

    if (schema) {
        std::map<std::string, std::string> realized_by;
        for (const auto &v : h.vertices()) {
            if (!v.realizes)
                continue;
            if (!schema->contains(*v.realizes)) {
                r.violations.push_back({"link", "vertex '" + v.id + "' realizes unknown '" + *v.realizes + "'"});
                continue;
            }
            if (!realized_by.emplace(*v.realizes, v.id).second)
                r.violations.push_back({"link", "schema vertex '" + *v.realizes + "' realized twice"});
            const auto &sv = schema->vertex(*v.realizes);
            if (sv.fibre != v.fibre)
                r.violations.push_back({"link", "vertex '" + v.id + "' lies over the wrong fibre"});
            if (sv.degree != v.degree)
                r.violations.push_back({"degree", "vertex '" + v.id + "' has local degree " +
                                                      std::to_string(v.degree) + ", schema says " +
                                                      std::to_string(sv.degree)});
            const auto &img = h.vertex(v.image);
            if (!img.realizes || *img.realizes != sv.image)
                r.violations.push_back({"link", "image of '" + v.id + "' does not realize '" + sv.image + "'"});
        }
        for (const auto &u : h.ambient().fibres())
            if (forest_fibre_degree(h, u) != ambient_degree(*schema, u))
                r.violations.push_back({"degree", "tree " + u + " has degree " +
                                                      std::to_string(forest_fibre_degree(h, u)) +
                                                      ", schema ambient degree is " +
                                                      std::to_string(ambient_degree(*schema, u))});
    }

    auto exp = expansion_check(h);
    for (const auto &e : exp.witnesses)
        r.violations.push_back({"expansion", "edge '" + e + "' between periodic Julia vertices never expands"});
    return r;
}

} // namespace hubbard
