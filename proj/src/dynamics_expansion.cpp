#include "dynamics_internal.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace hubbard {

namespace detail {

Angle direction_image(const AngledForest &h, const std::string &a, Angle x) {
    const auto &v = h.vertex(a);
    if (v.germs.empty())
        return static_cast<std::int64_t>(v.degree) * x;
    const auto &g0 = v.germs.front().edge;
    auto target = h.germ_image(a, g0);
    return h.position(v.image, target) + static_cast<std::int64_t>(v.degree) * (x - h.position(a, g0));
}

std::vector<Angle> direction_preimages(const AngledForest &h, const std::string &a, Angle target) {
    const auto &v = h.vertex(a);
    Angle base;
    if (!v.germs.empty()) {
        const auto &g0 = v.germs.front().edge;
        // d * (x - p0) = target - q0
        Angle p0 = h.position(a, g0);
        Angle q0 = h.position(v.image, h.germ_image(a, g0));
        base = target - q0;
        std::vector<Angle> out;
        for (int m = 0; m < v.degree; ++m)
            out.push_back(p0 + Angle((base.value() + Rational(m)) / Rational(v.degree)));
        return out;
    }
    std::vector<Angle> out;
    for (int m = 0; m < v.degree; ++m)
        out.push_back(Angle((target.value() + Rational(m)) / Rational(v.degree)));
    return out;
}

std::string germ_at(const AngledForest &h, const std::string &a, Angle x) {
    for (const auto &[e, p] : h.positions(a))
        if (p == x)
            return e;
    return {};
}

std::vector<std::string> branch(const AngledForest &h, const std::string &b, const std::string &e) {
    std::string start = h.other_end(e, b);
    std::vector<std::string> out{start};
    std::set<std::string> seen{b, start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (const auto &f : h.incident_edges(x)) {
            const auto &y = h.other_end(f, x);
            if (seen.insert(y).second) {
                out.push_back(y);
                queue.push_back(y);
            }
        }
    }
    return out;
}

std::int64_t lcm_of_periods(const AngledForest &h) {
    std::int64_t l = 1;
    for (const auto &c : vertex_cycles(h))
        l = std::lcm(l, static_cast<std::int64_t>(c.vertices.size()));
    return l;
}

} // namespace detail

EdgePath image_of_path(const AngledForest &h, const std::string &from, const EdgePath &path) {
    EdgePath out;
    auto vs = h.path_vertices(from, path);
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (const auto &de : h.image_from(path[i].edge, vs[i])) {
            if (!out.empty() && out.back().edge == de.edge && out.back().forward != de.forward)
                out.pop_back();
            else
                out.push_back(de);
        }
    }
    return out;
}

ExpansionResult expansion_check(const AngledForest &h) {
    ExpansionResult r;
    auto julia_periodic = [&](const std::string &v) {
        return is_periodic(h, v) && vertex_type(h, v) == VertexType::Julia;
    };
    std::int64_t bound = static_cast<std::int64_t>(h.edges().size()) * detail::lcm_of_periods(h);
    for (const auto &e : h.edges()) {
        if (!julia_periodic(e.a) || !julia_periodic(e.b))
            continue;
        EdgePath path{{e.id, true}};
        std::string start = e.a;
        bool stretched = false;
        for (std::int64_t i = 0; i < std::max<std::int64_t>(bound, 1) && !stretched; ++i) {
            path = image_of_path(h, start, path);
            start = h.image(start);
            stretched = path.size() >= 2;
        }
        if (!stretched) {
            r.ok = false;
            r.witnesses.push_back(e.id);
        }
    }
    return r;
}

} // namespace hubbard
