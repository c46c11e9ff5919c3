#include "hubbard/forest.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hubbard {

ForestVertex &AngledForest::add_vertex(ForestVertex v) {
    if (!ambient_.contains(v.fibre))
        throw Error("vertex '" + v.id + "': no such fibre '" + v.fibre + "'");
    if (v.degree < 1)
        throw Error("vertex '" + v.id + "': degree must be >= 1");
    if (vindex_.count(v.id))
        throw Error("duplicate vertex id '" + v.id + "'");
    vindex_.emplace(v.id, vertices_.size());
    vertices_.push_back(std::move(v));
    return vertices_.back();
}

ForestEdge &AngledForest::add_edge(ForestEdge e) {
    if (eindex_.count(e.id))
        throw Error("duplicate edge id '" + e.id + "'");
    const auto &va = vertex(e.a);
    const auto &vb = vertex(e.b);
    if (va.fibre != vb.fibre)
        throw Error("edge '" + e.id + "' joins vertices of different trees");
    if (e.a == e.b)
        throw Error("edge '" + e.id + "' is a loop");
    e.fibre = va.fibre;
    eindex_.emplace(e.id, edges_.size());
    edges_.push_back(std::move(e));
    return edges_.back();
}

void AngledForest::remove_edge(const std::string &id) {
    edge(id);
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(eindex_.at(id)));
    for (auto &v : vertices_)
        v.germs.erase(std::remove_if(v.germs.begin(), v.germs.end(), [&](const Germ &g) { return g.edge == id; }),
                      v.germs.end());
    reindex();
}

void AngledForest::remove_vertex(const std::string &id) {
    vertex(id);
    if (!incident_edges(id).empty())
        throw Error("vertex '" + id + "' still has edges");
    vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(vindex_.at(id)));
    reindex();
}

void AngledForest::reindex() {
    vindex_.clear();
    eindex_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        vindex_[vertices_[i].id] = i;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        eindex_[edges_[i].id] = i;
}

const ForestVertex &AngledForest::vertex(const std::string &id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end())
        throw Error("no such vertex '" + id + "'");
    return vertices_[it->second];
}

ForestVertex &AngledForest::vertex(const std::string &id) {
    return const_cast<ForestVertex &>(std::as_const(*this).vertex(id));
}

const ForestEdge &AngledForest::edge(const std::string &id) const {
    auto it = eindex_.find(id);
    if (it == eindex_.end())
        throw Error("no such edge '" + id + "'");
    return edges_[it->second];
}

ForestEdge &AngledForest::edge(const std::string &id) {
    return const_cast<ForestEdge &>(std::as_const(*this).edge(id));
}

std::vector<std::string> AngledForest::vertices_in(const std::string &fibre) const {
    std::vector<std::string> out;
    for (const auto &v : vertices_)
        if (v.fibre == fibre)
            out.push_back(v.id);
    return out;
}

std::vector<std::string> AngledForest::edges_in(const std::string &fibre) const {
    std::vector<std::string> out;
    for (const auto &e : edges_)
        if (e.fibre == fibre)
            out.push_back(e.id);
    return out;
}

std::vector<std::string> AngledForest::incident_edges(const std::string &v) const {
    std::vector<std::string> out;
    for (const auto &e : edges_)
        if (e.a == v || e.b == v)
            out.push_back(e.id);
    return out;
}

const std::string &AngledForest::other_end(const std::string &e, const std::string &v) const {
    const auto &ed = edge(e);
    if (ed.a == v)
        return ed.b;
    if (ed.b == v)
        return ed.a;
    throw Error("edge '" + e + "' is not incident at '" + v + "'");
}

std::vector<std::string> AngledForest::preimages(const std::string &v) const {
    std::vector<std::string> out;
    for (const auto &x : vertices_)
        if (x.image == v)
            out.push_back(x.id);
    return out;
}

EdgePath AngledForest::tree_path(const std::string &from, const std::string &to) const {
    if (vertex(from).fibre != vertex(to).fibre)
        throw Error("no path between '" + from + "' and '" + to + "': different trees");
    if (from == to)
        return {};
    std::map<std::string, DirectedEdge> via;
    std::deque<std::string> queue{from};
    std::set<std::string> seen{from};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (const auto &e : incident_edges(x)) {
            const auto &y = other_end(e, x);
            if (seen.insert(y).second) {
                via[y] = DirectedEdge{e, edge(e).a == x};
                queue.push_back(y);
            }
        }
    }
    if (!seen.count(to))
        throw Error("no path between '" + from + "' and '" + to + "': tree is disconnected");
    EdgePath path;
    for (std::string x = to; x != from;) {
        const auto &de = via.at(x);
        path.push_back(de);
        const auto &ed = edge(de.edge);
        x = de.forward ? ed.a : ed.b;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::string> AngledForest::path_vertices(const std::string &from, const EdgePath &path) const {
    std::vector<std::string> out{from};
    std::string x = from;
    for (const auto &de : path) {
        const auto &ed = edge(de.edge);
        const auto &start = de.forward ? ed.a : ed.b;
        if (start != x)
            throw Error("path is not connected at '" + x + "'");
        x = de.forward ? ed.b : ed.a;
        out.push_back(x);
    }
    return out;
}

std::string AngledForest::path_end(const std::string &from, const EdgePath &path) const {
    return path_vertices(from, path).back();
}

EdgePath AngledForest::image_from(const std::string &e, const std::string &v) const {
    const auto &ed = edge(e);
    if (ed.a == v)
        return ed.image;
    if (ed.b != v)
        throw Error("edge '" + e + "' is not incident at '" + v + "'");
    EdgePath rev(ed.image.rbegin(), ed.image.rend());
    for (auto &de : rev)
        de.forward = !de.forward;
    return rev;
}

std::string AngledForest::germ_image(const std::string &v, const std::string &e) const {
    auto path = image_from(e, v);
    if (path.empty())
        throw Error("edge '" + e + "' has an empty image");
    return path.front().edge;
}

bool AngledForest::has_germ(const std::string &v, const std::string &e) const {
    const auto &g = vertex(v).germs;
    return std::any_of(g.begin(), g.end(), [&](const Germ &x) { return x.edge == e; });
}

Angle AngledForest::position(const std::string &v, const std::string &e) const {
    const auto &vx = vertex(v);
    Rational acc = vx.origin.value();
    for (const auto &g : vx.germs) {
        if (g.edge == e)
            return Angle(acc);
        acc += g.gap;
    }
    throw Error("germ '" + e + "' is not at vertex '" + v + "'");
}

std::vector<std::pair<std::string, Angle>> AngledForest::positions(const std::string &v) const {
    std::vector<std::pair<std::string, Angle>> out;
    const auto &vx = vertex(v);
    Rational acc = vx.origin.value();
    for (const auto &g : vx.germs) {
        out.emplace_back(g.edge, Angle(acc));
        acc += g.gap;
    }
    return out;
}

void AngledForest::set_positions(const std::string &v, std::vector<std::pair<std::string, Angle>> positioned) {
    auto &vx = vertex(v);
    vx.germs.clear();
    if (positioned.empty())
        return;
    std::stable_sort(positioned.begin(), positioned.end(),
                     [](const auto &x, const auto &y) { return x.second < y.second; });
    for (std::size_t i = 1; i < positioned.size(); ++i)
        if (positioned[i].second == positioned[i - 1].second)
            throw Error("vertex '" + v + "': germs '" + positioned[i - 1].first + "' and '" + positioned[i].first +
                        "' coincide");
    vx.origin = positioned.front().second;
    for (std::size_t i = 0; i < positioned.size(); ++i) {
        Rational gap = (i + 1 < positioned.size())
                           ? positioned[i + 1].second.value() - positioned[i].second.value()
                           : Rational(1) - positioned[i].second.value() + positioned.front().second.value();
        vx.germs.push_back(Germ{positioned[i].first, gap});
    }
}

void AngledForest::recompute_edge_images() {
    for (auto &e : edges_) {
        const auto &fa = vertex(e.a).image;
        const auto &fb = vertex(e.b).image;
        if (fa == fb)
            throw Error("edge '" + e.id + "' collapses: both ends map to '" + fa + "'");
        e.image = tree_path(fa, fb);
    }
}

void AngledForest::rename_vertex_refs(const std::string &from, const std::string &to) {
    for (auto &v : vertices_)
        if (v.image == from)
            v.image = to;
}

std::string AngledForest::fresh_id(const std::string &stem) const {
    if (!has_vertex(stem) && !has_edge(stem))
        return stem;
    for (int i = 1;; ++i) {
        auto id = stem + "_" + std::to_string(i);
        if (!has_vertex(id) && !has_edge(id))
            return id;
    }
}

} // namespace hubbard
