#pragma once

#include "hubbard/constructor.hpp"

#include <map>
#include <string>
#include <vector>

namespace hubbard::detail {

/// Collects vertices, edges and germ positions, then assembles a forest with
/// edge images set to tree paths.
struct ForestBuilder {
    CyclicAmbient ambient;
    std::vector<ForestVertex> vertices;
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges;
    std::map<std::string, std::vector<std::pair<std::string, Angle>>> pos;

    void vertex(const std::string &id, const std::string &fibre, int degree, const std::string &image,
                std::optional<std::string> realizes = std::nullopt) {
        ForestVertex v;
        v.id = id;
        v.fibre = fibre;
        v.degree = degree;
        v.image = image;
        v.realizes = std::move(realizes);
        vertices.push_back(std::move(v));
    }
    void edge(const std::string &id, const std::string &a, const std::string &b) { edges.push_back({id, {a, b}}); }
    void germ(const std::string &v, const std::string &e, Angle at) { pos[v].emplace_back(e, at); }

    AngledForest build(bool images = true) const {
        AngledForest h(ambient);
        for (const auto &v : vertices)
            h.add_vertex(v);
        for (const auto &[id, ab] : edges)
            h.add_edge(ForestEdge{id, "", ab.first, ab.second, {}});
        for (const auto &[v, p] : pos)
            h.set_positions(v, p);
        if (images)
            h.recompute_edge_images();
        return h;
    }
};

/// Ids of schema vertices realized in h.
std::map<std::string, std::string> realized_ids(const AngledForest &h);

/// Snapshot of germ positions keyed by vertex and edge.
using PositionTable = std::map<std::string, std::map<std::string, Angle>>;
PositionTable snapshot_positions(const AngledForest &h);

/// Re-solve angles at the iterated preimages of `changed` after positions
/// at those vertices moved. `old` holds positions before the change.
void propagate_back(AngledForest &h, const std::vector<std::string> &changed, const PositionTable &old);

} // namespace hubbard::detail
