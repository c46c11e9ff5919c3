#pragma once

#include "hubbard/angle.hpp"
#include "hubbard/schema.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hubbard {

/// An edge traversed in a given direction: forward means from a to b.
struct DirectedEdge {
    std::string edge;
    bool forward = true;
    friend bool operator==(const DirectedEdge &, const DirectedEdge &) = default;
};

using EdgePath = std::vector<DirectedEdge>;

/// A germ of an edge at a vertex, followed by the gap to the next germ in
/// positive cyclic order.
struct Germ {
    std::string edge;
    Rational gap;
};

struct ForestVertex {
    std::string id;
    std::string fibre;
    int degree = 1;
    std::optional<std::string> realizes;
    std::string image;
    std::vector<Germ> germs;
    /// Absolute direction of the first germ. Only meaningful for the frame of
    /// directions at vertices that are alone in their tree.
    Angle origin;
};

struct ForestEdge {
    std::string id;
    std::string fibre;
    std::string a, b;
    EdgePath image;
};

enum class VertexType { Julia, Fatou };

/// One finite tree per fibre, a fibred vertex map, edge images as paths and
/// an angle structure at every vertex.
class AngledForest {
public:
    AngledForest() = default;
    explicit AngledForest(CyclicAmbient ambient) : ambient_(std::move(ambient)) {}

    const CyclicAmbient &ambient() const { return ambient_; }
    const std::vector<ForestVertex> &vertices() const { return vertices_; }
    const std::vector<ForestEdge> &edges() const { return edges_; }

    ForestVertex &add_vertex(ForestVertex v);
    ForestEdge &add_edge(ForestEdge e);
    void remove_edge(const std::string &id);
    /// Remove an isolated vertex.
    void remove_vertex(const std::string &id);

    bool has_vertex(const std::string &id) const { return vindex_.count(id) != 0; }
    bool has_edge(const std::string &id) const { return eindex_.count(id) != 0; }
    const ForestVertex &vertex(const std::string &id) const;
    ForestVertex &vertex(const std::string &id);
    const ForestEdge &edge(const std::string &id) const;
    ForestEdge &edge(const std::string &id);

    const std::string &image(const std::string &v) const { return vertex(v).image; }
    std::vector<std::string> vertices_in(const std::string &fibre) const;
    std::vector<std::string> edges_in(const std::string &fibre) const;
    /// Edges incident at v in insertion order.
    std::vector<std::string> incident_edges(const std::string &v) const;
    const std::string &other_end(const std::string &edge, const std::string &v) const;
    std::vector<std::string> preimages(const std::string &v) const;

    /// Unique non-backtracking path between two vertices of the same tree.
    EdgePath tree_path(const std::string &from, const std::string &to) const;
    /// Vertex sequence visited by a path starting at `from`.
    std::vector<std::string> path_vertices(const std::string &from, const EdgePath &path) const;
    std::string path_end(const std::string &from, const EdgePath &path) const;

    /// Image path of an edge oriented away from the image of v.
    EdgePath image_from(const std::string &edge, const std::string &v) const;
    /// Germ at F(v) hit by the germ `edge` at v.
    std::string germ_image(const std::string &v, const std::string &edge) const;

    /// Position of a germ in the frame of v (first germ sits at `origin`).
    Angle position(const std::string &v, const std::string &edge) const;
    bool has_germ(const std::string &v, const std::string &edge) const;
    /// Replace the angle structure at v by germs at the given positions.
    void set_positions(const std::string &v, std::vector<std::pair<std::string, Angle>> positioned);
    std::vector<std::pair<std::string, Angle>> positions(const std::string &v) const;

    /// Set every edge image to the tree path between the endpoint images.
    void recompute_edge_images();
    void rename_vertex_refs(const std::string &from, const std::string &to);

    /// Fresh identifier with the given stem that is unused by vertices and edges.
    std::string fresh_id(const std::string &stem) const;

private:
    void reindex();

    CyclicAmbient ambient_;
    std::vector<ForestVertex> vertices_;
    std::vector<ForestEdge> edges_;
    std::unordered_map<std::string, std::size_t> vindex_;
    std::unordered_map<std::string, std::size_t> eindex_;
};

/// Local degree sum 1 + sum(d - 1) over the tree of a fibre.
int forest_fibre_degree(const AngledForest &h, const std::string &fibre);
std::int64_t forest_inner_degree(const AngledForest &h);

bool is_periodic(const AngledForest &h, const std::string &v);
/// Eventual cycle of v under the vertex map.
std::vector<std::string> eventual_cycle(const AngledForest &h, const std::string &v);
VertexType vertex_type(const AngledForest &h, const std::string &v);
int incidence(const AngledForest &h, const std::string &v);
/// Number of directions at a Julia vertex: germs at periodic vertices,
/// d(v) times the valence of F(v) otherwise.
int julia_valence(const AngledForest &h, const std::string &v);
int return_period(const AngledForest &h, const std::string &v);
Angle angle_between(const AngledForest &h, const std::string &v, const std::string &g1, const std::string &g2);

/// Germ permutation of the return map at v (s steps of germ_image).
std::string return_germ(const AngledForest &h, const std::string &v, const std::string &edge);
bool rotation_number_zero(const AngledForest &h, const CycleRecord &c);
CycleRecord vertex_cycle(const AngledForest &h, const std::string &v);
/// All periodic vertex cycles, in vertex order of their first member.
std::vector<CycleRecord> vertex_cycles(const AngledForest &h);
bool is_critical_cycle(const AngledForest &h, const CycleRecord &c);
/// Vertices in the forward orbit of some critical vertex.
std::vector<std::string> postcritical_vertices(const AngledForest &h);

/// Angle condition at v: image angle = d(v) * angle mod 1, checked on
/// consecutive germ pairs or on all ordered pairs.
bool angle_condition_holds(const AngledForest &h, const std::string &v, bool all_pairs);

/// Structural checks; pass a schema to also check realization links.
ValidationReport validate_forest(const AngledForest &h, const Schema *schema = nullptr);

} // namespace hubbard
