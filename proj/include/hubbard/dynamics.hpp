#pragma once

#include "hubbard/forest.hpp"

#include <map>
#include <string>
#include <vector>

namespace hubbard {

struct ExpansionResult {
    bool ok = true;
    /// Edges between periodic Julia vertices whose iterated images never
    /// stretch across two edges.
    std::vector<std::string> witnesses;
};

ExpansionResult expansion_check(const AngledForest &h);

/// Image of a path under F, with backtracking cancelled.
EdgePath image_of_path(const AngledForest &h, const std::string &from, const EdgePath &path);

/// A point of the Julia set located symbolically relative to the forest.
struct SymbolicPoint {
    enum class Kind { Vertex, Interior, Hair };
    Kind kind = Kind::Vertex;
    /// Vertex: the vertex itself. Hair: the vertex the hair is attached at.
    std::string vertex;
    /// Interior: the edge and the parameter in (0,1) measured from its a end.
    std::string edge;
    Rational t;
    /// Hair: direction in the frame of `vertex`.
    Angle direction;
    /// Hair whose image direction is a germ: the vertex the orbit continues
    /// at. One direction can hold several such points.
    std::string exit;
    std::string fibre;

    std::string str() const;
    friend bool operator==(const SymbolicPoint &, const SymbolicPoint &) = default;
};

/// A periodic cycle listed in orbit order: points[i + 1] = F(points[i]).
struct PeriodicCycle {
    std::vector<SymbolicPoint> points;
    int return_period = 0;
    int incidence = 0;
    bool rotation_zero = false;
    bool critical = false;

    bool on_forest() const { return points.front().kind == SymbolicPoint::Kind::Vertex; }
};

/// Mark as degree-1 vertices the interior points that reach, within `depth`
/// steps, a vertex with directions off the path through it. Hairs may attach
/// there. Deterministic; returns the added ids.
std::vector<std::string> refine_preimages(AngledForest &h, int depth);

/// Remove marks from refine_preimages that ended up carrying nothing.
void prune_refinement(AngledForest &h, const std::vector<std::string> &ids);

/// Every periodic cycle of exact return period k. Vertex cycles come first.
/// Points off the original vertices refer to the forest refined to depth
/// k * (number of fibres).
std::vector<PeriodicCycle> find_return_cycles(const AngledForest &h, int k);

/// Add the points of a cycle that is not yet on the forest as vertices.
/// Returns the ids of the new vertices in orbit order.
std::vector<std::string> materialize(AngledForest &h, const PeriodicCycle &c);

/// Materialize every return-k cycle; afterwards all of them are vertex cycles.
void materialize_all(AngledForest &h, int k);

struct ZeroRotationSet {
    std::vector<CycleRecord> cycles;
    /// Sum of incidences of members per fibre.
    std::map<std::string, int> incidence_sum;
};

/// Julia vertex cycles of return period 1 and rotation number zero.
ZeroRotationSet zero_rotation_fixed_set(const AngledForest &h);

/// A place in the tree of `fibre` that maps to w and holds no vertex yet.
struct FreeSite {
    enum class Kind { Interior, Hair };
    Kind kind = Kind::Interior;
    std::string edge;
    Rational t;
    std::string vertex;
    Angle direction;
};

FreeSite locate_free_preimage(const AngledForest &h, const std::string &w, const std::string &fibre);

/// Add a vertex of degree 1 at a free site, mapping to w. Returns its id.
std::string insert_preimage(AngledForest &h, const FreeSite &site, const std::string &w, const std::string &id);

} // namespace hubbard
