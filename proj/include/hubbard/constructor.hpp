#pragma once

#include "hubbard/tameness.hpp"

#include <optional>

namespace hubbard {

/// Forest for a disjoint union of critical cycles. One Fatou vertex per
/// schema vertex; fibres holding several are joined through a hub.
AngledForest realize_critical_cycles(const Schema &s);

/// Star realization of a closed pseudo-chain: hubs per fibre, spokes to the
/// non-generators in chain order, generators inserted on spokes.
AngledForest realize_pseudo_chain(const Schema &s);

struct GraftPlan {
    AngledForest left;
    std::string cycle1; // any vertex of the left cycle
    AngledForest right;
    std::string cycle2;
    /// Gap between the two blocks of germs; only 1/(m1 + m2) is supported.
    std::optional<Rational> angle;
    /// Accept cycles that fail condition (T) and re-solve angles backwards.
    bool general = false;
};

struct GraftResult {
    AngledForest forest;
    std::vector<std::string> glued; // glued cycle, in orbit order
    int m1 = 0, m2 = 0;
    /// Right-hand ids after renaming (old -> new).
    std::map<std::string, std::string> renamed;
};

GraftResult graft(const GraftPlan &plan);

/// Realize S1 + S2 from tame realizations of each, pushing preimages of the
/// right tame cycle onto a superfluous cycle of the left forest.
/// The schemata are read off the realization links.
AngledForest union_realize(const AngledForest &h1, const AngledForest &h2);

/// Add schema vertex v (degree 1 for now) as a new preimage of the vertex
/// realizing S(v).
AngledForest append_vertex(const AngledForest &h, const Schema &s, const std::string &v);

/// Raise the local degree of a preperiodic vertex, re-solving angles at it and
/// at its iterated preimages.
AngledForest criticalize(const AngledForest &h, const std::string &v, int d);

/// Append and criticalize every unrealized vertex of s whose orbit reaches
/// realized vertices.
AngledForest complete_by_appending(const AngledForest &h, const Schema &s);

/// Return h if it has a tame cycle, otherwise a tame extension of it.
AngledForest ensure_tame_witness(const AngledForest &h);

struct TwoHubChecks {
    std::size_t w1 = 0, w2 = 0; // cardinalities of the reduced fibres
    bool same_side = false;     // v2j2 lies on the v1j1 side of v20
    bool copy_isomorphic = false;
};

struct SubordinatedResult {
    AngledForest forest;
    SubordinatedClassification classification;
    std::string route;
    std::optional<TwoHubChecks> checks;
};

SubordinatedResult realize_subordinated(const Schema &s);

enum class Strategy { Auto, CriticalCycles, PseudoChain, Subordinated };

struct Realization {
    AngledForest forest;
    std::string route;
};

Realization realize(const Schema &s, Strategy strategy = Strategy::Auto);

/// Helpers shared by the constructions.
Schema schema_union(const Schema &a, const Schema &b);
bool is_critical_cycle_union(const Schema &s);
/// Schema formed by the linked vertices of h.
Schema realized_schema(const AngledForest &h);
/// Vertex of h linked to schema vertex id, if any.
std::optional<std::string> realizer(const AngledForest &h, const std::string &id);

} // namespace hubbard
