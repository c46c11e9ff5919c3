#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hubbard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cyclic base: fibre labels u_0 ... u_{s-1} with u_i -> u_{i+1 mod s}.
class CyclicAmbient {
public:
    CyclicAmbient() = default;
    explicit CyclicAmbient(std::vector<std::string> fibres);

    const std::vector<std::string> &fibres() const { return fibres_; }
    std::size_t size() const { return fibres_.size(); }
    bool contains(const std::string &fibre) const { return index_.count(fibre) != 0; }
    std::size_t index_of(const std::string &fibre) const;
    const std::string &successor(const std::string &fibre) const;
    const std::string &predecessor(const std::string &fibre) const;

    friend bool operator==(const CyclicAmbient &a, const CyclicAmbient &b) { return a.fibres_ == b.fibres_; }

private:
    std::vector<std::string> fibres_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct SchemaVertex {
    std::string id;
    std::string fibre;
    int degree = 1;
    std::string image;
};

/// A finite fibred self-map of vertices over a cyclic ambient.
class Schema {
public:
    Schema() = default;
    explicit Schema(CyclicAmbient ambient) : ambient_(std::move(ambient)) {}

    const CyclicAmbient &ambient() const { return ambient_; }
    const std::vector<SchemaVertex> &vertices() const { return vertices_; }

    /// Appends a vertex. Images may refer to vertices added later; call
    /// check_references() once the schema is complete.
    void add_vertex(SchemaVertex v);
    void check_references() const;

    bool contains(const std::string &id) const { return index_.count(id) != 0; }
    const SchemaVertex &vertex(const std::string &id) const;
    const std::string &image(const std::string &id) const { return vertex(id).image; }

    /// W(u): ids of vertices lying over fibre u, in insertion order.
    std::vector<std::string> fibre_members(const std::string &fibre) const;
    std::vector<std::string> preimages(const std::string &id) const;
    bool is_periodic(const std::string &id) const;

    /// Sub-schema induced on a forward-invariant vertex set.
    Schema restrict_to(const std::vector<std::string> &ids) const;

private:
    CyclicAmbient ambient_;
    std::vector<SchemaVertex> vertices_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// A periodic orbit of the schema or forest map.
struct CycleRecord {
    std::vector<std::string> vertices;
    int return_period = 1;
    bool rotation_zero = false;
    bool tame = false;
    std::vector<int> incidences;
};

int ambient_degree(const Schema &s, const std::string &fibre);
std::int64_t inner_degree(const Schema &s);

/// Number of cycles of exact period k of a degree-n map with n^k periodic
/// points of period dividing k.
std::int64_t cycle_count(std::int64_t n, std::int64_t k);
int mobius(std::int64_t n);

struct CycleCountTable {
    std::int64_t n = 2;
    std::map<std::int64_t, std::int64_t> entries;
};
CycleCountTable cycle_count_table(std::int64_t n, std::int64_t max_k);

struct Violation {
    std::string condition;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string &condition) const;
};

/// Conditions: (a) preimage multiplicity bound, (b) fibre compatibility,
/// (c) inner degree >= 2, (d) cycle census bounded by cycle_count.
ValidationReport validate_schema(const Schema &s);
bool is_admissible(const Schema &s);

/// All cycles of the schema map, each rotated to start at its smallest
/// index in vertex order.
std::vector<CycleRecord> schema_cycles(const Schema &s);

/// Connected components (of the underlying undirected graph of F).
std::vector<std::vector<std::string>> components(const Schema &s);

bool is_saturated(const Schema &s, const std::string &w, const std::string &fibre);
std::vector<CycleRecord> superfluous_cycles(const Schema &s);

enum class SubordinatedCase {
    AdmissibleGate,          // C1 + S2 admissible
    SameFibreChain,          // v20, v10 same fibre, v20 off critical cycles
    SameFibreCriticalCycle,  // v20 on a critical cycle
    CrossFibreClosedChain,   // different fibres, v20 periodic
    CrossFibreOpenChain,     // different fibres, v20 not periodic
};

std::string to_string(SubordinatedCase c);

struct SubordinatedClassification {
    SubordinatedCase kind{};
    std::string v10, v20;
    std::vector<std::string> orbit1, orbit2; // v_{i0}, v_{i1}, ..., v_{i j_i}
    std::vector<std::string> cycle1, cycle2;
    std::string v1i, v1j;                  // collision pair of S1
    std::optional<std::string> v2i, v2j;   // collision pair of S2, v2j maps onto v20 when periodic
    bool v20_periodic = false;
    bool same_fibre = false;
    bool gate_admissible = false;
    std::vector<std::string> component1, component2;
};

SubordinatedClassification classify_subordinated(const Schema &s);

} // namespace hubbard
