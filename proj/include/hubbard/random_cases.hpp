#pragma once

#include "hubbard/constructor.hpp"

#include <map>
#include <random>

namespace hubbard {

/// Schema for an append/criticalize run: critical fixed points in one fibre
/// (the base) and a tail of degree-1 vertices ending in a critical one.
struct PipelineCase {
    Schema schema;
    std::vector<std::string> base;
    std::vector<std::string> tail; // append order, nearest the base first
    int last_degree = 1;
};

PipelineCase random_pipeline_case(std::mt19937 &rng);

/// Two quadratic critical points with random preperiods, periods and fibre
/// layout over one or two fibres. Not every draw is admissible or
/// subordinated; callers filter with validate_schema / classify_subordinated.
Schema random_two_critical_schema(std::mt19937 &rng);

/// Forests with at least one tame cycle, grouped by ambient.
class GraftPool {
public:
    /// Materializes the return-1 cycles of h first; skipped without a tame cycle.
    void add(AngledForest h);
    std::size_t size() const;

    /// Two pool members over one ambient (possibly the same one), a tame
    /// cycle on each with at most one of them linked, and a random glue angle.
    GraftPlan random_plan(std::mt19937 &rng) const;

private:
    std::map<std::string, std::vector<AngledForest>> by_ambient_;
};

} // namespace hubbard
