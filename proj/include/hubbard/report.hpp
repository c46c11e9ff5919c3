#pragma once

#include "hubbard/constructor.hpp"
#include "hubbard/tameness.hpp"

#include <json.hpp>

#include <string>

namespace hubbard {

using Json = nlohmann::ordered_json;

Json validation_json(const ValidationReport &r);
std::string validation_text(const ValidationReport &r);

/// Degree, cycle counts for k = 1..max_k against N(n,k), zero-rotation set
/// with incidence sums per fibre, and expansion witnesses.
Json analyze_json(const AngledForest &h, int max_k);
std::string analyze_text(const Json &report);

Json tameness_json(const TamenessReport &r);
std::string tameness_text(const Json &report);

Json cycle_json(const CycleRecord &c);

} // namespace hubbard
