#pragma once

#include "hubbard/dynamics.hpp"

#include <set>

namespace hubbard::detail {

/// Direction at F(a) hit by direction x at a. Germless vertices use the
/// absolute frame, so the image is simply d * x.
Angle direction_image(const AngledForest &h, const std::string &a, Angle x);

/// All x at a with direction_image(a, x) == target.
std::vector<Angle> direction_preimages(const AngledForest &h, const std::string &a, Angle target);

/// Germ at a sitting exactly at direction x, or empty.
std::string germ_at(const AngledForest &h, const std::string &a, Angle x);

/// Vertices in the component of the tree minus b that contains germ e.
std::vector<std::string> branch(const AngledForest &h, const std::string &b, const std::string &e);

std::int64_t lcm_of_periods(const AngledForest &h);

std::string cycle_key(const std::vector<SymbolicPoint> &pts);
std::size_t minimal_shift(const std::vector<SymbolicPoint> &pts);
void canonical_rotation(const AngledForest &h, std::vector<SymbolicPoint> &pts);

/// Periodic hairs: cycles of points off the forest attached at vertices.
void hair_cycles(const AngledForest &h, int k, std::vector<PeriodicCycle> &out, std::set<std::string> &seen);

} // namespace hubbard::detail
