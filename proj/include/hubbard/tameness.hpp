#pragma once

#include "hubbard/dynamics.hpp"

#include <map>
#include <optional>

namespace hubbard {

/// Which preimages condition (T) inspects: vertices mapping straight onto
/// the cycle, or every iterated preimage vertex.
enum class TMode { Direct, Strict };

std::string to_string(TMode m);

/// Return 1, Julia, non-critical, rotation number zero.
bool is_tame_candidate(const AngledForest &h, const CycleRecord &c);

/// Angles at outside preimages q of C are multiples of 1/d(q).
bool condition_T(const AngledForest &h, const CycleRecord &c, TMode mode = TMode::Direct);

/// Vertices where condition (T) fails, for reports.
std::vector<std::string> condition_T_failures(const AngledForest &h, const CycleRecord &c, TMode mode);

std::vector<CycleRecord> tame_cycles(const AngledForest &h, TMode mode = TMode::Direct);

/// Per fibre: is the incidence sum over present return-1 zero-rotation
/// Julia vertices below n - 1?
std::map<std::string, bool> criterion_6_3_by_fibre(const AngledForest &h);
bool criterion_6_3(const AngledForest &h);

struct Extension {
    AngledForest forest;
    CycleRecord cycle;
};

/// Adds (or finds) a return-1 cycle that is neither post-critical nor linked
/// to a schema vertex, keeping any tame cycle tame.
Extension extend_with_superfluous_cycle(const AngledForest &h);

enum class Verdict { Tame, NotTameAsGiven, TameAfterExtension };
std::string to_string(Verdict v);

struct TamenessReport {
    std::vector<CycleRecord> tame_cycles;
    std::map<std::string, bool> criterion_6_3;
    Verdict verdict = Verdict::NotTameAsGiven;
    TMode mode = TMode::Direct;
    /// Tame cycles under the other mode differ from this one.
    bool modes_disagree = false;
    /// Forest with a materialized tame witness when the verdict needed one.
    std::optional<AngledForest> witness;
};

TamenessReport assess_tameness(const AngledForest &h, TMode mode = TMode::Direct);

} // namespace hubbard
