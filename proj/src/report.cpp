#include "hubbard/report.hpp"

#include "hubbard/dynamics.hpp"

#include <sstream>

namespace hubbard {

Json validation_json(const ValidationReport &r) {
    Json j;
    j["valid"] = r.ok();
    j["violations"] = Json::array();
    for (const auto &v : r.violations)
        j["violations"].push_back({{"condition", v.condition}, {"message", v.message}});
    return j;
}

std::string validation_text(const ValidationReport &r) {
    if (r.ok())
        return "valid\n";
    std::ostringstream os;
    os << "invalid\n";
    for (const auto &v : r.violations)
        os << "  (" << v.condition << ") " << v.message << "\n";
    return os.str();
}

Json cycle_json(const CycleRecord &c) {
    return {{"vertices", c.vertices},
            {"return_period", c.return_period},
            {"incidences", c.incidences},
            {"rotation_zero", c.rotation_zero}};
}

Json analyze_json(const AngledForest &h, int max_k) {
    Json j;
    auto n = forest_inner_degree(h);
    j["inner_degree"] = n;
    j["cycle_counts"] = Json::array();
    for (int k = 1; k <= max_k; ++k) {
        auto found = static_cast<std::int64_t>(find_return_cycles(h, k).size());
        j["cycle_counts"].push_back({{"k", k}, {"found", found}, {"expected", cycle_count(n, k)}});
    }
    // The zero-rotation set is read off the completed forest.
    AngledForest done = h;
    materialize_all(done, 1);
    auto z = zero_rotation_fixed_set(done);
    j["z0"] = Json::array();
    for (const auto &c : z.cycles)
        j["z0"].push_back(cycle_json(c));
    Json sums = Json::object();
    bool identity = true;
    for (const auto &u : h.ambient().fibres()) {
        int s = z.incidence_sum.count(u) ? z.incidence_sum.at(u) : 0;
        sums[u] = s;
        identity = identity && s == n - 1;
    }
    j["incidence_sums"] = sums;
    j["z0_identity"] = identity;
    auto e = expansion_check(h);
    j["expanding"] = e.ok;
    j["expansion_witnesses"] = e.witnesses;
    return j;
}

std::string analyze_text(const Json &r) {
    std::ostringstream os;
    os << "inner degree: " << r["inner_degree"].get<std::int64_t>() << "\n";
    os << "cycles of return period k (found / N(n,k)):\n";
    for (const auto &c : r["cycle_counts"])
        os << "  k=" << c["k"].get<int>() << ": " << c["found"].get<std::int64_t>() << " / "
           << c["expected"].get<std::int64_t>() << "\n";
    os << "zero-rotation fixed cycles:\n";
    if (r["z0"].empty())
        os << "  none\n";
    for (const auto &c : r["z0"]) {
        os << " ";
        for (const auto &v : c["vertices"])
            os << " " << v.get<std::string>();
        os << "  inc=" << c["incidences"][0].get<int>() << "\n";
    }
    os << "incidence sums:";
    for (const auto &[u, s] : r["incidence_sums"].items())
        os << " " << u << "=" << s.get<int>();
    os << (r["z0_identity"].get<bool>() ? "  (= n-1)" : "  (!= n-1)") << "\n";
    os << "expanding: " << (r["expanding"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto &w : r["expansion_witnesses"])
        os << "  non-expanding edge " << w.get<std::string>() << "\n";
    return os.str();
}

Json tameness_json(const TamenessReport &r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["mode"] = to_string(r.mode);
    j["modes_disagree"] = r.modes_disagree;
    j["tame_cycles"] = Json::array();
    for (const auto &c : r.tame_cycles)
        j["tame_cycles"].push_back(cycle_json(c));
    Json crit = Json::object();
    for (const auto &[u, ok] : r.criterion_6_3)
        crit[u] = ok;
    j["criterion_by_fibre"] = crit;
    j["witness_added"] = r.witness.has_value();
    return j;
}

std::string tameness_text(const Json &r) {
    std::ostringstream os;
    os << "verdict: " << r["verdict"].get<std::string>() << " (mode " << r["mode"].get<std::string>() << ")\n";
    os << "tame cycles:";
    if (r["tame_cycles"].empty())
        os << " none";
    for (const auto &c : r["tame_cycles"]) {
        os << " [";
        bool first = true;
        for (const auto &v : c["vertices"]) {
            os << (first ? "" : " ") << v.get<std::string>();
            first = false;
        }
        os << "]";
    }
    os << "\ncriterion per fibre:";
    for (const auto &[u, ok] : r["criterion_by_fibre"].items())
        os << " " << u << "=" << (ok.get<bool>() ? "holds" : "fails");
    os << "\n";
    if (r["modes_disagree"].get<bool>())
        os << "note: direct and strict modes give different tame cycles\n";
    if (r["witness_added"].get<bool>())
        os << "a superfluous cycle was added to obtain a tame witness\n";
    return os.str();
}

} // namespace hubbard
