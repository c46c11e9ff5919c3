#include "hubbard/tameness.hpp"

#include <algorithm>
#include <set>

namespace hubbard {

std::string to_string(TMode m) { return m == TMode::Direct ? "direct" : "strict"; }

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Tame:
        return "tame";
    case Verdict::NotTameAsGiven:
        return "not-tame-as-given";
    case Verdict::TameAfterExtension:
        return "tame-after-extension";
    }
    return "unknown";
}

bool is_tame_candidate(const AngledForest &h, const CycleRecord &c) {
    if (c.return_period != 1 || is_critical_cycle(h, c))
        return false;
    for (const auto &v : c.vertices)
        if (vertex_type(h, v) != VertexType::Julia)
            return false;
    return rotation_number_zero(h, c);
}

std::vector<std::string> condition_T_failures(const AngledForest &h, const CycleRecord &c, TMode mode) {
    if (!is_tame_candidate(h, c))
        throw Error("not a tame-cycle candidate");
    std::set<std::string> cyc(c.vertices.begin(), c.vertices.end());
    auto reaches = [&](const std::string &q) {
        std::string x = h.image(q);
        if (mode == TMode::Direct)
            return cyc.count(x) != 0;
        for (std::size_t i = 0; i < h.vertices().size(); ++i, x = h.image(x))
            if (cyc.count(x))
                return true;
        return false;
    };
    std::vector<std::string> bad;
    for (const auto &q : h.vertices()) {
        if (cyc.count(q.id) || !reaches(q.id))
            continue;
        for (const auto &g : q.germs)
            if (!Angle(g.gap).multiple_of_inverse(q.degree)) {
                bad.push_back(q.id);
                break;
            }
    }
    return bad;
}

bool condition_T(const AngledForest &h, const CycleRecord &c, TMode mode) {
    return condition_T_failures(h, c, mode).empty();
}

std::vector<CycleRecord> tame_cycles(const AngledForest &h, TMode mode) {
    std::vector<CycleRecord> out;
    for (auto c : vertex_cycles(h)) {
        if (!is_tame_candidate(h, c) || !condition_T(h, c, mode))
            continue;
        c.tame = true;
        out.push_back(std::move(c));
    }
    return out;
}

std::map<std::string, bool> criterion_6_3_by_fibre(const AngledForest &h) {
    std::int64_t n = forest_inner_degree(h);
    std::map<std::string, int> sum;
    for (const auto &c : vertex_cycles(h)) {
        if (c.return_period != 1 || vertex_type(h, c.vertices.front()) != VertexType::Julia || !c.rotation_zero)
            continue;
        for (const auto &v : c.vertices)
            sum[h.vertex(v).fibre] += incidence(h, v);
    }
    std::map<std::string, bool> out;
    for (const auto &u : h.ambient().fibres())
        out[u] = sum[u] < n - 1;
    return out;
}

bool criterion_6_3(const AngledForest &h) {
    auto m = criterion_6_3_by_fibre(h);
    return std::any_of(m.begin(), m.end(), [](const auto &kv) { return kv.second; });
}

namespace {

// Return-1 cycles not yet on the forest, leaf attachments first.
std::vector<PeriodicCycle> pending_fixed_cycles(const AngledForest &h) {
    std::vector<PeriodicCycle> out;
    for (auto &c : find_return_cycles(h, 1))
        if (!c.on_forest())
            out.push_back(std::move(c));
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.incidence < b.incidence; });
    return out;
}

} // namespace

Extension extend_with_superfluous_cycle(const AngledForest &h) {
    auto post = postcritical_vertices(h);
    std::set<std::string> pc(post.begin(), post.end());
    for (const auto &c : vertex_cycles(h)) {
        if (c.return_period != 1)
            continue;
        bool free = std::none_of(c.vertices.begin(), c.vertices.end(),
                                 [&](const auto &v) { return pc.count(v) || h.vertex(v).realizes; });
        if (free)
            return {h, c};
    }
    bool was_tame = !tame_cycles(h).empty();
    for (const auto &c : pending_fixed_cycles(h)) {
        AngledForest g = h;
        auto ids = materialize(g, c);
        if (was_tame && tame_cycles(g).empty())
            continue;
        return {g, vertex_cycle(g, ids.front())};
    }
    throw Error("internal invariant violation: no superfluous return-1 cycle found");
}

TamenessReport assess_tameness(const AngledForest &h, TMode mode) {
    TamenessReport r;
    r.mode = mode;
    r.tame_cycles = tame_cycles(h, mode);
    auto other = tame_cycles(h, mode == TMode::Direct ? TMode::Strict : TMode::Direct);
    r.modes_disagree = other.size() != r.tame_cycles.size();
    r.criterion_6_3 = criterion_6_3_by_fibre(h);
    if (!r.tame_cycles.empty()) {
        r.verdict = Verdict::Tame;
        return r;
    }
    bool crit = std::any_of(r.criterion_6_3.begin(), r.criterion_6_3.end(), [](const auto &kv) { return kv.second; });
    if (!crit)
        return r;
    AngledForest g = h;
    for (;;) {
        auto pending = pending_fixed_cycles(g);
        if (pending.empty())
            break;
        materialize(g, pending.front());
        if (!tame_cycles(g, mode).empty()) {
            r.verdict = Verdict::TameAfterExtension;
            r.witness = std::move(g);
            return r;
        }
    }
    return r;
}

} // namespace hubbard
