#include "hubbard/random_cases.hpp"

#include "hubbard/dynamics.hpp"
#include "hubbard/io.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace hubbard {

namespace {

int pick(std::mt19937 &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

} // namespace

PipelineCase random_pipeline_case(std::mt19937 &rng) {
    PipelineCase pc;
    std::ostringstream out;
    out << "ambient: u0\n";
    int k = pick(rng, 2, 3);
    for (int i = 1; i <= k; ++i) {
        auto id = "c" + std::to_string(i);
        out << "vertex " << id << " fibre=u0 deg=" << pick(rng, 2, 3) << " to=" << id << "\n";
        pc.base.push_back(id);
    }
    int len = pick(rng, 1, 3);
    pc.last_degree = pick(rng, 2, 3);
    std::string prev = pc.base[static_cast<std::size_t>(pick(rng, 0, k - 1))];
    for (int i = 1; i <= len; ++i) {
        auto id = "t" + std::to_string(i);
        int d = i == len ? pc.last_degree : 1;
        out << "vertex " << id << " fibre=u0 deg=" << d << " to=" << prev << "\n";
        pc.tail.push_back(id);
        prev = id;
    }
    pc.schema = parse_schema(out.str());
    return pc;
}

Schema random_two_critical_schema(std::mt19937 &rng) {
    int s = pick(rng, 1, 2);
    std::vector<std::string> fibres;
    for (int i = 0; i < s; ++i)
        fibres.push_back(s == 1 ? "u0" : std::string(1, static_cast<char>('A' + i)));

    struct Orbit {
        std::vector<std::string> ids;
        std::vector<int> fibre;
        std::size_t loop = 0; // last vertex maps to ids[loop]
    };
    // b may fall into the orbit of a instead of closing its own cycle
    bool joins = pick(rng, 0, 3) == 0;
    std::vector<Orbit> orbits(2);
    for (int o = 0; o < 2; ++o) {
        auto &orb = orbits[static_cast<std::size_t>(o)];
        char name = static_cast<char>('a' + o);
        int f = pick(rng, 0, s - 1);
        int pre = pick(rng, 0, 3);
        int period = s * pick(rng, 1, 2);
        int total = o == 1 && joins ? pick(rng, 1, 2) : pre + period;
        for (int t = 0; t < total; ++t) {
            orb.ids.push_back(std::string(1, name) + std::to_string(t));
            orb.fibre.push_back((f + t) % s);
        }
        orb.loop = static_cast<std::size_t>(pre);
    }

    std::ostringstream out;
    out << "ambient:";
    for (const auto &u : fibres)
        out << " " << u;
    out << "\n";
    for (int o = 0; o < 2; ++o) {
        const auto &orb = orbits[static_cast<std::size_t>(o)];
        for (std::size_t t = 0; t < orb.ids.size(); ++t) {
            std::string to;
            if (t + 1 < orb.ids.size()) {
                to = orb.ids[t + 1];
            } else if (o == 1 && joins) {
                // land on a vertex of a over the next fibre
                const auto &a = orbits[0];
                int want = (orb.fibre[t] + 1) % s;
                std::vector<std::string> ok;
                for (std::size_t j = 0; j < a.ids.size(); ++j)
                    if (a.fibre[j] == want)
                        ok.push_back(a.ids[j]);
                to = ok[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ok.size()) - 1))];
            } else {
                to = orb.ids[orb.loop];
            }
            out << "vertex " << orb.ids[t] << " fibre=" << fibres[static_cast<std::size_t>(orb.fibre[t])]
                << " deg=" << (t == 0 ? 2 : 1) << " to=" << to << "\n";
        }
    }
    return parse_schema(out.str());
}

void GraftPool::add(AngledForest h) {
    materialize_all(h, 1);
    if (tame_cycles(h).empty())
        return;
    std::string key;
    for (const auto &u : h.ambient().fibres())
        key += u + " ";
    by_ambient_[key].push_back(std::move(h));
}

std::size_t GraftPool::size() const {
    std::size_t n = 0;
    for (const auto &[k, v] : by_ambient_)
        n += v.size();
    return n;
}

GraftPlan GraftPool::random_plan(std::mt19937 &rng) const {
    if (by_ambient_.empty())
        throw Error("graft pool is empty");
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto it = by_ambient_.begin();
        std::advance(it, pick(rng, 0, static_cast<int>(by_ambient_.size()) - 1));
        const auto &group = it->second;
        auto any = [&]() -> const AngledForest & {
            return group[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(group.size()) - 1))];
        };
        const auto &left = any();
        const auto &right = any();
        auto t1 = tame_cycles(left), t2 = tame_cycles(right);
        const auto &c1 = t1[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(t1.size()) - 1))];
        const auto &c2 = t2[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(t2.size()) - 1))];
        auto linked = [](const AngledForest &h, const CycleRecord &c) {
            return std::any_of(c.vertices.begin(), c.vertices.end(),
                               [&](const auto &v) { return h.vertex(v).realizes.has_value(); });
        };
        if (linked(left, c1) && linked(right, c2))
            continue;
        int m1 = incidence(left, c1.vertices.front()), m2 = incidence(right, c2.vertices.front());
        GraftPlan plan{left, c1.vertices.front(), right, c2.vertices.front(), std::nullopt, false};
        if (m1 > 0)
            plan.angle = Rational(pick(rng, 1, m1), m1 + m2);
        return plan;
    }
    throw Error("no graftable pair found in the pool");
}

} // namespace hubbard
