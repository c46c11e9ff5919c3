#include "hubbard/schema.hpp"

#include <algorithm>
#include <set>

namespace hubbard {

std::string to_string(SubordinatedCase c) {
    switch (c) {
    case SubordinatedCase::AdmissibleGate:
        return "admissible-gate";
    case SubordinatedCase::SameFibreChain:
        return "closed-pseudo-chain";
    case SubordinatedCase::SameFibreCriticalCycle:
        return "same-fibre-critical-cycle";
    case SubordinatedCase::CrossFibreClosedChain:
        return "closed-pseudo-chain-across-fibres";
    case SubordinatedCase::CrossFibreOpenChain:
        return "open-chain-across-fibres";
    }
    return "unknown";
}

namespace {

[[noreturn]] void not_subordinated(const std::string &why) {
    throw Error("not a subordinated configuration: " + why);
}

struct Orbit {
    std::vector<std::string> points; // generator first, no repeats
    std::vector<std::string> cycle;
    std::optional<std::string> collider; // v_{i} off the cycle sharing the image of points.back()
    bool periodic = false;
};

Orbit trace_orbit(const Schema &s, const std::string &gen) {
    Orbit o;
    std::set<std::string> seen;
    std::string x = gen;
    while (!seen.count(x)) {
        seen.insert(x);
        o.points.push_back(x);
        x = s.image(x);
    }
    auto at = std::find(o.points.begin(), o.points.end(), x) - o.points.begin();
    o.cycle.assign(o.points.begin() + at, o.points.end());
    o.periodic = at == 0;
    if (!o.periodic)
        o.collider = o.points[static_cast<std::size_t>(at) - 1];
    return o;
}

// The critical vertex whose forward orbit is the whole component.
std::string find_generator(const Schema &s, const std::vector<std::string> &comp) {
    for (const auto &id : comp) {
        if (s.vertex(id).degree < 2)
            continue;
        if (trace_orbit(s, id).points.size() == comp.size())
            return id;
    }
    not_subordinated("a component is not the orbit of a single critical point");
}

} // namespace

SubordinatedClassification classify_subordinated(const Schema &s) {
    if (!is_admissible(s))
        not_subordinated("schema is not admissible");
    auto comps = components(s);
    if (comps.size() != 2)
        not_subordinated("expected exactly two components, found " + std::to_string(comps.size()));

    bool adm0 = is_admissible(s.restrict_to(comps[0]));
    bool adm1 = is_admissible(s.restrict_to(comps[1]));
    if (adm0 == adm1)
        not_subordinated(adm0 ? "both components are admissible on their own"
                              : "neither component is admissible on its own");

    SubordinatedClassification c;
    c.component1 = adm0 ? comps[1] : comps[0];
    c.component2 = adm0 ? comps[0] : comps[1];
    c.v10 = find_generator(s, c.component1);
    c.v20 = find_generator(s, c.component2);

    Orbit o1 = trace_orbit(s, c.v10);
    Orbit o2 = trace_orbit(s, c.v20);
    if (o1.periodic)
        not_subordinated("generator of the non-admissible component is periodic");
    c.orbit1 = o1.points;
    c.orbit2 = o2.points;
    c.cycle1 = o1.cycle;
    c.cycle2 = o2.cycle;
    c.v1j = o1.points.back();
    c.v1i = *o1.collider;
    c.v20_periodic = o2.periodic;
    c.v2j = o2.points.back();
    if (!o2.periodic) {
        c.v2i = *o2.collider;
        // The fibre of v_{2j} must hold a critical vertex of S2 with a different image.
        const auto &fib = s.vertex(*c.v2j).fibre;
        bool found = false;
        for (const auto &id : c.component2) {
            const auto &v = s.vertex(id);
            if (v.fibre == fib && v.degree >= 2 && v.image != s.image(*c.v2j))
                found = true;
        }
        if (!found)
            not_subordinated("fibre of the colliding pair of S2 has no critical vertex with a distinct image");
    }
    {
        // The fibre of the S1 collision must hold a critical vertex of S2.
        const auto &fib = s.vertex(c.v1j).fibre;
        bool found = false;
        for (const auto &id : c.component2) {
            const auto &v = s.vertex(id);
            if (v.fibre == fib && v.degree >= 2)
                found = true;
        }
        if (!found)
            not_subordinated("fibre of the colliding pair of S1 has no critical vertex of S2");
    }

    c.same_fibre = s.vertex(c.v10).fibre == s.vertex(c.v20).fibre;

    std::vector<std::string> gate_ids = c.cycle1;
    gate_ids.insert(gate_ids.end(), c.component2.begin(), c.component2.end());
    c.gate_admissible = is_admissible(s.restrict_to(gate_ids));

    if (c.gate_admissible)
        c.kind = SubordinatedCase::AdmissibleGate;
    else if (c.same_fibre)
        c.kind = c.v20_periodic ? SubordinatedCase::SameFibreCriticalCycle : SubordinatedCase::SameFibreChain;
    else
        c.kind = c.v20_periodic ? SubordinatedCase::CrossFibreClosedChain : SubordinatedCase::CrossFibreOpenChain;
    return c;
}

} // namespace hubbard
