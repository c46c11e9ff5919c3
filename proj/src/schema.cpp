#include "hubbard/schema.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace hubbard {

CyclicAmbient::CyclicAmbient(std::vector<std::string> fibres) : fibres_(std::move(fibres)) {
    if (fibres_.empty())
        throw Error("ambient needs at least one fibre");
    for (std::size_t i = 0; i < fibres_.size(); ++i) {
        if (!index_.emplace(fibres_[i], i).second)
            throw Error("duplicate fibre label '" + fibres_[i] + "'");
    }
}

std::size_t CyclicAmbient::index_of(const std::string &fibre) const {
    auto it = index_.find(fibre);
    if (it == index_.end())
        throw Error("no such fibre '" + fibre + "'");
    return it->second;
}

const std::string &CyclicAmbient::successor(const std::string &fibre) const {
    return fibres_[(index_of(fibre) + 1) % fibres_.size()];
}

const std::string &CyclicAmbient::predecessor(const std::string &fibre) const {
    return fibres_[(index_of(fibre) + fibres_.size() - 1) % fibres_.size()];
}

void Schema::add_vertex(SchemaVertex v) {
    if (!ambient_.contains(v.fibre))
        throw Error("vertex '" + v.id + "': no such fibre '" + v.fibre + "'");
    if (v.degree < 1)
        throw Error("vertex '" + v.id + "': degree must be >= 1");
    if (index_.count(v.id))
        throw Error("duplicate vertex id '" + v.id + "'");
    index_.emplace(v.id, vertices_.size());
    vertices_.push_back(std::move(v));
}

void Schema::check_references() const {
    for (const auto &v : vertices_)
        if (!contains(v.image))
            throw Error("vertex '" + v.id + "' maps to unknown vertex '" + v.image + "'");
}

const SchemaVertex &Schema::vertex(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw Error("no such vertex '" + id + "'");
    return vertices_[it->second];
}

std::vector<std::string> Schema::fibre_members(const std::string &fibre) const {
    ambient_.index_of(fibre);
    std::vector<std::string> out;
    for (const auto &v : vertices_)
        if (v.fibre == fibre)
            out.push_back(v.id);
    return out;
}

std::vector<std::string> Schema::preimages(const std::string &id) const {
    std::vector<std::string> out;
    for (const auto &v : vertices_)
        if (v.image == id)
            out.push_back(v.id);
    return out;
}

bool Schema::is_periodic(const std::string &id) const {
    std::string x = image(id);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (x == id)
            return true;
        x = image(x);
    }
    return false;
}

Schema Schema::restrict_to(const std::vector<std::string> &ids) const {
    std::set<std::string> keep(ids.begin(), ids.end());
    Schema out(ambient_);
    for (const auto &v : vertices_) {
        if (!keep.count(v.id))
            continue;
        if (!keep.count(v.image))
            throw Error("restriction is not forward invariant at '" + v.id + "'");
        out.add_vertex(v);
    }
    return out;
}

int ambient_degree(const Schema &s, const std::string &fibre) {
    int d = 1;
    for (const auto &id : s.fibre_members(fibre))
        d += s.vertex(id).degree - 1;
    return d;
}

std::int64_t inner_degree(const Schema &s) {
    std::int64_t n = 1;
    for (const auto &u : s.ambient().fibres())
        n *= ambient_degree(s, u);
    return n;
}

int mobius(std::int64_t n) {
    if (n < 1)
        throw Error("mobius: argument must be positive");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            sign = -sign;
        }
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

namespace {

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / base)
            throw Error("cycle_count: overflow");
        r *= base;
    }
    return r;
}

} // namespace

std::int64_t cycle_count(std::int64_t n, std::int64_t k) {
    if (n < 2 || k < 1)
        throw Error("cycle_count: domain error (need n >= 2, k >= 1)");
    if (k == 1)
        return n;
    std::int64_t total = 0;
    for (std::int64_t j = 1; j <= k; ++j)
        if (k % j == 0)
            total += mobius(k / j) * checked_pow(n, j);
    return total / k;
}

CycleCountTable cycle_count_table(std::int64_t n, std::int64_t max_k) {
    CycleCountTable t;
    t.n = n;
    for (std::int64_t k = 1; k <= max_k; ++k)
        t.entries[k] = cycle_count(n, k);
    return t;
}

bool ValidationReport::has(const std::string &condition) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation &v) { return v.condition == condition; });
}

std::vector<CycleRecord> schema_cycles(const Schema &s) {
    std::vector<CycleRecord> out;
    std::set<std::string> seen;
    for (const auto &v : s.vertices()) {
        if (seen.count(v.id) || !s.contains(v.image) || !s.is_periodic(v.id))
            continue;
        CycleRecord c;
        std::string x = v.id;
        do {
            c.vertices.push_back(x);
            seen.insert(x);
            x = s.image(x);
        } while (x != v.id);
        c.return_period = static_cast<int>(c.vertices.size() / s.ambient().size());
        out.push_back(std::move(c));
    }
    return out;
}

ValidationReport validate_schema(const Schema &s) {
    ValidationReport r;
    for (const auto &v : s.vertices()) {
        if (!s.contains(v.image)) {
            r.violations.push_back({"ref", "vertex '" + v.id + "' maps to unknown vertex '" + v.image + "'"});
            continue;
        }
        const auto &img = s.vertex(v.image);
        if (img.fibre != s.ambient().successor(v.fibre))
            r.violations.push_back({"b", "vertex '" + v.id + "' in fibre " + v.fibre + " maps to '" + img.id +
                                             "' in fibre " + img.fibre + ", expected fibre " +
                                             s.ambient().successor(v.fibre)});
    }
    if (!r.ok())
        return r;

    for (const auto &u : s.ambient().fibres()) {
        int du = ambient_degree(s, u);
        std::map<std::string, int> load;
        for (const auto &id : s.fibre_members(u))
            load[s.image(id)] += s.vertex(id).degree;
        for (const auto &[w, total] : load)
            if (total > du)
                r.violations.push_back({"a", "preimages of '" + w + "' in fibre " + u + " have total degree " +
                                                 std::to_string(total) + " > ambient degree " + std::to_string(du)});
    }

    std::int64_t n = inner_degree(s);
    if (n < 2) {
        r.violations.push_back({"c", "inner degree " + std::to_string(n) + " < 2"});
        return r;
    }

    std::map<int, int> census;
    for (const auto &c : schema_cycles(s))
        ++census[c.return_period];
    for (const auto &[k, count] : census) {
        std::int64_t bound = cycle_count(n, k);
        if (count > bound)
            r.violations.push_back({"d", std::to_string(count) + " cycles of return period " + std::to_string(k) +
                                             " exceed N(" + std::to_string(n) + "," + std::to_string(k) +
                                             ")=" + std::to_string(bound)});
    }
    return r;
}

bool is_admissible(const Schema &s) { return validate_schema(s).ok(); }

std::vector<std::vector<std::string>> components(const Schema &s) {
    const auto &vs = s.vertices();
    std::vector<std::size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < vs.size(); ++i)
        pos[vs[i].id] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto it = pos.find(vs[i].image);
        if (it != pos.end())
            parent[find(i)] = find(it->second);
    }
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto root = find(i);
        auto [it, fresh] = slot.emplace(root, out.size());
        if (fresh)
            out.emplace_back();
        out[it->second].push_back(vs[i].id);
    }
    return out;
}

bool is_saturated(const Schema &s, const std::string &w, const std::string &fibre) {
    const auto &target = s.vertex(w);
    if (target.fibre != s.ambient().successor(fibre))
        throw Error("fibre mismatch: '" + w + "' does not lie over the successor of fibre " + fibre);
    int total = 0;
    for (const auto &id : s.fibre_members(fibre))
        if (s.image(id) == w)
            total += s.vertex(id).degree;
    return total == ambient_degree(s, fibre);
}

std::vector<CycleRecord> superfluous_cycles(const Schema &s) {
    std::vector<CycleRecord> out;
    auto comps = components(s);
    auto cycles = schema_cycles(s);
    for (const auto &comp : comps) {
        bool critical = std::any_of(comp.begin(), comp.end(), [&](const auto &id) { return s.vertex(id).degree >= 2; });
        if (critical)
            continue;
        std::set<std::string> members(comp.begin(), comp.end());
        for (const auto &c : cycles)
            if (members.count(c.vertices.front()))
                out.push_back(c);
    }
    return out;
}

} // namespace hubbard
