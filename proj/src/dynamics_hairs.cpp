#include "dynamics_internal.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hubbard::detail {

namespace {

struct Segment {
    std::string start;
    int length;
    std::string germ; // germ at F^length(start) hit after length steps
    Angle x;
};

class HairSearch {
public:
    HairSearch(const AngledForest &h, int k, std::vector<PeriodicCycle> &out, std::set<std::string> &seen)
        : h_(h), k_(k), L_(k * static_cast<int>(h.ambient().size())), out_(out), seen_(seen) {}

    void run() {
        for (const auto &v : h_.vertices())
            if (!blocked(v.id))
                pure_cycles(v.id);
        for (const auto &v : h_.vertices())
            if (!blocked(v.id))
                walks_from(v.id);
    }

private:
    // Periodic Julia vertices carry no directions besides their germs.
    bool blocked(const std::string &a) {
        auto it = blocked_.find(a);
        if (it != blocked_.end())
            return it->second;
        bool b = is_periodic(h_, a) && vertex_type(h_, a) == VertexType::Julia;
        blocked_[a] = b;
        return b;
    }

    bool free_direction(const std::string &a, Angle x) { return !blocked(a) && germ_at(h_, a, x).empty(); }

    // Composite direction map over n steps: x -> D x + c.
    std::pair<std::int64_t, Angle> composite(const std::string &a, int n) {
        std::int64_t D = 1;
        Angle c;
        std::string v = a;
        for (int i = 0; i < n; ++i) {
            c = direction_image(h_, v, c);
            D *= h_.vertex(v).degree;
            v = h_.image(v);
        }
        return {D, c};
    }

    // Follow x for n steps; false if some direction before the last is a germ.
    bool states(const std::string &a, Angle x, int n, std::vector<SymbolicPoint> &pts) {
        std::string v = a;
        for (int i = 0; i < n; ++i) {
            if (!free_direction(v, x))
                return false;
            SymbolicPoint p;
            p.kind = SymbolicPoint::Kind::Hair;
            p.vertex = v;
            p.direction = x;
            p.fibre = h_.vertex(v).fibre;
            pts.push_back(std::move(p));
            x = direction_image(h_, v, x);
            v = h_.image(v);
        }
        return true;
    }

    std::string iterate(std::string v, int n) {
        for (int i = 0; i < n; ++i)
            v = h_.image(v);
        return v;
    }

    void offer(std::vector<SymbolicPoint> pts) {
        if (minimal_shift(pts) != pts.size())
            return;
        if (!seen_.insert(cycle_key(pts)).second)
            return;
        canonical_rotation(h_, pts);
        PeriodicCycle c;
        c.points = std::move(pts);
        c.return_period = k_;
        c.incidence = 1;
        c.rotation_zero = k_ == 1;
        out_.push_back(std::move(c));
    }

    void pure_cycles(const std::string &a) {
        if (iterate(a, L_) != a)
            return;
        auto [D, c] = composite(a, L_);
        // D x + c = x mod 1
        for (std::int64_t m = 0; m + 1 < D; ++m) {
            Angle x((Rational(m) - c.value()) / Rational(D - 1));
            std::vector<SymbolicPoint> pts;
            if (states(a, x, L_, pts))
                offer(std::move(pts));
        }
    }

    const std::vector<Segment> &segments(const std::string &a) {
        auto it = segs_.find(a);
        if (it != segs_.end())
            return it->second;
        std::vector<Segment> found;
        for (int n = 1; n <= L_; ++n) {
            auto [D, c] = composite(a, n);
            std::string b = iterate(a, n);
            for (const auto &[germ, pos] : h_.positions(b)) {
                for (std::int64_t m = 0; m < D; ++m) {
                    Angle x((pos.value() - c.value() + Rational(m)) / Rational(D));
                    std::vector<SymbolicPoint> scratch;
                    if (states(a, x, n, scratch))
                        found.push_back({a, n, germ, x});
                }
            }
        }
        return segs_[a] = std::move(found);
    }

    const std::vector<std::string> &region(const Segment &s) {
        auto key = iterate(s.start, s.length) + "|" + s.germ;
        auto it = regions_.find(key);
        if (it != regions_.end())
            return it->second;
        return regions_[key] = branch(h_, iterate(s.start, s.length), s.germ);
    }

    bool in_region(const Segment &s, const std::string &v) {
        const auto &r = region(s);
        return std::find(r.begin(), r.end(), v) != r.end();
    }

    // Can a walk from a of total length rem close up at a0?
    bool closes(const std::string &a, int rem, const std::string &a0, std::map<std::pair<std::string, int>, bool> &memo) {
        auto key = std::make_pair(a, rem);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        memo[key] = false;
        bool ok = false;
        for (const auto &s : segments(a)) {
            if (s.length > rem)
                continue;
            if (s.length == rem) {
                ok = ok || in_region(s, a0);
                continue;
            }
            for (const auto &nx : region(s))
                if (!blocked(nx) && closes(nx, rem - s.length, a0, memo)) {
                    ok = true;
                    break;
                }
            if (ok)
                break;
        }
        return memo[key] = ok;
    }

    void walks_from(const std::string &a0) {
        std::map<std::pair<std::string, int>, bool> memo;
        if (!closes(a0, L_, a0, memo))
            return;
        std::vector<Segment> path;
        std::function<void(const std::string &, int)> dfs = [&](const std::string &a, int rem) {
            for (const auto &s : segments(a)) {
                if (s.length > rem)
                    continue;
                path.push_back(s);
                if (s.length == rem) {
                    if (in_region(s, a0))
                        emit(path);
                } else {
                    for (const auto &nx : region(s))
                        if (!blocked(nx) && closes(nx, rem - s.length, a0, memo))
                            dfs(nx, rem - s.length);
                }
                path.pop_back();
            }
        };
        dfs(a0, L_);
    }

    void emit(const std::vector<Segment> &path) {
        std::vector<SymbolicPoint> pts;
        for (std::size_t i = 0; i < path.size(); ++i) {
            states(path[i].start, path[i].x, path[i].length, pts);
            pts.back().exit = path[(i + 1) % path.size()].start;
        }
        offer(std::move(pts));
    }

    const AngledForest &h_;
    int k_, L_;
    std::vector<PeriodicCycle> &out_;
    std::set<std::string> &seen_;
    std::map<std::string, bool> blocked_;
    std::map<std::string, std::vector<Segment>> segs_;
    std::map<std::string, std::vector<std::string>> regions_;
};

} // namespace

void hair_cycles(const AngledForest &h, int k, std::vector<PeriodicCycle> &out, std::set<std::string> &seen) {
    HairSearch(h, k, out, seen).run();
}

} // namespace hubbard::detail
