#include "hubbard/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hubbard {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        Line l{n, {}};
        for (std::string tok; ls >> tok;)
            l.tokens.push_back(tok);
        if (!l.tokens.empty())
            out.push_back(std::move(l));
    }
    return out;
}

// Parses `key=value` tokens; rejects unknown keys and repeats.
std::map<std::string, std::string> key_values(const Line &l, std::size_t from, const std::set<std::string> &allowed) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < l.tokens.size(); ++i) {
        auto eq = l.tokens[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == l.tokens[i].size())
            throw ParseError(l.number, "expected key=value, got '" + l.tokens[i] + "'");
        auto key = l.tokens[i].substr(0, eq);
        if (!allowed.count(key))
            throw ParseError(l.number, "unknown key '" + key + "'");
        if (!kv.emplace(key, l.tokens[i].substr(eq + 1)).second)
            throw ParseError(l.number, "repeated key '" + key + "'");
    }
    return kv;
}

int parse_degree(const Line &l, const std::string &s) {
    try {
        std::size_t used = 0;
        int d = std::stoi(s, &used);
        if (used != s.size() || d < 1)
            throw std::invalid_argument(s);
        return d;
    } catch (const std::exception &) {
        throw ParseError(l.number, "degree must be a positive integer, got '" + s + "'");
    }
}

CyclicAmbient parse_ambient(const std::vector<Line> &lines) {
    if (lines.empty())
        throw ParseError(1, "missing 'ambient:' header");
    const auto &l = lines.front();
    if (l.tokens.front() != "ambient:")
        throw ParseError(l.number, "first statement must be 'ambient:'");
    std::vector<std::string> fibres(l.tokens.begin() + 1, l.tokens.end());
    try {
        return CyclicAmbient(fibres);
    } catch (const Error &e) {
        throw ParseError(l.number, e.what());
    }
}

void expect_arity(const Line &l, std::size_t n, const char *form) {
    if (l.tokens.size() != n)
        throw ParseError(l.number, std::string("expected '") + form + "'");
}

} // namespace

Schema parse_schema(std::string_view text) {
    auto lines = tokenize(text);
    Schema s(parse_ambient(lines));
    std::map<std::string, int> where;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto &l = lines[i];
        if (l.tokens.front() != "vertex")
            throw ParseError(l.number, "unknown statement '" + l.tokens.front() + "'");
        if (l.tokens.size() < 2)
            throw ParseError(l.number, "vertex needs an id");
        auto kv = key_values(l, 2, {"fibre", "deg", "to"});
        for (const char *k : {"fibre", "deg", "to"})
            if (!kv.count(k))
                throw ParseError(l.number, std::string("missing ") + k + "=");
        SchemaVertex v{l.tokens[1], kv["fibre"], parse_degree(l, kv["deg"]), kv["to"]};
        try {
            s.add_vertex(v);
        } catch (const Error &e) {
            throw ParseError(l.number, e.what());
        }
        where[v.id] = l.number;
    }
    for (const auto &v : s.vertices())
        if (!s.contains(v.image))
            throw ParseError(where[v.id], "vertex '" + v.id + "' maps to unknown vertex '" + v.image + "'");
    return s;
}

AngledForest parse_forest(std::string_view text) {
    auto lines = tokenize(text);
    AngledForest h(parse_ambient(lines));
    std::string tree;
    std::set<std::string> trees_seen;
    std::map<std::string, int> vline, eline;
    std::vector<const Line *> vmaps, emaps, angles;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto &l = lines[i];
        const auto &kw = l.tokens.front();
        try {
            if (kw == "tree") {
                expect_arity(l, 2, "tree <fibre>");
                tree = l.tokens[1];
                if (!h.ambient().contains(tree))
                    throw ParseError(l.number, "no such fibre '" + tree + "'");
                if (!trees_seen.insert(tree).second)
                    throw ParseError(l.number, "tree " + tree + " declared twice");
            } else if (kw == "vertex" || kw == "edge") {
                if (tree.empty())
                    throw ParseError(l.number, kw + " outside of a tree block");
                if (l.tokens.size() < 2)
                    throw ParseError(l.number, kw + " needs an id");
                const auto &id = l.tokens[1];
                if (h.has_vertex(id) || h.has_edge(id))
                    throw ParseError(l.number, "duplicate id '" + id + "'");
                if (kw == "vertex") {
                    auto kv = key_values(l, 2, {"deg", "realizes"});
                    if (!kv.count("deg"))
                        throw ParseError(l.number, "missing deg=");
                    ForestVertex v;
                    v.id = id;
                    v.fibre = tree;
                    v.degree = parse_degree(l, kv["deg"]);
                    if (kv.count("realizes"))
                        v.realizes = kv["realizes"];
                    h.add_vertex(std::move(v));
                    vline[id] = l.number;
                } else {
                    expect_arity(l, 4, "edge <id> <a> <b>");
                    for (std::size_t j : {2, 3})
                        if (!h.has_vertex(l.tokens[j]) || h.vertex(l.tokens[j]).fibre != tree)
                            throw ParseError(l.number, "unknown vertex '" + l.tokens[j] + "' in tree " + tree);
                    h.add_edge(ForestEdge{id, tree, l.tokens[2], l.tokens[3], {}});
                    eline[id] = l.number;
                }
            } else if (kw == "vmap") {
                expect_arity(l, 4, "vmap <id> -> <id>");
                vmaps.push_back(&l);
            } else if (kw == "emap") {
                expect_arity(l, 4, "emap <edge> -> <edge>[,<edge>...]");
                emaps.push_back(&l);
            } else if (kw == "angles") {
                angles.push_back(&l);
            } else {
                throw ParseError(l.number, "unknown statement '" + kw + "'");
            }
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(l.number, e.what());
        }
    }
    for (const auto &u : h.ambient().fibres())
        if (!trees_seen.count(u))
            throw ParseError(lines.back().number, "missing tree for fibre " + u);

    std::set<std::string> mapped;
    for (const auto *l : vmaps) {
        if (l->tokens[2] != "->")
            throw ParseError(l->number, "expected '->'");
        const auto &a = l->tokens[1], &b = l->tokens[3];
        if (!h.has_vertex(a) || !h.has_vertex(b))
            throw ParseError(l->number, "unknown vertex '" + (h.has_vertex(a) ? b : a) + "'");
        if (!mapped.insert(a).second)
            throw ParseError(l->number, "vertex '" + a + "' mapped twice");
        h.vertex(a).image = b;
    }
    for (const auto &v : h.vertices())
        if (!mapped.count(v.id))
            throw ParseError(vline[v.id], "vertex '" + v.id + "' has no vmap");

    std::set<std::string> emapped;
    for (const auto *l : emaps) {
        if (l->tokens[2] != "->")
            throw ParseError(l->number, "expected '->'");
        const auto &e = l->tokens[1];
        if (!h.has_edge(e))
            throw ParseError(l->number, "unknown edge '" + e + "'");
        if (!emapped.insert(e).second)
            throw ParseError(l->number, "edge '" + e + "' mapped twice");
        EdgePath path;
        std::string at = h.image(h.edge(e).a);
        std::stringstream ss(l->tokens[3]);
        for (std::string f; std::getline(ss, f, ',');) {
            if (!h.has_edge(f))
                throw ParseError(l->number, "unknown edge '" + f + "'");
            const auto &fe = h.edge(f);
            if (fe.a != at && fe.b != at)
                throw ParseError(l->number, "image of '" + e + "' is not a path at '" + f + "'");
            path.push_back({f, fe.a == at});
            at = fe.a == at ? fe.b : fe.a;
        }
        h.edge(e).image = std::move(path);
    }
    for (const auto &e : h.edges())
        if (!emapped.count(e.id)) {
            try {
                h.edge(e.id).image = h.tree_path(h.image(e.a), h.image(e.b));
            } catch (const Error &err) {
                throw ParseError(eline[e.id], err.what());
            }
        }

    std::set<std::string> angled;
    for (const auto *l : angles) {
        auto toks = l->tokens;
        if (toks.size() < 2)
            throw ParseError(l->number, "angles needs a vertex");
        std::string v = toks[1];
        std::size_t first = 2;
        if (!v.empty() && v.back() == ':')
            v.pop_back();
        else if (toks.size() > 2 && toks[2] == ":")
            first = 3;
        else
            throw ParseError(l->number, "expected 'angles <vertex>: ...'");
        if (!h.has_vertex(v))
            throw ParseError(l->number, "unknown vertex '" + v + "'");
        if (!angled.insert(v).second)
            throw ParseError(l->number, "angles for '" + v + "' given twice");
        if ((toks.size() - first) % 2 != 0)
            throw ParseError(l->number, "expected germ/gap pairs");
        auto incident = h.incident_edges(v);
        std::set<std::string> inc(incident.begin(), incident.end()), listed;
        auto &vx = h.vertex(v);
        vx.germs.clear();
        for (std::size_t j = first; j < toks.size(); j += 2) {
            if (!inc.count(toks[j]))
                throw ParseError(l->number, "edge '" + toks[j] + "' is not incident at '" + v + "'");
            if (!listed.insert(toks[j]).second)
                throw ParseError(l->number, "germ '" + toks[j] + "' listed twice");
            Rational gap;
            try {
                gap = Angle::parse_gap(toks[j + 1]);
            } catch (const std::exception &e) {
                throw ParseError(l->number, e.what());
            }
            vx.germs.push_back(Germ{toks[j], gap});
        }
        if (listed != inc)
            throw ParseError(l->number, "angles at '" + v + "' must list every incident edge");
    }
    for (const auto &v : h.vertices()) {
        if (angled.count(v.id))
            continue;
        auto inc = h.incident_edges(v.id);
        if (inc.size() == 1)
            h.vertex(v.id).germs = {Germ{inc.front(), Rational(1)}};
        else if (inc.size() > 1)
            throw ParseError(vline[v.id], "vertex '" + v.id + "' has several edges but no angles");
    }
    return h;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace hubbard
