#include "hubbard/io.hpp"

#include <sstream>

namespace hubbard {

std::string write_schema(const Schema &s) {
    std::ostringstream out;
    out << "ambient:";
    for (const auto &u : s.ambient().fibres())
        out << ' ' << u;
    out << '\n';
    for (const auto &v : s.vertices())
        out << "vertex " << v.id << " fibre=" << v.fibre << " deg=" << v.degree << " to=" << v.image << '\n';
    return out.str();
}

std::string write_forest(const AngledForest &h) {
    std::ostringstream out;
    out << "ambient:";
    for (const auto &u : h.ambient().fibres())
        out << ' ' << u;
    out << '\n';
    for (const auto &u : h.ambient().fibres()) {
        out << "tree " << u << '\n';
        auto vs = h.vertices_in(u);
        auto es = h.edges_in(u);
        for (const auto &id : vs) {
            const auto &v = h.vertex(id);
            out << "vertex " << id << " deg=" << v.degree;
            if (v.realizes)
                out << " realizes=" << *v.realizes;
            out << '\n';
        }
        for (const auto &id : es) {
            const auto &e = h.edge(id);
            out << "edge " << id << ' ' << e.a << ' ' << e.b << '\n';
        }
        for (const auto &id : vs)
            out << "vmap " << id << " -> " << h.image(id) << '\n';
        for (const auto &id : es) {
            out << "emap " << id << " -> ";
            const auto &img = h.edge(id).image;
            for (std::size_t i = 0; i < img.size(); ++i)
                out << (i ? "," : "") << img[i].edge;
            out << '\n';
        }
        for (const auto &id : vs) {
            const auto &v = h.vertex(id);
            if (v.germs.empty())
                continue;
            out << "angles " << id << ':';
            for (const auto &g : v.germs)
                out << ' ' << g.edge << ' ' << g.gap.str();
            out << '\n';
        }
    }
    return out.str();
}

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string export_dot(const AngledForest &h) {
    std::ostringstream out;
    out << "digraph forest {\n  node [shape=circle];\n";
    for (const auto &u : h.ambient().fibres()) {
        out << "  subgraph " << quoted("cluster_" + u) << " {\n    label=" << quoted(u) << ";\n";
        for (const auto &id : h.vertices_in(u)) {
            const auto &v = h.vertex(id);
            bool fatou = vertex_type(h, id) == VertexType::Fatou;
            std::string label = id + "[d=" + std::to_string(v.degree) + ", " + (fatou ? "Fatou" : "Julia") +
                                ", inc=" + std::to_string(incidence(h, id)) + "]";
            if (v.realizes)
                label += "\\n~" + *v.realizes;
            out << "    " << quoted(id) << " [label=" << quoted(label) << (fatou ? ", style=filled" : "") << "];\n";
        }
        for (const auto &id : h.edges_in(u)) {
            const auto &e = h.edge(id);
            out << "    " << quoted(e.a) << " -> " << quoted(e.b) << " [dir=none, label=" << quoted(id)
                << ", taillabel=" << quoted(h.position(e.a, id).str())
                << ", headlabel=" << quoted(h.position(e.b, id).str()) << "];\n";
        }
        out << "  }\n";
    }
    for (const auto &v : h.vertices())
        out << "  " << quoted(v.id) << " -> " << quoted(v.image) << " [style=dashed, constraint=false];\n";
    out << "}\n";
    return out.str();
}

} // namespace hubbard
