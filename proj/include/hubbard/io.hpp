#pragma once

#include "hubbard/forest.hpp"
#include "hubbard/schema.hpp"

#include <string>
#include <string_view>

namespace hubbard {

/// Grammar or reference error in an input file, with its 1-based line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Schema parse_schema(std::string_view text);
AngledForest parse_forest(std::string_view text);

std::string write_schema(const Schema &s);
std::string write_forest(const AngledForest &h);

/// Graphviz text: one cluster per fibre, dashed arcs for the vertex map.
std::string export_dot(const AngledForest &h);

std::string read_file(const std::string &path);

} // namespace hubbard
