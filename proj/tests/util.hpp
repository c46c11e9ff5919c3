#pragma once

#include "hubbard/io.hpp"

#include <string>

inline std::string corpus_path(const std::string &rel) { return std::string(HUBBARD_CORPUS) + "/" + rel; }

inline hubbard::Schema corpus_schema(const std::string &name) {
    return hubbard::parse_schema(hubbard::read_file(corpus_path("schemas/" + name + ".schema")));
}

inline hubbard::AngledForest corpus_forest(const std::string &name) {
    return hubbard::parse_forest(hubbard::read_file(corpus_path("forests/" + name + ".forest")));
}
