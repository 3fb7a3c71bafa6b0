#ifndef ULPA_TESTS_SUPPORT_HPP
#define ULPA_TESTS_SUPPORT_HPP

#include "ulpa/free_word.hpp"
#include "ulpa/parse.hpp"
#include "ulpa/path_space.hpp"
#include "ulpa/ultragraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ulpa::test {

inline std::string data_path(const std::string& relative) { return std::string(ULPA_DATA_DIR) + "/" + relative; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// G_LOOP, G_LOOP2, G_CHAIN, G_MIX or G_ULTRA from the bundled data.
inline Ultragraph bundled(const std::string& name) { return parse_ultragraph_dsl(slurp(data_path("graphs/" + name + ".ug"))); }

inline const std::vector<std::string>& bundled_names() {
    static const std::vector<std::string> names{"G_LOOP", "G_LOOP2", "G_CHAIN", "G_MIX", "G_ULTRA"};
    return names;
}

inline VertexSet vset(const Ultragraph& g, std::initializer_list<const char*> labels) {
    std::vector<VertexId> members;
    for (const char* l : labels) members.push_back(g.vertex(l));
    return VertexSet(std::move(members));
}

inline Path path(const Ultragraph& g, std::initializer_list<const char*> labels) {
    Path p;
    for (const char* l : labels) p.push_back(g.edge(l));
    return p;
}

// a b^{-1}.
inline FreeWord word(const Ultragraph& g, std::initializer_list<const char*> a, std::initializer_list<const char*> b) {
    return FreeWord::positive(path(g, a)) * FreeWord::positive(path(g, b)).inverse();
}

inline Cylinder cyl(const Ultragraph& g, std::initializer_list<const char*> prefix, const char* next) {
    return make_cylinder(g, path(g, prefix), g.vertex(next));
}

// Every path of length at most max_length, the empty path first.
inline std::vector<Path> all_paths(const Ultragraph& g, std::size_t max_length) {
    std::vector<Path> out{Path{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_length) continue;
        for (EdgeId e : g.edges()) {
            Path next = out[i];
            next.push_back(e);
            if (g.is_path(next)) out.push_back(next);
        }
    }
    return out;
}

// Every admissible reduced word a b^{-1} with |a|, |b| <= max_length.
inline std::vector<FreeWord> admissible_words(const Ultragraph& g, std::size_t max_length) {
    std::vector<FreeWord> out;
    auto paths = all_paths(g, max_length);
    for (const auto& a : paths) {
        for (const auto& b : paths) {
            FreeWord t = FreeWord::positive(a) * FreeWord::positive(b).inverse();
            if (!word_admissible(g, t)) continue;
            if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
        }
    }
    return out;
}

}  // namespace ulpa::test

#endif  // ULPA_TESTS_SUPPORT_HPP
