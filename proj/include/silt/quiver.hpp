#pragma once

// Quivers and paths. Paths compose left-to-right: in `p * q` the walk p is
// traversed first, so pq exists when target(p) == source(q).

#include <map>
#include <string>
#include <vector>

#include "silt/field.hpp"

namespace silt {

struct Arrow {
    std::string name;
    int from = 0;
    int to = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& label) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return static_cast<int>(i);
        throw usage_error("unknown vertex '" + label + "'");
    }

    int arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        throw usage_error("unknown arrow '" + name + "'");
    }

    void validate() const {
        std::map<std::string, int> seen;
        for (auto& v : vertices) {
            if (v.empty()) throw usage_error("empty vertex label");
            if (++seen[v] > 1) throw usage_error("duplicate vertex label '" + v + "'");
        }
        for (auto& a : arrows) {
            if (a.name.empty()) throw usage_error("empty arrow name");
            if (++seen[a.name] > 1) throw usage_error("duplicate label '" + a.name + "'");
            if (a.from < 0 || a.from >= static_cast<int>(vertices.size()) ||
                a.to < 0 || a.to >= static_cast<int>(vertices.size()))
                throw usage_error("arrow '" + a.name + "' has undeclared endpoint");
        }
    }
};

// A path: trivial (length 0) at `start`, or the arrow sequence walked in order.
struct Path {
    int start = 0;
    std::vector<int> arrows;

    int source() const { return start; }
    int target(const Quiver& q) const {
        return arrows.empty() ? start : q.arrows[arrows.back()].to;
    }
    std::size_t length() const { return arrows.size(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.start == b.start && a.arrows == b.arrows;
    }
    // length, then arrow sequence, then start vertex; the canonical path order.
    friend bool operator<(const Path& a, const Path& b) {
        if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
        if (a.arrows != b.arrows) return a.arrows < b.arrows;
        return a.start < b.start;
    }
};

inline std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertices[p.start];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += "*";
        s += q.arrows[p.arrows[i]].name;
    }
    return s;
}

// nullopt when the walks do not concatenate.
inline std::optional<Path> compose(const Quiver& q, const Path& a, const Path& b) {
    if (a.target(q) != b.source()) return std::nullopt;
    Path r = a;
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return r;
}

// One formal term of a relation.
template <class S>
struct PathTerm {
    S coeff;
    Path path;
};

template <class S>
using PathCombo = std::vector<PathTerm<S>>;

}  // namespace silt
