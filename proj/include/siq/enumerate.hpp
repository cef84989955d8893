#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "siq/poly.hpp"
#include "siq/quiver.hpp"

namespace siq {

// closed and each doubled-quiver letter occurs at most once
bool is_multilinear(const Quiver& q, const PathWord& w);

// Multilinear, and for every base arrow x occurring both plain and starred
// some rotation factors as x . c . x* . d with c, d non-empty closed words
// whose vertex sets are disjoint.
bool is_tree_path(const Quiver& q, const PathWord& w);

struct EnumOptions {
    int arrow_cap = 14;  // refuse quivers with more arrows
};

// One canonical representative per multidegree realized by a tree path
// (the least canonical form).  Keys every generator trace in char 2.
std::map<Multidegree, PathWord> enumerate_tree_paths(const Quiver& q, EnumOptions opts = {});

// Same, filtered down to representatives passing path_admissible (char != 2).
std::map<Multidegree, PathWord> enumerate_admissible_tree_paths(const Quiver& q,
                                                                EnumOptions opts = {});

// All ~-classes of tree paths, grouped by multidegree (small quivers only).
std::map<Multidegree, std::vector<PathWord>> enumerate_tree_path_classes(const Quiver& q,
                                                                         EnumOptions opts = {});

// canonical forms of all non-empty multilinear closed words, sorted
std::vector<PathWord> enumerate_multilinear_paths(const Quiver& q, EnumOptions opts = {});

// canonical forms of all non-empty closed walks of length <= max_len
// (letters may repeat)
std::vector<PathWord> enumerate_closed_walks(const Quiver& q, int max_len);

// partition of the letters of a multilinear closed word into primitive
// closed subpaths; each part is rotated to start at its least letter
struct Decomposition {
    std::vector<PathWord> parts;
};

std::vector<Decomposition> enumerate_decompositions(const Quiver& q, const PathWord& w);

// intersection pattern of the parts: an edge (i, j) carries the number of
// shared vertices when that number is positive
struct Diagram {
    int nodes = 0;
    struct Edge {
        int i, j, mark;
    };
    std::vector<Edge> edges;  // i < j, sorted
};

Diagram type_diagram(const Quiver& q, const Decomposition& dec);

// all marks in {1, 2} and every biconnected component is a single edge or a
// triangle with all marks 1
bool diagram_admissible(const Diagram& g);

// some decomposition has an admissible diagram, every triangle of parts meets
// in one common vertex, and consecutive mark-2 edges satisfy the arc condition
bool path_admissible(const Quiver& q, const PathWord& w, Decomposition* witness = nullptr);

struct GeneratorSet {
    FieldSpec field;
    std::vector<std::string> dets;  // arrow names, sorted
    std::map<Multidegree, PathWord> traces;

    size_t size() const { return dets.size() + traces.size(); }
};

// determinants of all arrows plus one trace per generator multidegree:
// tree paths in char 2, admissible tree paths otherwise
GeneratorSet minimal_generating_set(const Quiver& q, FieldSpec fs, EnumOptions opts = {});

// one line per generator, sorted by total degree, ties by descending
// count vector over the name-sorted arrows:
//   det <arrow>
//   tr <word> | mdeg {a:1,b:2}
std::string format_generator_set(const Quiver& q, const GeneratorSet& gs);

}  // namespace siq
