#pragma once

#include "siq/enumerate.hpp"
#include "siq/quiver.hpp"

namespace siq {

// the quiver with loops removed and parallel arrows merged
struct HatGraph {
    std::vector<std::string> vertices;  // all quiver vertices
    struct Edge {
        std::string u, v;                  // u < v
        std::vector<std::string> arrows;   // parallel arrows between them, sorted
    };
    std::vector<Edge> edges;                                  // sorted by (u, v)
    std::map<std::string, std::vector<std::string>> loops;    // vertex -> loop arrows

    bool is_tree() const;
};

HatGraph hat_graph(const Quiver& q);

// a choice of loops per vertex and parallel arrows per merged edge
struct Coloring {
    std::map<std::string, std::set<std::string>> vertex_loops;  // only colored vertices
    std::vector<std::set<std::string>> edge_arrows;             // aligned with HatGraph.edges
};

// colored support is connected and non-empty, every colored edge set has size
// one or even size, and a support leaf on a size-one edge carries a loop
bool is_good_coloring(const Quiver& q, const HatGraph& h, const Coloring& c);

// closed word realizing the coloring: loops once, size-one edges out and back,
// even edges split between the two directions; built from an Euler circuit
PathWord coloring_word(const Quiver& q, const HatGraph& h, const Coloring& c);

// all good colorings; for characteristic != 2 only those whose word stays a
// generator (one size-four edge alone, or all sizes <= 2 with vertex budgets)
std::vector<Coloring> good_colorings(const Quiver& q, const HatGraph& h, FieldSpec fs);

// generating set for a tree-like quiver read off from its colorings
GeneratorSet treelike_generating_set(const Quiver& q, FieldSpec fs);

// two vertices, p and q loops, l connecting arrows
Quiver two_vertex_quiver(int p, int q, int l);
GeneratorSet two_vertex_generating_set(int p, int q, int l, FieldSpec fs);
// closed-form count of the generating set, dets included
unsigned long long two_vertex_count(int p, int q, int l, FieldSpec fs);

}  // namespace siq
