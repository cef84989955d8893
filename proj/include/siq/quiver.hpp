#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace siq {

// Bad user input (malformed files, unknown names, caps exceeded).
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Arrow {
    std::string name;
    std::string head;
    std::string tail;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_id(const std::string& name) const;   // -1 if unknown
    int arrow_id(const std::string& name) const;    // -1 if unknown
    const Arrow& arrow(const std::string& name) const;  // throws input_error
    bool has_loops_or_parallel() const;

    // arrow indices sorted by name (bytewise); the global arrow order
    std::vector<int> arrows_by_name() const;
};

// Checks well-formedness: distinct names, declared endpoints.
Quiver validate_quiver(const std::vector<std::string>& vertices,
                       const std::vector<Arrow>& arrows);

// Text format: '#' comments, "vertex <name>", "arrow <name> <head> <tail>".
Quiver parse_quiver(std::istream& in);
Quiver parse_quiver_file(const std::string& path);
std::string format_quiver(const Quiver& q);

// A letter of the doubled quiver: base arrow, possibly starred.
struct ArrowRef {
    std::string base;
    bool starred = false;

    friend bool operator==(const ArrowRef& a, const ArrowRef& b) {
        return a.base == b.base && a.starred == b.starred;
    }
    // name bytewise, unstarred before starred
    friend bool operator<(const ArrowRef& a, const ArrowRef& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.starred < b.starred;
    }
};

// head/tail of a letter in the doubled quiver (star swaps them)
const std::string& ref_head(const Quiver& q, const ArrowRef& r);
const std::string& ref_tail(const Quiver& q, const ArrowRef& r);

struct PathWord {
    std::vector<ArrowRef> letters;
    std::string basepoint;  // used only when letters is empty

    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }

    friend bool operator==(const PathWord& a, const PathWord& b) {
        if (a.letters.empty() && b.letters.empty()) return a.basepoint == b.basepoint;
        return a.letters == b.letters;
    }
    friend bool operator<(const PathWord& a, const PathWord& b) {
        if (a.letters.empty() || b.letters.empty()) {
            if (a.letters.empty() != b.letters.empty()) return a.letters.empty();
            return a.basepoint < b.basepoint;
        }
        return a.letters < b.letters;
    }
};

// Text format: whitespace-separated letters, '*' suffix marks a star;
// the empty path at v is written "1@v".
PathWord parse_path(const std::string& text);
std::string format_path(const PathWord& w);

enum class PathKind { not_a_path, open_path, closed_path, empty_path };

PathKind path_kind(const Quiver& q, const PathWord& w);
std::string word_head(const Quiver& q, const PathWord& w);  // empty path -> basepoint
std::string word_tail(const Quiver& q, const PathWord& w);

// reverse the letters and toggle every star; an involution
PathWord star_path(const PathWord& w);

// per-arrow counts deg_a + deg_{a*}; zero entries are omitted
using Multidegree = std::map<std::string, int>;

Multidegree mdeg(const Quiver& q, const PathWord& w);
int total_degree(const Multidegree& d);
std::string format_mdeg(const Multidegree& d);  // {a:1,b:2}
// lexicographic on the count vector over name-sorted arrows of q
bool mdeg_lex_less(const Quiver& q, const Multidegree& a, const Multidegree& b);
// componentwise a <= b
bool mdeg_leq(const Multidegree& a, const Multidegree& b);
Multidegree mdeg_sub(const Multidegree& a, const Multidegree& b);  // a - b, throws if negative
Multidegree mdeg_add(const Multidegree& a, const Multidegree& b);

// Least word among all rotations of w and of star_path(w); constant on
// ~-classes (a ~ a*, xy ~ yx).  w must be closed and non-empty.
PathWord canonicalize(const Quiver& q, const PathWord& w);

Quiver glue_vertices(const Quiver& q, const std::string& keep, const std::string& drop);
Quiver flip_arrows(const Quiver& q, const std::set<std::string>& names);

// Structure of a tree path: double arrows, blocks, and the tree on blocks.
struct BlockDecomposition {
    struct Block {
        std::vector<std::string> vertices;
        std::vector<ArrowRef> arrows;  // non-double letters living on this block
    };
    struct TreeEdge {
        int head_block;  // block containing head(x)
        int tail_block;  // block containing tail(x)
        std::string via; // the double arrow x
    };
    std::vector<std::string> double_arrows;
    std::vector<Block> blocks;
    std::vector<TreeEdge> tree;
};

// w must pass is_tree_path (declared in enumerate.hpp)
BlockDecomposition blocks_and_tree(const Quiver& q, const PathWord& w);

}  // namespace siq
