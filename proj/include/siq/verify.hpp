#pragma once

#include <optional>

#include "siq/enumerate.hpp"
#include "siq/poly.hpp"

namespace siq {

// incremental exact row reduction; remembers how each echelon row was built
// so memberships come with certificates
struct LinearSolver {
    FieldSpec fs;
    size_t dim;
    std::vector<std::vector<mpq_class>> rows;    // reduced, one pivot each
    std::vector<size_t> pivot_of_row;
    std::vector<std::vector<mpq_class>> combos;  // rows[i] as a combination of inserts
    size_t n_inserted = 0;

    LinearSolver(FieldSpec fs, size_t dim) : fs(fs), dim(dim) {}

    bool insert(std::vector<mpq_class> v);  // true if the rank grew
    // coefficients over the inserted vectors, if target lies in their span
    std::optional<std::vector<mpq_class>> express(std::vector<mpq_class> target) const;
    size_t rank() const { return rows.size(); }
};

// monomial basis of the graded piece of the coordinate ring at multidegree d
struct GradedComponent {
    Multidegree d;
    FieldSpec fs;
    std::vector<Mono> basis;  // descending monomial order
    std::map<Mono, size_t, MonoLess> index;
};

GradedComponent component_basis(const SymCtx& ctx, const Multidegree& d, FieldSpec fs,
                                int deg_cap = 8);
// coordinates of a polynomial of multidegree exactly d
std::vector<mpq_class> poly_vector(const GradedComponent& comp, const Poly& f);

// an atomic generator: det of an arrow or trace of a closed word
struct Atom {
    std::string label;
    Multidegree d;
    bool is_det = false;
    std::string det_arrow;
    PathWord word;
};

// dets of all arrows plus traces of all multilinear closed words, restricted
// to multidegrees fitting componentwise under dmax
std::vector<Atom> spanning_atoms(const Quiver& q, const Multidegree& dmax);
// the given generating set as atoms, same restriction
std::vector<Atom> generator_atoms(const Quiver& q, const GeneratorSet& gs, const Multidegree& dmax);
Poly atom_poly(SymCtx& ctx, FieldSpec fs, const Atom& a);

struct GenProduct {
    std::vector<size_t> atom_idx;  // ascending multiset of indices
    std::string label;
    Poly value;
};

// all products of at least min_factors atoms with multidegrees summing to d
std::vector<GenProduct> products_of_degree(SymCtx& ctx, FieldSpec fs,
                                           const std::vector<Atom>& atoms, const Multidegree& d,
                                           int min_factors);

struct DecompReport {
    bool decomposable = false;
    std::string witness;  // combination over products when decomposable
};

// membership of f in the span of products of >= 2 positive-degree invariants
// of matching total multidegree
DecompReport is_decomposable(SymCtx& ctx, const Quiver& q, FieldSpec fs, const Poly& f,
                             int deg_cap = 8);

struct Report {
    struct Line {
        bool pass;
        std::string id, detail;
    };
    std::vector<Line> lines;

    void add(bool pass, const std::string& id, const std::string& detail);
    bool all_pass() const;
};

std::string format_report(const Report& r);  // "PASS|FAIL <id> <detail>" lines

// coefficient-exact trace/det identities on purpose-built small quivers,
// plus oracle confirmation of the congruence forms
Report relation_suite(FieldSpec fs);

// every emitted generator is indecomposable and outside the subalgebra
// generated by the others
Report verify_minimality(const Quiver& q, FieldSpec fs, int deg_cap = 8);

// traces of all multilinear closed words lie in the subalgebra generated by
// the emitted set; same-multidegree traces agree up to sign modulo products;
// non-tree-path traces are decomposable
Report verify_spanning(const Quiver& q, FieldSpec fs, int deg_cap = 8);

// every emitted generator is fixed by all elementary moves
Report verify_invariance(const Quiver& q, FieldSpec fs);

}  // namespace siq
