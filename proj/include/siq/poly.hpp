#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siq/quiver.hpp"

namespace siq {

// char 0 = rationals, otherwise a prime field
struct FieldSpec {
    unsigned ch = 0;

    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime_field(unsigned p);
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(unsigned n);

// canonical representative: char 0 leaves c alone, char p maps to 0..p-1
mpq_class field_normalize(const FieldSpec& fs, const mpq_class& c);
mpq_class field_inverse(const FieldSpec& fs, const mpq_class& c);

// Variable registry for one quiver.  Matrix entry variables come first,
// 4 per arrow in name order; named parameters are appended on demand.
struct SymCtx {
    const Quiver* q;
    std::vector<int> rank_of_arrow;  // arrow index -> name rank
    std::vector<int> arrow_of_rank;
    std::vector<std::string> params;

    explicit SymCtx(const Quiver& quiver);

    int nxvars() const { return int(arrow_of_rank.size()) * 4; }
    int xvar(int arrow_idx, int i, int j) const;  // i, j in {1, 2}
    int xvar(const std::string& arrow, int i, int j) const;
    int pvar(const std::string& name);  // registers if missing
    int find_pvar(const std::string& name) const;  // -1 if absent
    std::string var_name(int v) const;
    int var_arrow(int v) const;  // arrow index, or -1 for a parameter
};

// sparse monomial: (variable, exponent) pairs, ascending variable, exponents > 0
using Mono = std::vector<std::pair<int, int>>;

int mono_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);

// graded order, ties broken lexicographically (smaller variables weigh more)
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

struct Poly {
    FieldSpec fs;
    std::map<Mono, mpq_class, MonoLess> terms;

    static Poly zero(FieldSpec fs) { return Poly{fs, {}}; }
    static Poly constant(FieldSpec fs, const mpq_class& c);
    static Poly variable(FieldSpec fs, int var);

    bool is_zero() const { return terms.empty(); }
    void add_term(const Mono& m, const mpq_class& c);  // normalizes, drops zeros

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.fs == b.fs && a.terms == b.terms;
    }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const mpq_class& c, const Poly& a);
Poly poly_pow(const Poly& a, int e);

// every variable occurring in f must be assigned
mpq_class evaluate_at_point(const Poly& f, const std::map<int, mpq_class>& point);
Poly substitute(const Poly& f, const std::map<int, Poly>& sub);

// per-arrow degree counts of a monomial/polynomial; throws input_error
// if f mixes multidegrees or involves parameters
Multidegree poly_mdeg(const SymCtx& ctx, const Poly& f);
// part of f whose degree in each of the two arrows' variables is exactly 1
Poly extract_bidegree11(const SymCtx& ctx, const Poly& f,
                        const std::string& arrow1, const std::string& arrow2);

// terms printed in descending monomial order: "coef * x[a][i][j]^e * ..."
std::string format_poly(const SymCtx& ctx, const Poly& f);

struct GenericMatrix {
    Poly e[2][2];

    static GenericMatrix identity(FieldSpec fs);
    Poly trace() const;
    Poly det() const;
    GenericMatrix star() const;  // adjugate [[e22,-e12],[-e21,e11]]
    friend GenericMatrix operator*(const GenericMatrix& a, const GenericMatrix& b);
    friend GenericMatrix operator+(const GenericMatrix& a, const GenericMatrix& b);
};

GenericMatrix generic_matrix(SymCtx& ctx, FieldSpec fs, const std::string& arrow);
GenericMatrix letter_matrix(SymCtx& ctx, FieldSpec fs, const ArrowRef& r);
// product over the letters; empty word gives the identity
GenericMatrix path_matrix(SymCtx& ctx, FieldSpec fs, const PathWord& w, int letter_cap = 12);
// sigma(1, w) = trace, sigma(2, w) = det of the path matrix; w must be closed
Poly sigma(SymCtx& ctx, FieldSpec fs, int t, const PathWord& w, int letter_cap = 12);
Poly det_poly(SymCtx& ctx, FieldSpec fs, const std::string& arrow);

enum class ActionKind { upper, lower };

// substitute the one-parameter elementary move at a vertex into f;
// the parameter name must not already occur in f
Poly elementary_action(SymCtx& ctx, const Poly& f, const std::string& vertex,
                       ActionKind kind, const std::string& param);
// f is fixed by every elementary move at every vertex
bool check_semi_invariance(SymCtx& ctx, const Poly& f);

}  // namespace siq
