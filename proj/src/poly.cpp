#include "siq/poly.hpp"

#include <algorithm>
#include <sstream>

namespace siq {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime_field(unsigned p) {
    if (!is_prime(p)) throw input_error("characteristic must be 0 or a prime, got " + std::to_string(p));
    return FieldSpec{p};
}

mpq_class field_normalize(const FieldSpec& fs, const mpq_class& c) {
    if (fs.ch == 0) return c;
    mpz_class p(fs.ch);
    mpz_class den = c.get_den();
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw input_error("denominator not invertible mod " + std::to_string(fs.ch));
    mpz_class r = (c.get_num() * deninv) % p;
    if (r < 0) r += p;
    return mpq_class(r);
}

mpq_class field_inverse(const FieldSpec& fs, const mpq_class& c) {
    if (c == 0) throw input_error("division by zero");
    if (fs.ch == 0) return 1 / c;
    mpq_class r = field_normalize(fs, c);
    mpz_class p(fs.ch), inv;
    mpz_class num = r.get_num();
    if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        throw input_error("division by zero mod " + std::to_string(fs.ch));
    return field_normalize(fs, mpq_class(inv));
}

SymCtx::SymCtx(const Quiver& quiver) : q(&quiver) {
    arrow_of_rank = quiver.arrows_by_name();
    rank_of_arrow.assign(quiver.arrows.size(), -1);
    for (size_t r = 0; r < arrow_of_rank.size(); ++r) rank_of_arrow[arrow_of_rank[r]] = int(r);
}

int SymCtx::xvar(int arrow_idx, int i, int j) const {
    if (arrow_idx < 0 || arrow_idx >= int(rank_of_arrow.size()) || i < 1 || i > 2 || j < 1 || j > 2)
        throw std::logic_error("bad matrix variable request");
    return rank_of_arrow[arrow_idx] * 4 + (i - 1) * 2 + (j - 1);
}

int SymCtx::xvar(const std::string& arrow, int i, int j) const {
    int idx = q->arrow_id(arrow);
    if (idx < 0) throw input_error("unknown arrow: " + arrow);
    return xvar(idx, i, j);
}

int SymCtx::pvar(const std::string& name) {
    int found = find_pvar(name);
    if (found >= 0) return found;
    params.push_back(name);
    return nxvars() + int(params.size()) - 1;
}

int SymCtx::find_pvar(const std::string& name) const {
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i] == name) return nxvars() + int(i);
    return -1;
}

std::string SymCtx::var_name(int v) const {
    if (v < 0) throw std::logic_error("bad variable id");
    if (v < nxvars()) {
        int rank = v / 4, rem = v % 4;
        const Arrow& a = q->arrows[arrow_of_rank[rank]];
        return "x[" + a.name + "][" + std::to_string(rem / 2 + 1) + "][" +
               std::to_string(rem % 2 + 1) + "]";
    }
    size_t p = size_t(v - nxvars());
    if (p >= params.size()) throw std::logic_error("bad variable id");
    return params[p];
}

int SymCtx::var_arrow(int v) const {
    if (v < 0) throw std::logic_error("bad variable id");
    if (v >= nxvars()) return -1;
    return arrow_of_rank[v / 4];
}

int mono_degree(const Mono& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (a[i].first > b[j].first) out.push_back(b[j++]);
        else {
            out.push_back({a[i].first, a[i].second + b[j].second});
            ++i, ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) return false;  // a nonzero at an earlier var -> a greater
        if (a[i].first > b[j].first) return true;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i, ++j;
    }
    return i == a.size() && j < b.size();
}

Poly Poly::constant(FieldSpec fs, const mpq_class& c) {
    Poly f = zero(fs);
    f.add_term({}, c);
    return f;
}

Poly Poly::variable(FieldSpec fs, int var) {
    Poly f = zero(fs);
    f.add_term({{var, 1}}, 1);
    return f;
}

void Poly::add_term(const Mono& m, const mpq_class& c) {
    mpq_class v = field_normalize(fs, c);
    if (v == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, v);
        return;
    }
    it->second = field_normalize(fs, it->second + v);
    if (it->second == 0) terms.erase(it);
}

static void require_same_field(const Poly& a, const Poly& b) {
    if (!(a.fs == b.fs)) throw std::logic_error("mixed field specs in polynomial arithmetic");
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
}

Poly operator-(const Poly& a) {
    Poly out = Poly::zero(a.fs);
    for (const auto& [m, c] : a.terms) out.add_term(m, -c);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly out = Poly::zero(a.fs);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

Poly operator*(const mpq_class& c, const Poly& a) {
    Poly out = Poly::zero(a.fs);
    for (const auto& [m, cc] : a.terms) out.add_term(m, c * cc);
    return out;
}

Poly poly_pow(const Poly& a, int e) {
    if (e < 0) throw std::logic_error("negative power");
    Poly out = Poly::constant(a.fs, 1);
    for (int i = 0; i < e; ++i) out = out * a;
    return out;
}

mpq_class evaluate_at_point(const Poly& f, const std::map<int, mpq_class>& point) {
    mpq_class total = 0;
    for (const auto& [m, c] : f.terms) {
        mpq_class t = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end())
                throw input_error("evaluation point misses variable #" + std::to_string(v));
            for (int k = 0; k < e; ++k) t *= it->second;
        }
        total += t;
    }
    return field_normalize(f.fs, total);
}

Poly substitute(const Poly& f, const std::map<int, Poly>& sub) {
    Poly out = Poly::zero(f.fs);
    for (const auto& [m, c] : f.terms) {
        Poly t = Poly::constant(f.fs, c);
        for (const auto& [v, e] : m) {
            auto it = sub.find(v);
            if (it != sub.end()) t = t * poly_pow(it->second, e);
            else t = t * poly_pow(Poly::variable(f.fs, v), e);
        }
        out = out + t;
    }
    return out;
}

Multidegree poly_mdeg(const SymCtx& ctx, const Poly& f) {
    if (f.is_zero()) throw input_error("multidegree of the zero polynomial is undefined");
    bool first = true;
    Multidegree d;
    for (const auto& [m, c] : f.terms) {
        Multidegree cur;
        for (const auto& [v, e] : m) {
            int a = ctx.var_arrow(v);
            if (a < 0) throw input_error("multidegree undefined: polynomial involves parameters");
            cur[ctx.q->arrows[a].name] += e;
        }
        if (first) {
            d = cur;
            first = false;
        } else if (cur != d) {
            throw input_error("polynomial is not multihomogeneous");
        }
    }
    return d;
}

Poly extract_bidegree11(const SymCtx& ctx, const Poly& f,
                        const std::string& arrow1, const std::string& arrow2) {
    int a1 = ctx.q->arrow_id(arrow1), a2 = ctx.q->arrow_id(arrow2);
    if (a1 < 0) throw input_error("unknown arrow: " + arrow1);
    if (a2 < 0) throw input_error("unknown arrow: " + arrow2);
    Poly out = Poly::zero(f.fs);
    for (const auto& [m, c] : f.terms) {
        int d1 = 0, d2 = 0;
        for (const auto& [v, e] : m) {
            int a = ctx.var_arrow(v);
            if (a == a1) d1 += e;
            if (a == a2) d2 += e;
        }
        if (d1 == 1 && d2 == 1) out.add_term(m, c);
    }
    return out;
}

std::string format_poly(const SymCtx& ctx, const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        out << it->second.get_str();
        for (const auto& [v, e] : it->first) out << " * " << ctx.var_name(v) << "^" << e;
    }
    return out.str();
}

GenericMatrix GenericMatrix::identity(FieldSpec fs) {
    GenericMatrix m{{{Poly::constant(fs, 1), Poly::zero(fs)},
                     {Poly::zero(fs), Poly::constant(fs, 1)}}};
    return m;
}

Poly GenericMatrix::trace() const { return e[0][0] + e[1][1]; }

Poly GenericMatrix::det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

GenericMatrix GenericMatrix::star() const {
    return GenericMatrix{{{e[1][1], -e[0][1]}, {-e[1][0], e[0][0]}}};
}

GenericMatrix operator*(const GenericMatrix& a, const GenericMatrix& b) {
    GenericMatrix out{{{Poly::zero(a.e[0][0].fs), Poly::zero(a.e[0][0].fs)},
                       {Poly::zero(a.e[0][0].fs), Poly::zero(a.e[0][0].fs)}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out.e[i][j] = out.e[i][j] + a.e[i][k] * b.e[k][j];
    return out;
}

GenericMatrix operator+(const GenericMatrix& a, const GenericMatrix& b) {
    GenericMatrix out = a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.e[i][j] = a.e[i][j] + b.e[i][j];
    return out;
}

GenericMatrix generic_matrix(SymCtx& ctx, FieldSpec fs, const std::string& arrow) {
    GenericMatrix m{{{Poly::variable(fs, ctx.xvar(arrow, 1, 1)), Poly::variable(fs, ctx.xvar(arrow, 1, 2))},
                     {Poly::variable(fs, ctx.xvar(arrow, 2, 1)), Poly::variable(fs, ctx.xvar(arrow, 2, 2))}}};
    return m;
}

GenericMatrix letter_matrix(SymCtx& ctx, FieldSpec fs, const ArrowRef& r) {
    GenericMatrix m = generic_matrix(ctx, fs, r.base);
    return r.starred ? m.star() : m;
}

GenericMatrix path_matrix(SymCtx& ctx, FieldSpec fs, const PathWord& w, int letter_cap) {
    if (int(w.letters.size()) > letter_cap)
        throw input_error("word has " + std::to_string(w.letters.size()) +
                          " letters, expansion cap is " + std::to_string(letter_cap));
    if (path_kind(*ctx.q, w) == PathKind::not_a_path)
        throw input_error("not a composable path: " + format_path(w));
    GenericMatrix m = GenericMatrix::identity(fs);
    for (const auto& r : w.letters) m = m * letter_matrix(ctx, fs, r);
    return m;
}

Poly sigma(SymCtx& ctx, FieldSpec fs, int t, const PathWord& w, int letter_cap) {
    if (t != 1 && t != 2) throw input_error("sigma index must be 1 or 2");
    PathKind k = path_kind(*ctx.q, w);
    if (k != PathKind::closed_path && k != PathKind::empty_path)
        throw input_error("sigma needs a closed word, got: " + format_path(w));
    GenericMatrix m = path_matrix(ctx, fs, w, letter_cap);
    return t == 1 ? m.trace() : m.det();
}

Poly det_poly(SymCtx& ctx, FieldSpec fs, const std::string& arrow) {
    return generic_matrix(ctx, fs, arrow).det();
}

Poly elementary_action(SymCtx& ctx, const Poly& f, const std::string& vertex,
                       ActionKind kind, const std::string& param) {
    const Quiver& q = *ctx.q;
    if (q.vertex_id(vertex) < 0) throw input_error("unknown vertex: " + vertex);
    int existing = ctx.find_pvar(param);
    if (existing >= 0) {
        for (const auto& [m, c] : f.terms)
            for (const auto& [v, e] : m)
                if (v == existing)
                    throw input_error("parameter " + param + " already occurs in the polynomial");
    }
    FieldSpec fs = f.fs;
    Poly t = Poly::variable(fs, ctx.pvar(param));
    Poly one = Poly::constant(fs, 1), zero = Poly::zero(fs);
    GenericMatrix g, ginv;
    if (kind == ActionKind::upper) {
        g = GenericMatrix{{{one, t}, {zero, one}}};
        ginv = GenericMatrix{{{one, -t}, {zero, one}}};
    } else {
        g = GenericMatrix{{{one, zero}, {t, one}}};
        ginv = GenericMatrix{{{one, zero}, {-t, one}}};
    }
    std::map<int, Poly> sub;
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const Arrow& a = q.arrows[ai];
        bool at_head = a.head == vertex, at_tail = a.tail == vertex;
        if (!at_head && !at_tail) continue;
        GenericMatrix m = generic_matrix(ctx, fs, a.name);
        if (at_head) m = ginv * m;
        if (at_tail) m = m * g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sub[ctx.xvar(int(ai), i + 1, j + 1)] = m.e[i][j];
    }
    return substitute(f, sub);
}

bool check_semi_invariance(SymCtx& ctx, const Poly& f) {
    for (const auto& v : ctx.q->vertices) {
        for (ActionKind kind : {ActionKind::upper, ActionKind::lower}) {
            Poly moved = elementary_action(ctx, f, v, kind, "@t");
            if (!(moved == f)) return false;
        }
    }
    return true;
}

}  // namespace siq
