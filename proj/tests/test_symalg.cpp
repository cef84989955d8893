#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siq/poly.hpp"

using namespace siq;

static Quiver two_loops() {
    return validate_quiver({"u"}, {{"a", "u", "u"}, {"b", "u", "u"}});
}

TEST_CASE("field arithmetic") {
    CHECK(is_prime(2));
    CHECK(is_prime(7));
    CHECK(!is_prime(1));
    CHECK(!is_prime(9));
    CHECK_THROWS_AS(FieldSpec::prime_field(6), input_error);

    FieldSpec q = FieldSpec::rationals();
    CHECK(field_normalize(q, mpq_class(-3, 2)) == mpq_class(-3, 2));
    CHECK(field_inverse(q, mpq_class(-3, 2)) == mpq_class(-2, 3));

    FieldSpec f2 = FieldSpec::prime_field(2);
    CHECK(field_normalize(f2, mpq_class(-1)) == 1);
    CHECK(field_normalize(f2, mpq_class(4)) == 0);
    CHECK(field_normalize(f2, mpq_class(1, 3)) == 1);  // 3 is invertible mod 2
    CHECK(field_inverse(f2, mpq_class(3)) == 1);

    FieldSpec f5 = FieldSpec::prime_field(5);
    CHECK(field_normalize(f5, mpq_class(7)) == 2);
    CHECK(field_normalize(f5, mpq_class(1, 2)) == 3);  // 2 * 3 = 6 = 1 mod 5
}

TEST_CASE("variable registry layout") {
    Quiver q = validate_quiver({"u"}, {{"b", "u", "u"}, {"a", "u", "u"}});
    SymCtx ctx(q);
    CHECK(ctx.nxvars() == 8);
    // name rank decides the block, not declaration order
    CHECK(ctx.xvar("a", 1, 1) == 0);
    CHECK(ctx.xvar("a", 2, 2) == 3);
    CHECK(ctx.xvar("b", 1, 1) == 4);
    CHECK(ctx.var_name(ctx.xvar("b", 1, 2)) == "x[b][1][2]");
    CHECK(ctx.var_arrow(ctx.xvar("b", 1, 2)) == q.arrow_id("b"));
    CHECK_THROWS_AS(ctx.xvar("c", 1, 1), input_error);

    int t = ctx.pvar("t");
    CHECK(ctx.find_pvar("t") == t);
    CHECK(ctx.pvar("t") == t);
    CHECK(ctx.find_pvar("s") == -1);
    CHECK(ctx.var_arrow(t) == -1);
    CHECK(ctx.var_name(t) == "t");
}

TEST_CASE("polynomial arithmetic stays normalized") {
    FieldSpec f2 = FieldSpec::prime_field(2);
    Poly x = Poly::variable(f2, 0);
    Poly sum = x + x;  // 2x = 0
    CHECK(sum.is_zero());
    CHECK((x * x + x * x).is_zero());
    CHECK(-x == x);

    FieldSpec q = FieldSpec::rationals();
    Poly y = Poly::variable(q, 1);
    Poly p = (Poly::variable(q, 0) + y) * (Poly::variable(q, 0) - y);
    Poly expect = Poly::variable(q, 0) * Poly::variable(q, 0) - y * y;
    CHECK(p == expect);
    CHECK(poly_pow(y, 3) == y * y * y);
    CHECK(poly_pow(y, 0) == Poly::constant(q, 1));
    CHECK((mpq_class(0) * y).is_zero());
}

TEST_CASE("monomial order is graded") {
    MonoLess less;
    Mono one{};            // 1
    Mono x0{{0, 1}};       // x0
    Mono x1{{1, 1}};       // x1
    Mono x0sq{{0, 2}};     // x0^2
    CHECK(less(one, x0));
    CHECK(less(x1, x0sq));  // degree beats everything
    CHECK(mono_degree(x0sq) == 2);
    CHECK(mono_mul(x0, x1) == Mono{{0, 1}, {1, 1}});
    CHECK(mono_mul(x0, x0) == x0sq);
}

TEST_CASE("determinant polynomial and formatting") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    Poly d = det_poly(ctx, FieldSpec::rationals(), "a");
    CHECK(format_poly(ctx, d) ==
          "1 * x[a][1][1]^1 * x[a][2][2]^1 + -1 * x[a][1][2]^1 * x[a][2][1]^1");
    CHECK(format_poly(ctx, Poly::zero(FieldSpec::rationals())) == "0");

    // char 2 folds the sign
    SymCtx ctx2(q);
    Poly d2 = det_poly(ctx2, FieldSpec::prime_field(2), "a");
    CHECK(format_poly(ctx2, d2) ==
          "1 * x[a][1][1]^1 * x[a][2][2]^1 + 1 * x[a][1][2]^1 * x[a][2][1]^1");
    CHECK_THROWS_AS(det_poly(ctx, FieldSpec::rationals(), "zzz"), input_error);
}

TEST_CASE("adjugate law M * star(M) = det(M) * E") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    for (FieldSpec fs : {FieldSpec::rationals(), FieldSpec::prime_field(2)}) {
        GenericMatrix m = generic_matrix(ctx, fs, "a");
        GenericMatrix prod = m * m.star();
        Poly det = m.det();
        CHECK(prod.e[0][0] == det);
        CHECK(prod.e[1][1] == det);
        CHECK(prod.e[0][1].is_zero());
        CHECK(prod.e[1][0].is_zero());
        // and the other order
        GenericMatrix prod2 = m.star() * m;
        CHECK(prod2.e[0][0] == det);
        CHECK(prod2.e[0][1].is_zero());
    }
}

TEST_CASE("path matrices multiply letter by letter") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();
    GenericMatrix ma = letter_matrix(ctx, fs, {"a", false});
    GenericMatrix mb = letter_matrix(ctx, fs, {"b", false});
    GenericMatrix ab = path_matrix(ctx, fs, parse_path("a b"));
    GenericMatrix byhand = ma * mb;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(ab.e[i][j] == byhand.e[i][j]);

    GenericMatrix star = letter_matrix(ctx, fs, {"a", true});
    GenericMatrix adj = ma.star();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(star.e[i][j] == adj.e[i][j]);

    GenericMatrix id = path_matrix(ctx, fs, parse_path("1@u"));
    CHECK(id.e[0][0] == Poly::constant(fs, 1));
    CHECK(id.e[0][1].is_zero());
}

TEST_CASE("trace and determinant of words") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();

    Poly tr_ab = sigma(ctx, fs, 1, parse_path("a b"));
    CHECK(format_poly(ctx, tr_ab) ==
          "1 * x[a][1][1]^1 * x[b][1][1]^1 + 1 * x[a][1][2]^1 * x[b][2][1]^1 + "
          "1 * x[a][2][1]^1 * x[b][1][2]^1 + 1 * x[a][2][2]^1 * x[b][2][2]^1");

    // sigma is invariant under rotation and star
    CHECK(sigma(ctx, fs, 1, parse_path("b a")) == tr_ab);
    CHECK(sigma(ctx, fs, 1, star_path(parse_path("a b"))) == tr_ab);

    // det is multiplicative along the word
    Poly det_ab = sigma(ctx, fs, 2, parse_path("a b"));
    Poly da = det_poly(ctx, fs, "a");
    Poly db = det_poly(ctx, fs, "b");
    CHECK(det_ab == da * db);
    CHECK(sigma(ctx, fs, 2, parse_path("a a")) == da * da);
    // det of the star is the same det
    CHECK(sigma(ctx, fs, 2, parse_path("a*")) == da);

    CHECK_THROWS_AS(sigma(ctx, fs, 3, parse_path("a")), input_error);
    CHECK_THROWS_AS(sigma(ctx, fs, 1, PathWord{}), input_error);
}

TEST_CASE("sigma rejects open words and oversized words") {
    Quiver q = validate_quiver({"u", "v"}, {{"z", "u", "v"}});
    SymCtx ctx(q);
    CHECK_THROWS_AS(sigma(ctx, FieldSpec::rationals(), 1, parse_path("z")), input_error);

    Quiver loop = validate_quiver({"u"}, {{"a", "u", "u"}});
    SymCtx lctx(loop);
    PathWord heavy;
    for (int i = 0; i < 13; ++i) heavy.letters.push_back({"a", false});
    CHECK_THROWS_AS(sigma(lctx, FieldSpec::rationals(), 1, heavy), input_error);
    CHECK_NOTHROW(sigma(lctx, FieldSpec::rationals(), 1, heavy, 13));
}

TEST_CASE("multidegree of polynomials") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();
    Poly f = sigma(ctx, fs, 1, parse_path("a b a*"));
    CHECK(poly_mdeg(ctx, f) == Multidegree{{"a", 2}, {"b", 1}});
    Poly mixed = f + det_poly(ctx, fs, "a");
    CHECK_THROWS_AS(poly_mdeg(ctx, mixed), input_error);
}

TEST_CASE("bidegree-(1,1) slice") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();
    Poly tr_ab = sigma(ctx, fs, 1, parse_path("a b"));
    CHECK(extract_bidegree11(ctx, tr_ab, "a", "b") == tr_ab);
    // nothing in tr(a a b) is linear in a
    Poly tr_aab = sigma(ctx, fs, 1, parse_path("a a b"));
    CHECK(extract_bidegree11(ctx, tr_aab, "a", "b").is_zero());
    // cross terms of tr(a)tr(b) + tr(ab) survive, the rest is dropped
    Poly f = sigma(ctx, fs, 1, parse_path("a")) * sigma(ctx, fs, 1, parse_path("b")) +
             det_poly(ctx, fs, "a");
    CHECK(extract_bidegree11(ctx, f, "a", "b") ==
          sigma(ctx, fs, 1, parse_path("a")) * sigma(ctx, fs, 1, parse_path("b")));
}

TEST_CASE("evaluation and substitution") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();
    Poly d = det_poly(ctx, fs, "a");
    // a = [[1,2],[3,4]] has det -2
    std::map<int, mpq_class> pt{{ctx.xvar("a", 1, 1), 1},
                                {ctx.xvar("a", 1, 2), 2},
                                {ctx.xvar("a", 2, 1), 3},
                                {ctx.xvar("a", 2, 2), 4}};
    CHECK(evaluate_at_point(d, pt) == -2);
    std::map<int, mpq_class> partial{{ctx.xvar("a", 1, 1), 1}};
    CHECK_THROWS_AS(evaluate_at_point(d, partial), input_error);

    // substituting x11 -> x11 + t*x21 fixes the determinant
    int t = ctx.pvar("t");
    std::map<int, Poly> sub{
        {ctx.xvar("a", 1, 1),
         Poly::variable(fs, ctx.xvar("a", 1, 1)) +
             Poly::variable(fs, t) * Poly::variable(fs, ctx.xvar("a", 2, 1))},
        {ctx.xvar("a", 1, 2),
         Poly::variable(fs, ctx.xvar("a", 1, 2)) +
             Poly::variable(fs, t) * Poly::variable(fs, ctx.xvar("a", 2, 2))}};
    CHECK(substitute(d, sub) == d);
}

TEST_CASE("det and traces are fixed by the elementary moves") {
    Quiver q = two_loops();
    SymCtx ctx(q);
    FieldSpec fs = FieldSpec::rationals();
    CHECK(check_semi_invariance(ctx, det_poly(ctx, fs, "a")));
    CHECK(check_semi_invariance(ctx, sigma(ctx, fs, 1, parse_path("a b"))));
    CHECK(check_semi_invariance(ctx, sigma(ctx, fs, 1, parse_path("a b* a*"))));
    // a bare matrix entry is moved
    CHECK(!check_semi_invariance(ctx, Poly::variable(fs, ctx.xvar("a", 1, 1))));

    Poly d = det_poly(ctx, fs, "a");
    Poly moved = elementary_action(ctx, d, "u", ActionKind::upper, "t");
    CHECK(moved == d);
    Poly entry = Poly::variable(fs, ctx.xvar("a", 1, 2));
    CHECK(elementary_action(ctx, entry, "u", ActionKind::upper, "s") != entry);
    CHECK_THROWS_AS(elementary_action(ctx, entry, "nope", ActionKind::upper, "r"), input_error);
}

TEST_CASE("invariance holds across an actual arrow between two vertices") {
    Quiver q = validate_quiver({"u", "v"},
                               {{"x", "u", "u"}, {"y", "v", "v"}, {"z", "u", "v"}});
    SymCtx ctx(q);
    for (FieldSpec fs : {FieldSpec::rationals(), FieldSpec::prime_field(2)}) {
        CHECK(check_semi_invariance(ctx, sigma(ctx, fs, 1, parse_path("x z y z*"))));
        CHECK(check_semi_invariance(ctx, det_poly(ctx, fs, "z")));
        CHECK(!check_semi_invariance(
            ctx, Poly::variable(fs, ctx.xvar("z", 1, 1))));
    }
}
