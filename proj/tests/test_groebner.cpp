#include "doctest.h"
#include "test_support.hpp"

using namespace weylkit;
using wk_test::equal_up_to_sign;
using wk_test::same_ideal;

namespace {

WeylElement O(const WeylCtxPtr& ctx, const std::string& s) { return parse_operator(ctx, s); }

}  // namespace

TEST_CASE("basic Groebner bases") {
    auto g = fixture("gauss");
    const auto& ctx = g.ctx;
    WeylElement L = g.ideal.gens[0];

    // {L} is already a (-1,1) basis
    GroebnerBasis gbw = buchberger_ideal({L}, TermOrder::weight({1}));
    REQUIRE(gbw.gens.size() == 1);
    CHECK(equal_up_to_sign(gbw.gens[0][0], L));

    GroebnerBasis triv = buchberger_ideal({O(ctx, "dx")}, TermOrder::canonical());
    REQUIRE(triv.gens.size() == 1);
    CHECK(triv.gens[0][0] == O(ctx, "dx"));

    CHECK(buchberger_ideal({}, TermOrder::canonical()).gens.empty());
}

TEST_CASE("every input generator reduces to zero against its basis") {
    for (const char* tag : {"gauss", "1f1", "f1", "f2"}) {
        auto s = fixture(tag);
        GroebnerBasis gb = membership_basis(s.ideal.gens);
        for (const auto& g : s.ideal.gens) CHECK(reduces_to_zero(g, gb));
        for (const auto& g : gb.gens) CHECK(normal_form(g[0], gb).is_zero());
    }
}

TEST_CASE("membership is order independent") {
    auto f1 = fixture("f1");
    GroebnerBasis a = buchberger_ideal(f1.ideal.gens, TermOrder::canonical());
    GroebnerBasis b = buchberger_ideal(f1.ideal.gens, TermOrder::block(2, {{0, 1}}));
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        WeylElement e = wk_test::random_weyl(rng, f1.ctx, 2, 2) * f1.ideal.gens[i % 3];
        CHECK(reduces_to_zero(e, a));
        CHECK(reduces_to_zero(e, b));
        WeylElement probe = wk_test::random_weyl(rng, f1.ctx, 1, 2);
        CHECK(reduces_to_zero(probe, a) == reduces_to_zero(probe, b));
    }
}

TEST_CASE("buchberger output is deterministic") {
    auto f1 = fixture("f1");
    GroebnerBasis a = membership_basis(f1.ideal.gens);
    GroebnerBasis b = membership_basis(f1.ideal.gens);
    REQUIRE(a.gens.size() == b.gens.size());
    for (std::size_t i = 0; i < a.gens.size(); ++i) CHECK(a.gens[i] == b.gens[i]);
}

TEST_CASE("normal forms of documented composites") {
    auto g = fixture("gauss");
    const auto& ctx = g.ctx;
    GroebnerBasis gb = membership_basis(g.ideal.gens);

    // B(c+1)*H(c) == (a-c)(b-c) mod L(a,b,c)
    WeylElement comp = O(ctx, "(theta_x + c) * ((1-x)*dx + c - a - b)");
    CHECK(normal_form(comp, gb) == O(ctx, "(a-c)*(b-c)"));

    CHECK(normal_form(g.ideal.gens[0], gb).is_zero());

    // composite reduction for the a=c family: c^2 (c-b)
    auto gac = fixture("gauss-ac");
    GroebnerBasis gb_ac = membership_basis(gac.ideal.gens);
    // B(c+1) evaluated from B(c) = (1-c)(x(x-1)dx + bx - c + 1)
    WeylElement comp_ac = O(gac.ctx, "(-c)*(x*(x-1)*dx + b*x - c) * ((x-1)*dx + c)");
    CHECK(normal_form(comp_ac, gb_ac) == O(gac.ctx, "c^2*(c-b)"));

    auto gbc = fixture("gauss-bc");
    GroebnerBasis gb_bc = membership_basis(gbc.ideal.gens);
    WeylElement comp_bc = O(gbc.ctx, "(-c)*(x*(x-1)*dx + a*x - c) * ((x-1)*dx + c)");
    CHECK(normal_form(comp_bc, gb_bc) == O(gbc.ctx, "-c^2*(a-c)"));

    auto gabc = fixture("gauss-abc");
    GroebnerBasis gb_abc = membership_basis(gabc.ideal.gens);
    WeylElement comp_abc = O(gabc.ctx, "(-c)*(x*(x-1)*dx + (2*c+1)*x - c) * dx");
    CHECK(normal_form(comp_abc, gb_abc) == O(gabc.ctx, "c^3"));
}

TEST_CASE("composite of the a and c steps reduces as documented") {
    // B_c(a,b,c+1) * B_a(a+1,b,c+1) reduced modulo L(a+1,b,c+1)
    auto g = fixture("gauss");
    const auto& ctx = g.ctx;
    WeylElement Bc = O(ctx, "theta_x + c");                              // B_c at (a,b,c+1)
    WeylElement Ba = O(ctx, "x*(1-x)*dx - b*x - a + c");                 // B_a at (a+1,b,c+1)
    ParametricIdeal I = g.ideal;
    GroebnerBasis tgt = membership_basis(I.shifted({1, 0, 1}));
    WeylElement red = normal_form(Bc * Ba, tgt);
    CHECK(equal_up_to_sign(red.normalized_primitive(),
                           O(ctx, "(a-c)*(x*(x-1)*dx + b*x - c)").normalized_primitive()));
    CHECK(red == O(ctx, "(a-c)*(x*(x-1)*dx + b*x - c)"));
}

TEST_CASE("syzygy inversion") {
    auto g = fixture("gauss");
    const auto& ctx = g.ctx;

    InverseWitness w = solve_inverse(O(ctx, "theta_x + a"), g.ideal.gens);
    ParamPoly expect_b = parse_parampoly(ctx->params, "a*(c-a-1)");
    WeylElement expect_inv = O(ctx, "x*(1-x)*dx - b*x - a + c - 1");
    bool direct = (w.cofactor == expect_b && w.inverse == expect_inv);
    bool negated = (w.cofactor == -expect_b && w.inverse == -expect_inv);
    CHECK((direct || negated));
    // the congruence certificate
    GroebnerBasis gb = membership_basis(g.ideal.gens);
    WeylElement check = w.inverse * O(ctx, "theta_x + a") -
                        WeylElement::scalar(ctx, ParamScalar(w.cofactor));
    CHECK(normal_form(check, gb).is_zero());

    InverseWitness triv = solve_inverse(O(ctx, "1"), g.ideal.gens);
    CHECK(triv.cofactor.is_constant());
    CHECK(triv.inverse.is_scalar());

    CHECK_THROWS_AS(solve_inverse(O(ctx, "dx"),
                                  {O(ctx, "dx*x*dx")}),
                    NotInvertibleError);
}

TEST_CASE("inversion of the rational-solution up-step") {
    // I(c) = <(dx - (x dx - c)) x dx>, H = x(1-x)/(c+1) dx + 1
    auto ctx = make_weyl_ctx(make_ctx({"c"}), {"x"});
    WeylElement ell = O(ctx, "(dx - (x*dx - c)) * x*dx");
    ParamScalar inv_c1(ParamPoly::constant(ctx->params, 1),
                       parse_parampoly(ctx->params, "c+1"));
    WeylElement H = O(ctx, "x*(1-x)*dx") * inv_c1 + O(ctx, "1");
    InverseWitness w = solve_inverse(H, {ell});
    // (-x dx + c + 1) H = (c+1) mod I(c), so B(c+1) = -x/(c+1) dx + 1
    WeylElement B = w.inverse * ParamScalar(w.cofactor).inverse();
    WeylElement expected = O(ctx, "-x*dx + c + 1") * inv_c1;
    CHECK(B == expected);
}

TEST_CASE("saito witness for the GKZ system") {
    auto s = gkz_fixture("gkz-gauss-beta");
    Expvec u{1, 0, 0, 0}, v{0, 1, 0, 0};
    SaitoWitness w = saito_E_b(s.ideal.gens, u, v);
    CHECK(w.b == parse_parampoly(s.ctx->params, "b1 + b3"));
    // certificate: E d1 - b d2 in the ideal
    GroebnerBasis gb = membership_basis(s.ideal.gens);
    WeylElement lhs = w.E * O(s.ctx, "dx1") -
                      WeylElement::scalar(s.ctx, ParamScalar(w.b)) * O(s.ctx, "dx2");
    CHECK(normal_form(lhs, gb).is_zero());
    // the form printed with dx4 satisfies the congruence; the dx3 variant is
    // checked for the record
    WeylElement e4 = O(s.ctx, "x1*dx2 + x3*dx4");
    WeylElement e3 = O(s.ctx, "x1*dx2 + x3*dx3");
    WeylElement rhs = O(s.ctx, "(b1+b3)*dx2");
    CHECK(normal_form(e4 * O(s.ctx, "dx1") - rhs, gb).is_zero());
    CHECK_FALSE(normal_form(e3 * O(s.ctx, "dx1") - rhs, gb).is_zero());

    // u = v = 0 degenerates to E = 1, b = 1
    SaitoWitness t = saito_E_b(s.ideal.gens, {0, 0, 0, 0}, {0, 0, 0, 0});
    CHECK(t.b.is_constant());
    CHECK(t.E.is_scalar());
}

TEST_CASE("saito witness for the degenerate parameters") {
    auto s = gkz_fixture("gkz-gauss-degenerate");
    SaitoWitness w = saito_E_b(s.ideal.gens, {1, 0, 0, 0}, {0, 0, 0, 0});
    CHECK(w.b == parse_parampoly(s.ctx->params, "b1*(b1+1)"));
    GroebnerBasis gb = membership_basis(s.ideal.gens);
    WeylElement lhs = w.E * O(s.ctx, "dx1") - WeylElement::scalar(s.ctx, ParamScalar(w.b));
    CHECK(normal_form(lhs, gb).is_zero());
    // the printed witness U also satisfies the congruence
    WeylElement U = O(s.ctx, "-(x1*x4 - x2*x3)*dx4 + (b1+1)*x1");
    CHECK(normal_form(U * O(s.ctx, "dx1") -
                          WeylElement::scalar(s.ctx, ParamScalar(w.b)),
                      gb)
              .is_zero());
}
