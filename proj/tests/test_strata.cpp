#include "doctest.h"
#include "test_support.hpp"

#include "weylkit/restriction.hpp"

using namespace weylkit;
using wk_test::same_ideal;

namespace {

WeylElement O(const WeylCtxPtr& ctx, const std::string& s) { return parse_operator(ctx, s); }

ParamPoly B(const ParamCtxPtr& params, const std::string& s) {
    return parse_parampoly(bfun_ctx(params), s);
}

}  // namespace

TEST_CASE("cgs on a parameter-free ideal is an ordinary basis") {
    auto ctx = make_weyl_ctx(make_ctx({}), {"x"});
    auto res = cgs_lite({O(ctx, "dx^2"), O(ctx, "x*dx")}, TermOrder::canonical(),
                        Stratum::full(ctx->params));
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].first.E.empty());
    CHECK(res.cells[0].first.N.empty());
}

TEST_CASE("cgs splits on the vanishing of a leading coefficient") {
    auto ctx = make_weyl_ctx(make_ctx({"a", "b"}), {"x", "y"});
    auto res = cgs_lite({O(ctx, "a*x*dx + b*y*dy"), O(ctx, "x*dx + y*dy")},
                        TermOrder::canonical(), Stratum::full(ctx->params));
    REQUIRE(res.cells.size() == 2);
    // generic: a - b != 0 with basis {x dx, y dy}
    const auto& [gen_st, gen_gb] = res.cells[0];
    CHECK(gen_st.E.empty());
    REQUIRE(gen_st.N.size() == 1);
    CHECK(gen_st.N[0] == parse_parampoly(ctx->params, "a-b"));
    CHECK(same_ideal(gen_gb.ideal_gens(), {O(ctx, "x*dx"), O(ctx, "y*dy")}));
    // a = b: basis {x dx + y dy}
    const auto& [eq_st, eq_gb] = res.cells[1];
    REQUIRE(eq_st.E.size() == 1);
    CHECK(eq_st.E[0] == parse_parampoly(ctx->params, "a-b"));
    REQUIRE(eq_gb.gens.size() == 1);
    CHECK(eq_gb.gens[0][0] == O(ctx, "x*dx + y*dy"));
}

TEST_CASE("parametric initial ideals of the Appell systems") {
    auto f1 = fixture("f1");
    auto res = parametric_initial_ideal(f1.ideal.gens, {1, 1}, Stratum::full(f1.ctx->params));
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].first.E.empty());
    std::vector<WeylElement> printed = {
        O(f1.ctx, "(x-y)*dx*dy + b*dy - b'*dx"),
        O(f1.ctx, "-y*dx*dy - y*dy^2 - b'*dx + (b-c)*dy"),
        O(f1.ctx, "-x*dx^2 + y*dy^2 + (b'-c)*dx + (-b+c)*dy"),
        O(f1.ctx, "(-x*y+y^2)*dy^2 - b'*x*dx + (b-c)*x*dy + c*y*dy"),
    };
    CHECK(same_ideal(res.cells[0].second, printed));

    auto f2 = fixture("f2");
    auto res2 = parametric_initial_ideal(f2.ideal.gens, {1, 1}, Stratum::full(f2.ctx->params));
    REQUIRE(res2.cells.size() == 1);
    // the two short documented generators are reproduced exactly
    GroebnerBasis mine2 = membership_basis(res2.cells[0].second);
    CHECK(reduces_to_zero(O(f2.ctx, "y*dy^2 + c'*dy"), mine2));
    CHECK(reduces_to_zero(O(f2.ctx, "x*dx^2 + c*dx"), mine2));
    // the third generator found by the engine, verified independently in
    // the brute-force test below
    WeylElement third = O(f2.ctx,
                          "x^2*y*dx^3*dy - x^2*y*dx^2*dy^2 + x*y^2*dx^2*dy^2 - x*y^2*dx*dy^3 + "
                          "c'*(c+c'+1)*x*dx*dy - c*(c+c'+1)*y*dx*dy");
    CHECK(reduces_to_zero(third, mine2));
    CHECK(same_ideal(res2.cells[0].second,
                     {O(f2.ctx, "y*dy^2 + c'*dy"), O(f2.ctx, "x*dx^2 + c*dx"), third}));

    // a single (-w,w)-homogeneous operator is its own initial form
    auto gctx = make_weyl_ctx(make_ctx({"c"}), {"x"});
    auto res3 = parametric_initial_ideal({O(gctx, "x*dx^2 + c*dx")}, {1},
                                         Stratum::full(gctx->params));
    REQUIRE(res3.cells.size() == 1);
    REQUIRE(res3.cells[0].second.size() == 1);
    CHECK(wk_test::equal_up_to_sign(res3.cells[0].second[0], O(gctx, "x*dx^2 + c*dx")));
}

namespace {

// Engine-independent oracle: is `target` the initial form of some element
// q1 L1 + q2 L2 with deg(q_i) <= D, at specialized parameters? Solved as a
// dense rational linear system.
bool initial_form_representable(const WeylCtxPtr& ctx, const std::vector<WeylElement>& gens,
                                const WeylElement& target, int D) {
    std::vector<WeylMono> qmonos;
    for (int dx = 0; dx <= D; ++dx)
        for (int dy = 0; dy + dx <= D; ++dy)
            for (int ex = 0; ex + dx + dy <= D; ++ex)
                for (int ey = 0; ey + ex + dx + dy <= D; ++ey) {
                    WeylMono m;
                    m.xe = {dx, dy};
                    m.de = {ex, ey};
                    qmonos.push_back(m);
                }
    std::map<WeylMono, std::map<std::size_t, Rat>, CanonicalMonoLess> rows;
    std::size_t col = 0;
    for (const auto& g : gens) {
        for (const auto& qm : qmonos) {
            WeylElement prod =
                WeylElement::monomial(ctx, qm, ParamScalar::constant(ctx->params, 1)) * g;
            for (const auto& [m, c] : prod.terms()) {
                long wdeg = (m.de[0] - m.xe[0]) + (m.de[1] - m.xe[1]);
                if (wdeg < 1) continue;  // weight <= 0 terms are unconstrained
                rows[m][col] = c.as_polynomial().constant_value();
            }
            ++col;
        }
    }
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> rhs;
    std::map<WeylMono, Rat, CanonicalMonoLess> want;
    for (const auto& [m, c] : target.terms()) want[m] = c.as_polynomial().constant_value();
    for (auto& [m, entries] : rows) {
        std::vector<Rat> row(col, Rat(0));
        for (auto& [ci, v] : entries) row[ci] = v;
        A.push_back(std::move(row));
        auto it = want.find(m);
        rhs.push_back(it == want.end() ? Rat(0) : it->second);
        if (it != want.end()) want.erase(it);
    }
    for (auto& [m, v] : want)
        if (v != 0) return false;
    std::size_t rank = 0;
    for (std::size_t c2 = 0; c2 < col && rank < A.size(); ++c2) {
        std::size_t piv = A.size();
        for (std::size_t r = rank; r < A.size(); ++r)
            if (A[r][c2] != 0) {
                piv = r;
                break;
            }
        if (piv == A.size()) continue;
        std::swap(A[rank], A[piv]);
        std::swap(rhs[rank], rhs[piv]);
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == rank || A[r][c2] == 0) continue;
            Rat f = A[r][c2] / A[rank][c2];
            for (std::size_t cc = 0; cc < col; ++cc) A[r][cc] -= f * A[rank][cc];
            rhs[r] -= f * rhs[rank];
        }
        ++rank;
    }
    for (std::size_t r = rank; r < A.size(); ++r)
        if (rhs[r] != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("F2 third initial generator certified by brute force") {
    auto f2 = fixture("f2");
    std::map<std::size_t, Rat> asn{{0, Rat(2)}, {1, Rat(3)}, {2, Rat(5)}, {3, Rat(7)}, {4, Rat(11)}};
    std::vector<WeylElement> spec;
    for (const auto& g : f2.ideal.gens) spec.push_back(g.specialize(asn));
    WeylElement third = O(f2.ctx,
                          "x^2*y*dx^3*dy - x^2*y*dx^2*dy^2 + x*y^2*dx^2*dy^2 - x*y^2*dx*dy^3 + "
                          "c'*(c+c'+1)*x*dx*dy - c*(c+c'+1)*y*dx*dy")
                           .specialize(asn);
    CHECK(initial_form_representable(f2.ctx, spec, third, 4));
    // the degree-4 element printed in the source example is not an initial
    // form of the ideal (its b-function table is, however, reproduced)
    WeylElement printed = O(f2.ctx,
                            "-x^2*y*dx^3*dy + x*y*(x-y)*dx^2*dy^2 + x*y^2*dx*dy^3 - b'*x^2*dx^3 + "
                            "(c'*x - (a+b'+c+3)*y)*x*dx^2*dy + ((a+b+c'+3)*x - c*y)*x*dx*dy^2 + "
                            "b*y^2*dy^3 - (a+c+2)*b'*x*dx^2 + ((a+b+2)*c'*x - (a+b'+2)*c*y)*dx*dy + "
                            "(a+c'+2)*b*y*dy^2 - (a+1)*b'*c*dx + (a+1)*b*c'*dy")
                             .specialize(asn);
    CHECK_FALSE(initial_form_representable(f2.ctx, spec, printed, 5));
}

TEST_CASE("Gauss generic b-function") {
    auto g = fixture("gauss");
    auto res = generic_bfunction(g.ideal.gens, {1}, Stratum::full(g.ctx->params));
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].first.E.empty());
    CHECK(res.cells[0].first.N.empty());
    CHECK(res.cells[0].second == B(g.ctx->params, "s*(s+c-1)"));
}

TEST_CASE("trivial b-function examples") {
    auto ctx = make_weyl_ctx(make_ctx({"a"}), {"x"});
    auto res = generic_bfunction({O(ctx, "theta_x")}, {1}, Stratum::full(ctx->params));
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].second == B(ctx->params, "s"));

    auto f = fixture("1f1");
    auto r1f1 = generic_bfunction(f.ideal.gens, {1}, Stratum::full(f.ctx->params));
    REQUIRE(r1f1.cells.size() == 1);
    CHECK(r1f1.cells[0].second == B(f.ctx->params, "s*(s+c-1)"));
}

TEST_CASE("Appell F1 b-function has a single stratum") {
    auto f1 = fixture("f1");
    auto res = generic_bfunction(f1.ideal.gens, {1, 1}, Stratum::full(f1.ctx->params));
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].first.E.empty());
    CHECK(res.cells[0].first.N.empty());
    CHECK(res.cells[0].second == B(f1.ctx->params, "s*(s+c-1)"));
}

TEST_CASE("Appell F2 b-function strata match the documented table") {
    auto f2 = fixture("f2");
    const auto& P = f2.ctx->params;
    auto res = generic_bfunction(f2.ideal.gens, {1, 1}, Stratum::full(P));
    REQUIRE(res.cells.size() == 3);

    // generic stratum: the full space minus V((c-c')(c+c'-2))
    const auto& [st0, b0] = res.cells[0];
    CHECK(st0.E.empty());
    REQUIRE(st0.N.size() == 1);
    CHECK(st0.N[0] == parse_parampoly(P, "(c-c')*(c+c'-2)"));
    CHECK(b0 == B(P, "s*(s+c-1)*(s+c'-1)*(s+c+c'-2)"));

    bool saw_cc = false, saw_cc2 = false;
    for (std::size_t i = 1; i < res.cells.size(); ++i) {
        const auto& [st, b] = res.cells[i];
        REQUIRE(st.E.size() == 1);
        if (st.E[0] == parse_parampoly(P, "c-c'")) {
            saw_cc = true;
            CHECK(st.N.empty());
            // on c = c' the engine substitutes c := c'
            CHECK(b == B(P, "s*(s+c'-1)*(s+2*c'-2)"));
        } else {
            saw_cc2 = true;
            CHECK(st.E[0] == parse_parampoly(P, "c+c'-2"));
            REQUIRE(st.N.size() == 1);
            CHECK(st.N[0] == parse_parampoly(P, "c-c'"));
            // with c := 2-c' the printed b = s(s-c'+1)(s+c'-1)
            CHECK(b == B(P, "s*(s-c'+1)*(s+c'-1)"));
        }
    }
    CHECK(saw_cc);
    CHECK(saw_cc2);
}

TEST_CASE("stratified b-functions agree with specialized recomputation") {
    auto f2 = fixture("f2");
    const auto& P = f2.ctx->params;
    auto res = generic_bfunction(f2.ideal.gens, {1, 1}, Stratum::full(P));
    std::mt19937 rng(2718);
    for (const auto& [st, b] : res.cells) {
        for (const auto& pt : st.sample(3, rng)) {
            std::map<std::size_t, Rat> asn;
            for (std::size_t i = 0; i < pt.size(); ++i) asn[i] = pt[i];
            std::vector<WeylElement> spec;
            for (const auto& g : f2.ideal.gens) spec.push_back(g.specialize(asn));
            auto direct = generic_bfunction(spec, {1, 1}, Stratum::full(P));
            REQUIRE(direct.cells.size() == 1);
            // the specialized symbolic b, normalized, must match exactly
            std::map<std::size_t, Rat> asn_b = asn;  // same indices; s is last and unassigned
            CHECK(direct.cells[0].second == b.specialize(asn_b).primitive_part());
        }
    }
}

TEST_CASE("strata are disjoint and cover, by integer sampling") {
    auto f2 = fixture("f2");
    auto res = generic_bfunction(f2.ideal.gens, {1, 1}, Stratum::full(f2.ctx->params));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> v(-6, 6);
    for (int t = 0; t < 300; ++t) {
        std::vector<Rat> pt;
        for (std::size_t i = 0; i < f2.ctx->params->size(); ++i) pt.push_back(Rat(v(rng)));
        int hits = 0;
        for (const auto& [st, b] : res.cells) hits += st.contains(pt) ? 1 : 0;
        CHECK(hits == 1);
    }
}

TEST_CASE("root analysis of documented b-functions") {
    auto P = make_ctx({"a", "b", "c"});
    RootAnalysis ra = analyze_roots(B(P, "s*(s+c-1)"), P);
    REQUIRE(ra.roots.size() == 2);
    CHECK(ra.max_const_root == 0);
    bool has_zero = false, has_expr = false;
    for (const auto& r : ra.roots) {
        if (r.is_constant && r.value == 0) has_zero = true;
        if (!r.is_constant) {
            has_expr = true;
            CHECK(r.expr == parse_parampoly(P, "1-c"));
        }
    }
    CHECK(has_zero);
    CHECK(has_expr);
    RootClassification rc = classify_roots(ra);
    CHECK(rc.type_a_possible);
    CHECK_FALSE(rc.type_b_possible);
    REQUIRE(rc.type_a_conditions.size() == 1);
    // c not in Z_{<=0}: fails at c = 0, holds at c = 1/2 and c = 3
    CHECK_FALSE(rc.type_a_conditions[0].eval({Rat(0), Rat(0), Rat(0)}));
    CHECK(rc.type_a_conditions[0].eval({Rat(0), Rat(0), Rat(1, 2)}));
    CHECK(rc.type_a_conditions[0].eval({Rat(0), Rat(0), Rat(3)}));

    RootAnalysis rb = analyze_roots(B(P, "s"), P);
    CHECK(rb.max_const_root == 0);
    CHECK(classify_roots(rb).type_a_possible);
    CHECK(classify_roots(rb).type_a_conditions.empty());

    auto P2 = make_ctx({"c'"});
    RootAnalysis r3 = analyze_roots(B(P2, "s*(s-c'+1)*(s+c'-1)"), P2);
    REQUIRE(r3.roots.size() == 3);
    std::vector<std::string> exprs;
    for (const auto& r : r3.roots) exprs.push_back(r.expr.str());
    std::sort(exprs.begin(), exprs.end());
    CHECK(exprs == std::vector<std::string>{"-c' + 1", "0", "c' - 1"});

    CHECK_THROWS_AS(analyze_roots(B(P, "s^2 + c"), P), UnsupportedError);
}

TEST_CASE("parametric rank stratifies pivots") {
    auto P = make_ctx({"a", "b", "c'"});
    auto p = [&](const std::string& s) { return parse_parampoly(P, s); };
    // rows (0 0 -ab), (0 c' -ab')-style
    std::vector<std::vector<ParamPoly>> mat{{p("0"), p("0"), p("-a*b")},
                                            {p("0"), p("c'"), p("-a*b")}};
    auto res = parametric_rank(mat, P, Stratum::full(P));
    std::mt19937 rng(11);
    int checked = 0;
    for (const auto& [st, rk] : res.cells) {
        for (const auto& pt : st.sample(2, rng)) {
            Rat ab = pt[0] * pt[1], cp = pt[2];
            int expect;
            if (ab != 0)
                expect = cp != 0 ? 2 : (ab != 0 ? 2 : 1);
            else
                expect = cp != 0 ? 1 : 0;
            if (ab != 0 && cp == 0) expect = 1;  // rows become dependent
            CHECK(rk == expect);
            ++checked;
        }
    }
    CHECK(checked >= 4);
}
