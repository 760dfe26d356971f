#pragma once

#include "weylkit/contiguity.hpp"
#include "weylkit/parser.hpp"

namespace weylkit {

// Built-in hypergeometric systems with their documented contiguity relations.
// Every seed relation is checked by verify_contiguity in the test suite.
struct HypergeometricSystem {
    std::string tag;
    WeylCtxPtr ctx;
    ParametricIdeal ideal;
    std::vector<ContiguityRelation> seeds;
};

struct GkzSystem {
    std::string tag;
    WeylCtxPtr ctx;
    std::vector<std::vector<int>> A;    // d x n matrix
    std::vector<ParamPoly> beta;        // length d, expressions in the parameters
    ParametricIdeal ideal;
};

namespace fixtures {

inline ContiguityRelation make_rel(const WeylCtxPtr& ctx, std::vector<int> dir,
                                   const std::string& up, const std::string& down,
                                   const std::string& bfun) {
    ContiguityRelation r;
    r.direction = std::move(dir);
    r.up = parse_operator(ctx, up);
    r.down = parse_operator(ctx, down);
    r.bfun = parse_parampoly(ctx->params, bfun);
    return r;
}

// Gauss hypergeometric system, parameters (a, b, c).
inline HypergeometricSystem gauss() {
    HypergeometricSystem s;
    s.tag = "gauss";
    s.ctx = make_weyl_ctx(make_ctx({"a", "b", "c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*(1-x)*dx^2 + (c-(a+b+1)*x)*dx - a*b")};
    // c-shift: up (1-x)dx + c-a-b, down theta+c (the down operator at c+1)
    s.seeds.push_back(make_rel(s.ctx, {0, 0, 1}, "(1-x)*dx + c - a - b", "theta_x + c",
                               "(a-c)*(b-c)"));
    // a-shift: up theta+a, inverse from the syzygy computation
    s.seeds.push_back(make_rel(s.ctx, {1, 0, 0}, "theta_x + a", "x*(1-x)*dx - b*x - a + c - 1",
                               "a*(c-a-1)"));
    return s;
}

// Gauss with a = c, parameters (b, c); the operator family L(c, b, c).
inline HypergeometricSystem gauss_ac() {
    HypergeometricSystem s;
    s.tag = "gauss-ac";
    s.ctx = make_weyl_ctx(make_ctx({"b", "c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*(1-x)*dx^2 + (c-(c+b+1)*x)*dx - c*b")};
    s.seeds.push_back(make_rel(s.ctx, {0, 1}, "(x-1)*dx + c",
                               "-c*(x*(x-1)*dx + b*x - c)", "c^2*(c-b)"));
    return s;
}

// Gauss with b = c, parameters (a, c); the operator family L(a, c, c).
inline HypergeometricSystem gauss_bc() {
    HypergeometricSystem s;
    s.tag = "gauss-bc";
    s.ctx = make_weyl_ctx(make_ctx({"a", "c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*(1-x)*dx^2 + (c-(a+c+1)*x)*dx - a*c")};
    s.seeds.push_back(make_rel(s.ctx, {0, 1}, "(x-1)*dx + c",
                               "-c*(x*(x-1)*dx + a*x - c)", "-c^2*(a-c)"));
    return s;
}

// Gauss with a = b = c, parameter (c); the operator family L(c, c, c).
inline HypergeometricSystem gauss_abc() {
    HypergeometricSystem s;
    s.tag = "gauss-abc";
    s.ctx = make_weyl_ctx(make_ctx({"c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*(1-x)*dx^2 + (c-(2*c+1)*x)*dx - c^2")};
    s.seeds.push_back(make_rel(s.ctx, {1}, "dx", "-c*(x*(x-1)*dx + (2*c+1)*x - c)", "c^3"));
    return s;
}

// Confluent 1F1 system, parameters (a, c).
inline HypergeometricSystem confluent_1f1() {
    HypergeometricSystem s;
    s.tag = "1f1";
    s.ctx = make_weyl_ctx(make_ctx({"a", "c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*dx^2 + (c-x)*dx - a")};
    s.seeds.push_back(make_rel(s.ctx, {1, 0}, "theta_x + a", "-theta_x + x + a - c + 1",
                               "a*(a-c+1)"));
    s.seeds.push_back(make_rel(s.ctx, {0, -1}, "theta_x + c - 1", "theta_x - 1", "a - c + 1"));
    return s;
}

// 1F1 on the line a = c-1, parameter (c); the family L(c-1, c).
inline HypergeometricSystem confluent_1f1_line() {
    HypergeometricSystem s;
    s.tag = "1f1-line";
    s.ctx = make_weyl_ctx(make_ctx({"c"}), {"x"});
    s.ideal.gens = {parse_operator(s.ctx, "x*dx^2 + (c-x)*dx - (c-1)")};
    s.seeds.push_back(make_rel(s.ctx, {1}, "c*dx", "theta_x - x + c", "c*(c-1)"));
    return s;
}

// Appell F1 system, parameters (a, b, b', c).
inline HypergeometricSystem appell_f1() {
    HypergeometricSystem s;
    s.tag = "f1";
    s.ctx = make_weyl_ctx(make_ctx({"a", "b", "b'", "c"}), {"x", "y"});
    s.ideal.gens = {
        parse_operator(s.ctx, "x*(1-x)*dx^2 + y*(1-x)*dx*dy + (c-(a+b+1)*x)*dx - b*y*dy - a*b"),
        parse_operator(s.ctx, "y*(1-y)*dy^2 + x*(1-y)*dx*dy + (c-(a+b'+1)*y)*dy - b'*x*dx - a*b'"),
        parse_operator(s.ctx, "(x-y)*dx*dy - b'*dx + b*dy"),
    };
    return s;
}

// Appell F2 system, parameters (a, b, b', c, c').
inline HypergeometricSystem appell_f2() {
    HypergeometricSystem s;
    s.tag = "f2";
    s.ctx = make_weyl_ctx(make_ctx({"a", "b", "b'", "c", "c'"}), {"x", "y"});
    s.ideal.gens = {
        parse_operator(s.ctx, "x*(1-x)*dx^2 - x*y*dx*dy + (c-(a+b+1)*x)*dx - b*y*dy - a*b"),
        parse_operator(s.ctx, "y*(1-y)*dy^2 - x*y*dx*dy + (c'-(a+b'+1)*y)*dy - b'*x*dx - a*b'"),
    };
    return s;
}

inline std::vector<WeylElement> gkz_generators(const WeylCtxPtr& ctx,
                                               const std::vector<std::vector<int>>& A,
                                               const std::vector<ParamPoly>& beta,
                                               const std::vector<std::pair<Expvec, Expvec>>& toric) {
    std::vector<WeylElement> gens;
    std::size_t n = ctx->vars.size();
    for (const auto& [up, um] : toric) {
        WeylMono mp, mm;
        mp.xe.assign(n, 0);
        mp.de = up;
        mm.xe.assign(n, 0);
        mm.de = um;
        ParamScalar one = ParamScalar::constant(ctx->params, 1);
        gens.push_back(WeylElement::monomial(ctx, mp, one) -
                       WeylElement::monomial(ctx, mm, one));
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
        WeylElement e(ctx);
        for (std::size_t j = 0; j < n; ++j)
            if (A[i][j] != 0)
                e += WeylElement::constant(ctx, Rat(A[i][j])) * WeylElement::theta(ctx, j);
        e -= WeylElement::scalar(ctx, ParamScalar(beta[i]));
        gens.push_back(e);
    }
    return gens;
}

// GKZ system for the 3x4 matrix (E_3 | (-1,1,1)^T) with symbolic beta.
inline GkzSystem gkz_gauss_symbolic() {
    GkzSystem s;
    s.tag = "gkz-gauss-beta";
    auto params = make_ctx({"b1", "b2", "b3"});
    s.ctx = make_weyl_ctx(params, {"x1", "x2", "x3", "x4"});
    s.A = {{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    for (std::size_t i = 0; i < 3; ++i) s.beta.push_back(ParamPoly::variable(params, i));
    s.ideal.gens = gkz_generators(s.ctx, s.A, s.beta, {{{0, 1, 1, 0}, {1, 0, 0, 1}}});
    // toric relation d2 d3 - d1 d4 (kernel (1,-1,-1,1)); sign normalized
    return s;
}

// Same matrix with beta = (c-1, -a, -b) over the Gauss parameters.
inline GkzSystem gkz_gauss_classical() {
    GkzSystem s;
    s.tag = "gkz-gauss";
    auto params = make_ctx({"a", "b", "c"});
    s.ctx = make_weyl_ctx(params, {"x1", "x2", "x3", "x4"});
    s.A = {{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    s.beta = {parse_parampoly(params, "c-1"), parse_parampoly(params, "-a"),
              parse_parampoly(params, "-b")};
    s.ideal.gens = gkz_generators(s.ctx, s.A, s.beta, {{{0, 1, 1, 0}, {1, 0, 0, 1}}});
    return s;
}

inline GkzSystem gkz_appell_f1() {
    GkzSystem s;
    s.tag = "gkz-f1";
    auto params = make_ctx({"a", "b", "b'", "c"});
    s.ctx = make_weyl_ctx(params, {"x1", "x2", "x3", "x4", "x5", "x6"});
    s.A = {{1, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}, {0, 0, 0, 1, -1, -1}};
    s.beta = {parse_parampoly(params, "-a"), parse_parampoly(params, "-b"),
              parse_parampoly(params, "-b'"), parse_parampoly(params, "c-1")};
    s.ideal.gens = gkz_generators(s.ctx, s.A, s.beta,
                                  {{{0, 0, 0, 1, 1, 0}, {1, 1, 0, 0, 0, 0}},
                                   {{0, 0, 0, 1, 0, 1}, {1, 0, 1, 0, 0, 0}},
                                   {{0, 1, 0, 0, 0, 1}, {0, 0, 1, 0, 1, 0}}});
    return s;
}

inline GkzSystem gkz_appell_f2() {
    GkzSystem s;
    s.tag = "gkz-f2";
    auto params = make_ctx({"a", "b", "b'", "c", "c'"});
    s.ctx = make_weyl_ctx(params, {"x1", "x2", "x3", "x4", "x5", "x6", "x7"});
    s.A = {{1, 0, 0, 0, 0, 1, 1},
           {0, 1, 0, 0, 0, 1, 0},
           {0, 0, 1, 0, 0, 0, 1},
           {0, 0, 0, 1, 0, -1, 0},
           {0, 0, 0, 0, 1, 0, -1}};
    s.beta = {parse_parampoly(params, "-a"), parse_parampoly(params, "-b"),
              parse_parampoly(params, "-b'"), parse_parampoly(params, "c-1"),
              parse_parampoly(params, "c'-1")};
    s.ideal.gens = gkz_generators(s.ctx, s.A, s.beta,
                                  {{{0, 0, 0, 1, 0, 1, 0}, {1, 1, 0, 0, 0, 0, 0}},
                                   {{0, 0, 0, 0, 1, 0, 1}, {1, 0, 1, 0, 0, 0, 0}}});
    return s;
}

// GKZ system for the degenerate parameter vector (b1, 0, 1).
inline GkzSystem gkz_gauss_degenerate() {
    GkzSystem s;
    s.tag = "gkz-gauss-degenerate";
    auto params = make_ctx({"b1"});
    s.ctx = make_weyl_ctx(params, {"x1", "x2", "x3", "x4"});
    s.A = {{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    s.beta = {ParamPoly::variable(params, 0), ParamPoly(params),
              ParamPoly::constant(params, 1)};
    s.ideal.gens = gkz_generators(s.ctx, s.A, s.beta, {{{0, 1, 1, 0}, {1, 0, 0, 1}}});
    return s;
}

}  // namespace fixtures

inline HypergeometricSystem fixture(const std::string& tag) {
    if (tag == "gauss") return fixtures::gauss();
    if (tag == "gauss-ac") return fixtures::gauss_ac();
    if (tag == "gauss-bc") return fixtures::gauss_bc();
    if (tag == "gauss-abc") return fixtures::gauss_abc();
    if (tag == "1f1") return fixtures::confluent_1f1();
    if (tag == "1f1-line") return fixtures::confluent_1f1_line();
    if (tag == "f1") return fixtures::appell_f1();
    if (tag == "f2") return fixtures::appell_f2();
    throw std::invalid_argument("unknown fixture: " + tag);
}

inline GkzSystem gkz_fixture(const std::string& tag) {
    if (tag == "gkz-gauss-beta") return fixtures::gkz_gauss_symbolic();
    if (tag == "gkz-gauss") return fixtures::gkz_gauss_classical();
    if (tag == "gkz-f1") return fixtures::gkz_appell_f1();
    if (tag == "gkz-f2") return fixtures::gkz_appell_f2();
    if (tag == "gkz-gauss-degenerate") return fixtures::gkz_gauss_degenerate();
    throw std::invalid_argument("unknown GKZ fixture: " + tag);
}

inline std::vector<std::string> fixture_tags() {
    return {"gauss", "gauss-ac", "gauss-bc", "gauss-abc", "1f1", "1f1-line", "f1", "f2"};
}

inline std::vector<std::string> gkz_fixture_tags() {
    return {"gkz-gauss-beta", "gkz-gauss", "gkz-f1", "gkz-f2", "gkz-gauss-degenerate"};
}

}  // namespace weylkit
