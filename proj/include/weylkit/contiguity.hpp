#pragma once

#include "weylkit/groebner.hpp"

#include <variant>

namespace weylkit {

// A family of left ideals I(beta); integer shifts act by substituting
// beta_i -> beta_i + delta_i in the generators.
struct ParametricIdeal {
    std::vector<WeylElement> gens;

    const WeylCtxPtr& ctx() const { return gens.front().ctx(); }

    std::vector<WeylElement> shifted(const std::vector<int>& delta) const {
        std::vector<WeylElement> out = gens;
        const ParamCtxPtr& params = ctx()->params;
        for (std::size_t i = 0; i < delta.size(); ++i) {
            if (delta[i] == 0) continue;
            ParamPoly repl = ParamPoly::variable(params, i) +
                             ParamPoly::constant(params, Rat(delta[i]));
            for (auto& g : out) g = g.substitute_param(i, repl);
        }
        return out;
    }
};

// Up-step, down-step and the b-function of the contiguity for one lattice
// direction. `up` right-multiplies M(beta+e) into M(beta), `down` the other
// way; both composites reduce to bfun.
struct ContiguityRelation {
    std::vector<int> direction;
    WeylElement up;
    WeylElement down;
    ParamPoly bfun;

    ContiguityRelation shifted_base(const std::vector<int>& delta) const {
        ContiguityRelation r = *this;
        const ParamCtxPtr& params = up.ctx()->params;
        for (std::size_t i = 0; i < delta.size(); ++i) {
            if (delta[i] == 0) continue;
            ParamPoly repl = ParamPoly::variable(params, i) +
                             ParamPoly::constant(params, Rat(delta[i]));
            r.up = r.up.substitute_param(i, repl);
            r.down = r.down.substitute_param(i, repl);
            r.bfun = r.bfun.substitute(i, repl);
        }
        return r;
    }
};

struct ContiguityCertificate {
    bool ok = false;
    std::string detail;
    WeylElement composite_src;  // down*up reduced mod I(beta)
    WeylElement composite_tgt;  // up*down reduced mod I(beta+e)
};

inline ContiguityCertificate verify_contiguity(const ParametricIdeal& I,
                                               const ContiguityRelation& rel) {
    ContiguityCertificate cert;
    GroebnerBasis gb_src = membership_basis(I.gens);
    std::vector<WeylElement> tgt_gens = I.shifted(rel.direction);
    GroebnerBasis gb_tgt = membership_basis(tgt_gens);

    for (const auto& l : tgt_gens) {
        if (!reduces_to_zero(l * rel.up, gb_src)) {
            cert.detail = "l*H not in I(beta) for l = " + l.str();
            return cert;
        }
    }
    for (const auto& l : I.gens) {
        if (!reduces_to_zero(l * rel.down, gb_tgt)) {
            cert.detail = "l*B not in I(beta+e) for l = " + l.str();
            return cert;
        }
    }
    const WeylCtxPtr& ctx = I.ctx();
    WeylElement bscal = WeylElement::scalar(ctx, ParamScalar(rel.bfun));
    cert.composite_src = normal_form(rel.down * rel.up, gb_src);
    if (!(cert.composite_src == bscal)) {
        cert.detail = "down*up reduces to " + cert.composite_src.str() + ", expected " +
                      rel.bfun.str();
        return cert;
    }
    cert.composite_tgt = normal_form(rel.up * rel.down, gb_tgt);
    if (!(cert.composite_tgt == bscal)) {
        cert.detail = "up*down reduces to " + cert.composite_tgt.str() + ", expected " +
                      rel.bfun.str();
        return cert;
    }
    cert.ok = true;
    return cert;
}

// Derives the missing partner operator by the inhomogeneous syzygy method and
// returns the fully verified relation.
inline ContiguityRelation derive_partner(const ParametricIdeal& I, const WeylElement& given,
                                         bool given_is_up, const std::vector<int>& direction) {
    GroebnerBasis gb_src = membership_basis(I.gens);
    std::vector<WeylElement> tgt_gens = I.shifted(direction);

    ContiguityRelation rel;
    rel.direction = direction;
    if (given_is_up) {
        for (const auto& l : tgt_gens)
            if (!reduces_to_zero(l * given, gb_src))
                throw UnsupportedError("given operator is not an up-step for this direction");
        rel.up = given;
        InverseWitness w = solve_inverse(given, I.gens);
        rel.down = w.inverse;
        rel.bfun = w.cofactor;
    } else {
        GroebnerBasis gb_tgt = membership_basis(tgt_gens);
        for (const auto& l : I.gens)
            if (!reduces_to_zero(l * given, gb_tgt))
                throw UnsupportedError("given operator is not a down-step for this direction");
        rel.down = given;
        InverseWitness w = solve_inverse(given, tgt_gens);
        rel.up = w.inverse;
        rel.bfun = w.cofactor;
    }
    ContiguityCertificate cert = verify_contiguity(I, rel);
    if (!cert.ok) throw NotInvertibleError("derived relation failed verification: " + cert.detail);
    return rel;
}

struct CompositeFailure {
    std::string reason;
    WeylElement vanishing_composite;
};

using CompositeResult = std::variant<ContiguityRelation, CompositeFailure>;

// One parameter restriction: substitute param `index` by the given polynomial
// expression in the remaining parameters.
struct ParamSubstitution {
    std::size_t index;
    ParamPoly value;
};

namespace detail {

inline WeylElement subst_all(const WeylElement& e, const std::vector<ParamSubstitution>& subs) {
    WeylElement r = e;
    for (const auto& s : subs) r = r.substitute_param(s.index, s.value);
    return r;
}

inline ParamPoly subst_all(const ParamPoly& p, const std::vector<ParamSubstitution>& subs) {
    ParamPoly r = p;
    for (const auto& s : subs) r = r.substitute(s.index, s.value);
    return r;
}

}  // namespace detail

// Composes two contiguity relations of the same family (the second is used
// with its base shifted along the first direction on the up side and
// conversely on the down side), reduces the composite down-step modulo the
// target ideal, optionally restricts parameters, and attempts common-factor
// division before re-verifying.
inline CompositeResult compose_and_restrict(const ParametricIdeal& I, const ContiguityRelation& r1,
                                            const ContiguityRelation& r2,
                                            const std::vector<ParamSubstitution>& subs,
                                            bool divide_common_factor) {
    std::vector<int> dir(r1.direction.size());
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = r1.direction[i] + r2.direction[i];

    WeylElement up = r2.shifted_base(r1.direction).up * r1.up;
    WeylElement down = r2.down * r1.shifted_base(r2.direction).down;

    std::vector<WeylElement> tgt_gens = I.shifted(dir);
    GroebnerBasis gb_tgt = membership_basis(tgt_gens);
    WeylElement down_reduced = normal_form(down, gb_tgt);

    GroebnerBasis gb_src = membership_basis(I.gens);
    WeylElement comp = normal_form(down_reduced * up, gb_src);
    if (!comp.is_scalar())
        return CompositeFailure{"composite down*up does not reduce to a scalar", comp};
    ParamScalar bscal = comp.scalar_value();
    if (!bscal.is_polynomial())
        return CompositeFailure{"composite b-function is not polynomial", comp};
    ParamPoly bfun = bscal.as_polynomial();

    WeylElement op = down_reduced;
    if (divide_common_factor && !op.is_zero()) {
        ParamPoly g(op.ctx()->params);
        for (const auto& [m, c] : op.terms()) {
            if (!c.is_polynomial())
                return CompositeFailure{"composite has non-polynomial coefficients", op};
            g = g.is_zero() ? c.as_polynomial() : poly_gcd(g, c.as_polynomial());
        }
        if (!g.is_constant()) {
            if (!g.divides(bfun))
                return CompositeFailure{
                    "common factor " + g.str() + " does not divide the b-function", op};
            WeylElement divided(op.ctx(), false);
            for (const auto& [m, c] : op.terms())
                divided.add_term(m, ParamScalar(*c.as_polynomial().divide_exact(g)));
            op = divided;
            bfun = *bfun.divide_exact(g);
        }
    }

    // restrict parameters
    ParametricIdeal Irestr{I.gens};
    for (auto& ggen : Irestr.gens) ggen = detail::subst_all(ggen, subs);
    ContiguityRelation rel;
    rel.direction = dir;
    rel.up = detail::subst_all(up, subs);
    rel.down = detail::subst_all(op, subs);
    rel.bfun = detail::subst_all(bfun, subs);

    if (rel.down.is_zero() || rel.bfun.is_zero())
        return CompositeFailure{"composite vanishes under the parameter restriction", rel.down};
    if (!subs.empty()) {
        // the restricted composite may fall into the target ideal
        GroebnerBasis gb_tgt_r = membership_basis(ParametricIdeal{Irestr.gens}.shifted(dir));
        WeylElement nf = normal_form(rel.down, gb_tgt_r);
        if (nf.is_zero())
            return CompositeFailure{"restricted down-step lies in the target ideal", rel.down};
        // the surviving down-step needs a freshly derived inverse on the
        // restricted family
        try {
            return derive_partner(Irestr, rel.down, false, dir);
        } catch (const std::exception& ex) {
            return CompositeFailure{std::string("restricted composite is not a contiguity: ") +
                                        ex.what(),
                                    rel.down};
        }
    }
    ContiguityCertificate cert = verify_contiguity(Irestr, rel);
    if (!cert.ok) return CompositeFailure{"restricted composite is not a contiguity: " + cert.detail,
                                          rel.down};
    return rel;
}

}  // namespace weylkit
