#pragma once

#include "weylkit/strata.hpp"

namespace weylkit {

// Arithmetic side conditions on affine-linear parameter expressions. These
// are not Zariski conditions; they live alongside a Stratum.
struct ArithAtom {
    enum class Kind {
        IntegerGE,        // expr in Z and expr >= bound
        NotIntegerGE,     // complement of IntegerGE
        Equals,           // expr == bound
        NonZero,          // expr != 0
        IntegerInRange,   // expr in Z and lo <= expr <= hi (expression bounds)
        NoIntegerInRange  // complement of IntegerInRange
    };

    Kind kind;
    ParamPoly expr;
    Rat bound = 0;
    ParamPoly lo, hi;

    static ArithAtom integer_ge(const ParamPoly& e, const Rat& b) {
        return ArithAtom{Kind::IntegerGE, e, b, {}, {}};
    }
    static ArithAtom not_integer_ge(const ParamPoly& e, const Rat& b) {
        return ArithAtom{Kind::NotIntegerGE, e, b, {}, {}};
    }
    static ArithAtom equals(const ParamPoly& e, const Rat& b) {
        return ArithAtom{Kind::Equals, e, b, {}, {}};
    }
    static ArithAtom nonzero(const ParamPoly& e) { return ArithAtom{Kind::NonZero, e, 0, {}, {}}; }
    static ArithAtom integer_in_range(const ParamPoly& e, const ParamPoly& lo, const ParamPoly& hi) {
        return ArithAtom{Kind::IntegerInRange, e, 0, lo, hi};
    }
    static ArithAtom no_integer_in_range(const ParamPoly& e, const ParamPoly& lo,
                                         const ParamPoly& hi) {
        return ArithAtom{Kind::NoIntegerInRange, e, 0, lo, hi};
    }

    bool eval(const std::vector<Rat>& pt) const {
        switch (kind) {
            case Kind::IntegerGE: {
                Rat v = expr.eval(pt);
                return rat_is_integer(v) && v >= bound;
            }
            case Kind::NotIntegerGE: {
                Rat v = expr.eval(pt);
                return !(rat_is_integer(v) && v >= bound);
            }
            case Kind::Equals:
                return expr.eval(pt) == bound;
            case Kind::NonZero:
                return expr.eval(pt) != 0;
            case Kind::IntegerInRange: {
                Rat v = expr.eval(pt);
                return rat_is_integer(v) && v >= lo.eval(pt) && v <= hi.eval(pt);
            }
            case Kind::NoIntegerInRange: {
                Rat v = expr.eval(pt);
                return !(rat_is_integer(v) && v >= lo.eval(pt) && v <= hi.eval(pt));
            }
        }
        return false;
    }

    std::string str() const {
        switch (kind) {
            case Kind::IntegerGE:
                return expr.str() + " in Z_{>=" + rat_str(bound) + "}";
            case Kind::NotIntegerGE:
                return expr.str() + " not in Z_{>=" + rat_str(bound) + "}";
            case Kind::Equals:
                return expr.str() + " = " + rat_str(bound);
            case Kind::NonZero:
                return expr.str() + " != 0";
            case Kind::IntegerInRange:
                return expr.str() + " in Z cap [" + lo.str() + ", " + hi.str() + "]";
            case Kind::NoIntegerInRange:
                return expr.str() + " avoids Z cap [" + lo.str() + ", " + hi.str() + "]";
        }
        return "";
    }
};

struct ConditionSet {
    Stratum zariski;
    std::vector<ArithAtom> atoms;

    bool eval(const std::vector<Rat>& pt) const {
        if (!zariski.contains(pt)) return false;
        for (const auto& a : atoms)
            if (!a.eval(pt)) return false;
        return true;
    }

    ConditionSet with(const ArithAtom& a) const {
        ConditionSet c = *this;
        c.atoms.push_back(a);
        return c;
    }

    std::string str() const {
        std::string s = zariski.str();
        for (const auto& a : atoms) s += " & " + a.str();
        return s;
    }
};

// ---- roots of a b-function -------------------------------------------------

struct BRoot {
    ParamPoly expr;  // over the base parameters
    int multiplicity;
    bool is_constant;
    Rat value;  // when constant
};

struct RootAnalysis {
    std::vector<BRoot> roots;
    // largest non-negative integer among the constant roots, -1 when none
    long max_const_root = -1;

    std::vector<BRoot> expression_roots() const {
        std::vector<BRoot> out;
        for (const auto& r : roots)
            if (!r.is_constant) out.push_back(r);
        return out;
    }
};

// b lives over bfun_ctx(params) = (params..., s); roots are solved from the
// degree-1 factors in s, which must have constant s-coefficients.
inline RootAnalysis analyze_roots(const ParamPoly& b, const ParamCtxPtr& params) {
    RootAnalysis out;
    std::size_t spos = params->size();  // s is the last slot of the b ctx
    LinearFactorization f = factor_linear(b);
    if (!f.remainder.is_constant())
        throw UnsupportedError("b-function has a non-linear factor: " + f.remainder.str());
    for (const auto& [q, m] : f.factors) {
        int ds = q.degree_in(spos);
        if (ds == 0)
            throw UnsupportedError("b-function has a parameter-only factor: " + q.str());
        auto cs = q.coeffs_in(spos);
        if (!cs[1].is_constant())
            throw UnsupportedError("s-coefficient is not constant in factor: " + q.str());
        Rat alpha = cs[1].constant_value();
        // root = -g/alpha, re-expressed over the base parameters
        ParamPoly g = cs[0];
        ParamPoly root(params);
        for (const auto& [pe, rat] : g.terms()) {
            Expvec e(params->size(), 0);
            for (std::size_t i = 0; i < params->size(); ++i) e[i] = pe[i];
            ParamPoly t = ParamPoly::constant(params, -rat / alpha);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) t *= ParamPoly::variable(params, i, e[i]);
            root += t;
        }
        if (root.total_degree() > 1)
            throw UnsupportedError("root expression is not affine-linear: " + root.str());
        BRoot r;
        r.expr = root;
        r.multiplicity = m;
        r.is_constant = root.is_constant();
        if (r.is_constant) {
            r.value = root.is_zero() ? Rat(0) : root.constant_value();
            if (rat_is_integer(r.value) && r.value >= 0)
                out.max_const_root = std::max(out.max_const_root,
                                              static_cast<long>(rat_num(r.value).convert_to<long>()));
        }
        out.roots.push_back(r);
    }
    return out;
}

// Type (a): the maximal non-negative integral root is 0; type (b): none.
// Conditions are conjunctive; type (c) is the ordered complement.
struct RootClassification {
    bool type_a_possible;
    std::vector<ArithAtom> type_a_conditions;
    bool type_b_possible;
    std::vector<ArithAtom> type_b_conditions;
};

inline RootClassification classify_roots(const RootAnalysis& ra) {
    RootClassification rc;
    rc.type_a_possible = ra.max_const_root == 0;
    rc.type_b_possible = ra.max_const_root < 0;
    for (const auto& r : ra.expression_roots()) {
        rc.type_a_conditions.push_back(ArithAtom::not_integer_ge(r.expr, Rat(1)));
        rc.type_b_conditions.push_back(ArithAtom::not_integer_ge(r.expr, Rat(0)));
    }
    if (ra.max_const_root > 0) rc.type_a_possible = false;
    return rc;
}

}  // namespace weylkit
