#pragma once

#include "weylkit/conditions.hpp"

namespace weylkit {

struct RestrictionBasis {
    std::vector<std::size_t> vars;  // restricted variable indices
    int degree_bound = 0;           // s0
    std::vector<Expvec> monomials;  // d^k over the restricted slots, graded order
};

// Presentation D'^{|basis|} / <relations>. When every variable is restricted
// the relations are scalar rows and the dimension is a stratified rank
// computation; otherwise the rows live in the remaining Weyl algebra.
struct RestrictionPresentation {
    RestrictionBasis basis;
    std::vector<std::vector<WeylElement>> relations;  // row-major over basis
    bool scalar = false;
    StratifiedResult<int> dimension;  // |basis| - rank per stratum (scalar case)

    std::size_t basis_size() const { return basis.monomials.size(); }
};

namespace rest_detail {

inline std::vector<Expvec> truncated_monomials(std::size_t n, const std::vector<std::size_t>& vars,
                                               const std::vector<int>& w, int s0) {
    std::vector<Expvec> out;
    Expvec cur(n, 0);
    std::function<void(std::size_t, int)> walk = [&](std::size_t idx, int left) {
        if (idx == vars.size()) {
            out.push_back(cur);
            return;
        }
        std::size_t v = vars[idx];
        int wv = w[v] == 0 ? 1 : w[v];
        for (int k = 0; k * wv <= left; ++k) {
            cur[v] = k;
            walk(idx + 1, left - k * wv);
        }
        cur[v] = 0;
    };
    walk(0, s0);
    // graded, earlier variables first: 1, dx, dy, dx^2, dx dy, ...
    std::sort(out.begin(), out.end(), [](const Expvec& a, const Expvec& b) {
        int da = expvec_total(a), db = expvec_total(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return out;
}

}  // namespace rest_detail

// Oaku restriction step: collect the derivative shifts of a (-w,w) basis up
// to the truncation degree, restrict to the subspace, and present the
// quotient over the truncated derivative monomials.
inline RestrictionPresentation rest(const std::vector<WeylElement>& wbasis,
                                    const std::vector<int>& w, int s0,
                                    const std::vector<std::size_t>& vars, const Stratum& within) {
    if (s0 < 0) throw std::invalid_argument("negative truncation degree");
    if (wbasis.empty()) throw std::invalid_argument("empty basis");
    const WeylCtxPtr& ctx = wbasis.front().ctx();
    std::size_t n = ctx->vars.size();

    RestrictionPresentation pres;
    pres.basis.vars = vars;
    pres.basis.degree_bound = s0;
    pres.basis.monomials = rest_detail::truncated_monomials(n, vars, w, s0);
    auto mono_index = [&](const Expvec& k) -> std::size_t {
        for (std::size_t i = 0; i < pres.basis.monomials.size(); ++i)
            if (pres.basis.monomials[i] == k) return i;
        throw std::logic_error("derivative monomial escapes the truncated basis");
    };

    std::vector<bool> restricted(n, false);
    for (std::size_t v : vars) restricted[v] = true;

    std::vector<std::vector<WeylElement>> rows;
    for (const auto& g : wbasis) {
        long og = g.ord_weight(w);
        // all shifts d^j g with w.j + ord(g) <= s0
        for (const Expvec& j : rest_detail::truncated_monomials(n, vars, w,
                                                                s0 - static_cast<int>(og))) {
            WeylMono jm;
            jm.xe.assign(n, 0);
            jm.de = j;
            WeylElement shifted =
                WeylElement::monomial(ctx, jm, ParamScalar::constant(ctx->params, 1)) * g;
            WeylElement re = shifted.restrict_x_to_zero(vars);
            if (re.is_zero()) continue;
            std::vector<WeylElement> row(pres.basis.monomials.size(), WeylElement(ctx));
            for (const auto& [m, c] : re.terms()) {
                Expvec k(n, 0);
                WeylMono rest_part = m;
                for (std::size_t v = 0; v < n; ++v)
                    if (restricted[v]) {
                        k[v] = m.de[v];
                        rest_part.de[v] = 0;
                    }
                row[mono_index(k)].add_term(rest_part, c);
            }
            rows.push_back(std::move(row));
        }
    }
    // deduplicate after normalization
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = a[i].compare(b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    pres.relations = std::move(rows);

    pres.scalar = true;
    for (const auto& row : pres.relations)
        for (const auto& e : row)
            if (!e.is_scalar()) pres.scalar = false;

    if (pres.scalar) {
        std::vector<std::vector<ParamPoly>> mat;
        for (const auto& row : pres.relations) {
            // clear the row denominators
            ParamPoly lcm = ParamPoly::constant(ctx->params, 1);
            for (const auto& e : row) {
                if (e.is_zero()) continue;
                ParamPoly den = e.scalar_value().den();
                ParamPoly g = poly_gcd(lcm, den);
                lcm = *(lcm * den).divide_exact(g);
            }
            std::vector<ParamPoly> r;
            for (const auto& e : row) {
                if (e.is_zero()) {
                    r.push_back(ParamPoly(ctx->params));
                } else {
                    ParamScalar s = e.scalar_value();
                    r.push_back(s.num() * *lcm.divide_exact(s.den()));
                }
            }
            mat.push_back(std::move(r));
        }
        StratifiedResult<int> ranks = parametric_rank(mat, ctx->params, within);
        for (auto& [st, rk] : ranks.cells) rk = static_cast<int>(pres.basis_size()) - rk;
        pres.dimension = std::move(ranks);
    }
    return pres;
}

// ---- LR-reduction ---------------------------------------------------------

// Rewrites away the restricted derivatives modulo the ideal generated by
// d_i - l_i plus the restricted coordinate ideal. The rules must have their
// only restricted-derivative occurrence in the -x_i d_i term.
inline WeylElement lr_reduce(const WeylElement& e, const std::map<std::size_t, WeylElement>& rules,
                             const std::vector<std::size_t>& vars) {
    const WeylCtxPtr& ctx = e.ctx();
    std::size_t n = ctx->vars.size();
    std::vector<bool> restricted(n, false);
    for (std::size_t v : vars) restricted[v] = true;

    for (const auto& [i, l] : rules) {
        for (const auto& [m, c] : l.terms()) {
            for (std::size_t v = 0; v < n; ++v) {
                if (!restricted[v] || m.de[v] == 0) continue;
                if (v != i || m.xe[i] < 1)
                    throw UnsupportedError("rule for d" + ctx->vars[i] +
                                           " has a bare restricted derivative: " + l.str());
            }
        }
    }

    WeylElement cur = e;
    for (int guard = 0; guard < 100000; ++guard) {
        cur = cur.restrict_x_to_zero(vars);
        // pick a term containing a restricted derivative: smallest variable
        // index first, then the canonically largest monomial
        const WeylMono* pick = nullptr;
        std::size_t pick_var = n;
        for (const auto& [m, c] : cur.terms()) {
            std::size_t mv = n;
            for (std::size_t v = 0; v < n; ++v)
                if (restricted[v] && m.de[v] > 0) {
                    mv = v;
                    break;
                }
            if (mv == n) continue;
            if (mv < pick_var || (mv == pick_var && pick && CanonicalMonoLess{}(*pick, m))) {
                pick = &m;
                pick_var = mv;
            }
        }
        if (!pick) return cur;
        auto rule = rules.find(pick_var);
        if (rule == rules.end())
            throw UnsupportedError("no rule for restricted derivative d" + ctx->vars[pick_var]);
        WeylMono rest = *pick;
        ParamScalar coeff = cur.terms().at(*pick);
        rest.de[pick_var] -= 1;
        WeylElement head = WeylElement::monomial(ctx, rest, coeff);
        WeylElement term = WeylElement::monomial(ctx, *pick, coeff);
        cur = head * rule->second + (cur - term);
    }
    throw std::runtime_error("LR-reduction did not terminate");
}

// Reduction rules d_i -> l_i read off the first-order generators of the
// shifted ideal (the coefficient of d_i must be x_i + 1).
inline std::map<std::size_t, WeylElement> lr_rules_from_ideal(
    const std::vector<WeylElement>& shifted_gens, const std::vector<std::size_t>& vars) {
    if (shifted_gens.empty()) throw std::invalid_argument("empty ideal");
    const WeylCtxPtr& ctx = shifted_gens.front().ctx();
    std::size_t n = ctx->vars.size();
    std::map<std::size_t, WeylElement> rules;
    for (std::size_t i : vars) {
        for (const auto& g : shifted_gens) {
            // looking for g = (x_i + 1) d_i + R with R free of restricted derivatives
            Expvec exi(n, 0), edi(n, 0);
            edi[i] = 1;
            ParamScalar c_di = g.extract_coeff(exi, edi);
            Expvec xedi(n, 0);
            xedi[i] = 1;
            ParamScalar c_xdi = g.extract_coeff(xedi, edi);
            if (c_di.is_zero() || !c_di.is_one() || !c_xdi.is_one()) continue;
            WeylMono mdi;
            mdi.xe.assign(n, 0);
            mdi.de = edi;
            WeylElement di = WeylElement::monomial(ctx, mdi, ParamScalar::constant(ctx->params, 1));
            WeylElement l = di - g;  // d_i = -x_i d_i - R
            bool ok = true;
            for (const auto& [m, c] : l.terms())
                for (std::size_t v : vars)
                    if (m.de[v] > 0 && (v != i || m.xe[i] < 1)) ok = false;
            if (!ok) continue;
            rules[i] = l;
            break;
        }
        if (!rules.count(i))
            throw UnsupportedError("no first-order rule found for d" + ctx->vars[i]);
    }
    return rules;
}

// Restriction of the morphism [f] -> [f ell] between D/I and D/I' to the
// subspace, valid when both truncation degrees are zero.
inline WeylElement restrict_homomorphism(const WeylElement& ell,
                                         const std::vector<WeylElement>& target_gens_shifted,
                                         int s0_source, int s0_target,
                                         const std::vector<std::size_t>& vars) {
    if (s0_source != 0 || s0_target != 0)
        throw UnsupportedError("homomorphism restriction requires truncation degree zero");
    auto rules = lr_rules_from_ideal(target_gens_shifted, vars);
    return lr_reduce(ell, rules, vars);
}

// ---- GKZ restriction to x_1 = ... = x_d = 1 -------------------------------

struct GkzRestriction {
    std::vector<WeylElement> ideal_gens;  // over the reduced Weyl context
    WeylCtxPtr reduced_ctx;
    bool bfunction_is_s = false;  // certificate: d_i in the initial ideal, 1 not
    std::vector<long> ord_profile;
};

inline GkzRestriction gkz_restrict_to_ones(const GkzSystem& sys,
                                           const std::vector<std::string>& new_names) {
    std::size_t d = sys.A.size();
    std::size_t n = sys.ctx->vars.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (sys.A[i][j] != (i == j ? 1 : 0))
                throw std::invalid_argument("matrix is not of the form (E_d | A')");

    std::map<std::size_t, Rat> shift;
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < d; ++i) {
        shift[i] = Rat(1);
        vars.push_back(i);
    }
    std::vector<WeylElement> shifted;
    for (const auto& g : sys.ideal.gens) shifted.push_back(g.change_vars_shift(shift));

    std::vector<int> w(n, 0);
    for (std::size_t i = 0; i < d; ++i) w[i] = 1;
    GroebnerBasis gb = buchberger_ideal(shifted, TermOrder::weight(w));

    GkzRestriction out;
    // b-function certificate: every d_i lies in the initial ideal, 1 does not
    std::vector<WeylElement> forms;
    for (const auto& g : gb.gens) forms.push_back(g[0].initial_form(w));
    GroebnerBasis igb = membership_basis(forms);
    out.bfunction_is_s = true;
    const WeylCtxPtr& ctx = sys.ctx;
    for (std::size_t i = 0; i < d; ++i)
        if (!reduces_to_zero(WeylElement::d(ctx, i), igb)) out.bfunction_is_s = false;
    if (reduces_to_zero(WeylElement::constant(ctx, 1), igb)) out.bfunction_is_s = false;

    for (const auto& g : gb.gens) out.ord_profile.push_back(g[0].ord_weight(w));

    std::vector<WeylElement> basis_elems;
    for (const auto& g : gb.gens) basis_elems.push_back(g[0]);
    RestrictionPresentation pres = rest(basis_elems, w, 0, vars, Stratum::full(ctx->params));

    // relations are coefficients of the basis monomial 1: remap to the
    // reduced context
    out.reduced_ctx = make_weyl_ctx(ctx->params, new_names);
    for (const auto& row : pres.relations) {
        const WeylElement& e = row[0];
        if (e.is_zero()) continue;
        WeylElement re(out.reduced_ctx);
        for (const auto& [m, c] : e.terms()) {
            WeylMono nm;
            nm.xe.assign(n - d, 0);
            nm.de.assign(n - d, 0);
            for (std::size_t v = d; v < n; ++v) {
                nm.xe[v - d] = m.xe[v];
                nm.de[v - d] = m.de[v];
            }
            for (std::size_t v = 0; v < d; ++v)
                if (m.xe[v] > 0 || m.de[v] > 0) throw std::logic_error("restricted slot survived");
            re.add_term(nm, c);
        }
        out.ideal_gens.push_back(re.normalized_primitive());
    }
    out.ideal_gens = normalized_set(out.ideal_gens);
    return out;
}

}  // namespace weylkit
