#pragma once

#include "weylkit/contiguity.hpp"

#include <functional>
#include <random>

namespace weylkit {

// Constructible parameter set V(E) \ V(N). An empty N removes nothing; the
// full space is E = {}, N = {}. Equations must be solvable one parameter at a
// time with a constant leading coefficient (all cases produced here are).
struct Stratum {
    ParamCtxPtr params;
    std::vector<ParamPoly> E, N;

    static Stratum full(ParamCtxPtr p) { return Stratum{std::move(p), {}, {}}; }

    Stratum with_equation(const ParamPoly& e) const {
        Stratum s = *this;
        s.E.push_back(e.primitive_part());
        return s;
    }

    Stratum with_inequation(const ParamPoly& n) const {
        Stratum s = *this;
        if (!n.is_constant()) s.N.push_back(n.primitive_part());
        return s;
    }

    // Triangular solve of E: each equation is used to eliminate one parameter
    // (the first one occurring linearly with a constant coefficient).
    std::vector<ParamSubstitution> solve() const {
        std::vector<ParamSubstitution> subs;
        for (const ParamPoly& e0 : E) {
            ParamPoly e = detail::subst_all(e0, subs);
            if (e.is_zero()) continue;
            if (e.is_constant()) {
                // inconsistent equations: represented by an unsatisfiable
                // substitution set; is_empty() reports it
                throw UnsupportedError("inconsistent stratum equations");
            }
            bool solved = false;
            for (std::size_t i = 0; i < params->size() && !solved; ++i) {
                if (e.degree_in(i) != 1) continue;
                auto cs = e.coeffs_in(i);
                if (!cs[1].is_constant()) continue;
                Rat lead = cs[1].constant_value();
                ParamPoly value = cs[0] * Rat(-1, 1);
                value *= Rat(1) / lead;
                subs.push_back(ParamSubstitution{i, value});
                solved = true;
            }
            if (!solved)
                throw UnsupportedError("stratum equation not linearly solvable: " + e.str());
        }
        return subs;
    }

    bool is_consistent() const {
        try {
            solve();
            return true;
        } catch (const UnsupportedError&) {
            return false;
        }
    }

    // Empty when E has no solutions or V(E) sits inside V(N).
    bool is_empty() const {
        std::vector<ParamSubstitution> subs;
        try {
            subs = solve();
        } catch (const UnsupportedError&) {
            return true;
        }
        if (N.empty()) return false;
        for (const ParamPoly& n : N)
            if (!detail::subst_all(n, subs).is_zero()) return false;
        return true;
    }

    bool contains(const std::vector<Rat>& point) const {
        for (const ParamPoly& e : E)
            if (e.eval(point) != 0) return false;
        if (N.empty()) return true;
        for (const ParamPoly& n : N)
            if (n.eval(point) != 0) return true;
        return false;
    }

    // Rational points of the stratum: solve E, randomize the free parameters,
    // retry until the N condition holds.
    std::vector<std::vector<Rat>> sample(std::size_t count, std::mt19937& rng) const {
        auto subs = solve();
        std::vector<bool> bound(params->size(), false);
        for (const auto& s : subs) bound[s.index] = true;
        std::vector<std::vector<Rat>> out;
        std::uniform_int_distribution<int> num(-40, 40);
        std::uniform_int_distribution<int> den(1, 7);
        for (int guard = 0; out.size() < count && guard < 4000; ++guard) {
            std::vector<Rat> pt(params->size(), Rat(0));
            for (std::size_t i = 0; i < pt.size(); ++i)
                if (!bound[i]) pt[i] = Rat(num(rng), den(rng));
            // back-substitute in reverse order
            for (auto it = subs.rbegin(); it != subs.rend(); ++it) pt[it->index] = it->value.eval(pt);
            if (contains(pt)) out.push_back(pt);
        }
        if (out.size() < count) throw std::runtime_error("could not sample stratum: " + str());
        return out;
    }

    std::string str() const {
        std::string s = "V({";
        for (std::size_t i = 0; i < E.size(); ++i) s += (i ? ", " : "") + E[i].str();
        s += "})";
        if (!N.empty()) {
            s += " \\ V({";
            for (std::size_t i = 0; i < N.size(); ++i) s += (i ? ", " : "") + N[i].str();
            s += "})";
        }
        return s;
    }
};

template <typename T>
struct StratifiedResult {
    std::vector<std::pair<Stratum, T>> cells;
};

namespace strata_detail {

inline std::vector<ParamPoly> split_criticals(const std::vector<ParamPoly>& raw,
                                              const std::vector<ParamSubstitution>& subs) {
    std::vector<ParamPoly> out;
    auto push = [&](const ParamPoly& p) {
        ParamPoly n = p.primitive_part();
        for (const auto& q : out)
            if (q == n) return;
        out.push_back(n);
    };
    for (const ParamPoly& c0 : raw) {
        ParamPoly c = detail::subst_all(c0, subs);
        if (c.is_constant()) continue;
        LinearFactorization f = factor_linear(c);
        for (const auto& [q, m] : f.factors) push(q);
        if (!f.remainder.is_constant()) push(f.remainder);
    }
    std::sort(out.begin(), out.end(), [](const ParamPoly& a, const ParamPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
        return a.compare(b) < 0;
    });
    return out;
}

}  // namespace strata_detail

// Leading-coefficient recursion: run the computation over the fraction field,
// branch on the vanishing of every critical coefficient it divided by, and
// absorb branches whose payload is the specialization of the parent payload.
//
// compute(subs, trace) runs the full pipeline with the stratum substitutions
// applied; absorbable(parent_payload, branch_subs, branch_payload) decides
// merging.
template <typename T>
StratifiedResult<T> stratified_compute(
    const Stratum& within,
    const std::function<T(const std::vector<ParamSubstitution>&, GBTrace&)>& compute,
    const std::function<bool(const T&, const std::vector<ParamSubstitution>&, const T&)>& absorbable,
    int depth_cap = 12) {
    if (depth_cap < 0) throw std::runtime_error("stratification recursion cap exceeded");
    StratifiedResult<T> out;
    if (within.is_empty()) return out;

    std::vector<ParamSubstitution> subs = within.solve();
    GBTrace trace;
    T payload = compute(subs, trace);
    std::vector<ParamPoly> criticals = strata_detail::split_criticals(trace.critical, subs);

    // generic cell: all criticals nonzero
    Stratum generic = within;
    std::vector<std::size_t> local;  // indices of criticals attached locally
    ParamPoly nprod = ParamPoly::constant(within.params, 1);
    for (const auto& c : criticals) nprod *= c;
    if (!nprod.is_constant()) {
        if (!within.N.empty()) {
            std::vector<ParamPoly> nn;
            for (const auto& n : within.N) nn.push_back((n * nprod).primitive_part());
            generic.N = nn;
        } else {
            generic.N = {nprod.primitive_part()};
        }
    }

    std::vector<std::pair<Stratum, T>> branch_cells;
    std::vector<bool> absorbed(criticals.size(), false);
    for (std::size_t k = 0; k < criticals.size(); ++k) {
        Stratum br = within.with_equation(criticals[k]);
        // earlier criticals stay nonzero on this branch
        ParamPoly prev = ParamPoly::constant(within.params, 1);
        for (std::size_t j = 0; j < k; ++j)
            if (!absorbed[j]) prev *= criticals[j];
        if (!prev.is_constant()) {
            if (!within.N.empty()) {
                std::vector<ParamPoly> nn;
                for (const auto& n : within.N) nn.push_back((n * prev).primitive_part());
                br.N = nn;
            } else {
                br.N = {prev.primitive_part()};
            }
        }
        if (br.is_empty()) continue;
        StratifiedResult<T> sub = stratified_compute<T>(br, compute, absorbable, depth_cap - 1);
        if (sub.cells.size() == 1) {
            std::vector<ParamSubstitution> bsubs = sub.cells[0].first.solve();
            if (absorbable(payload, bsubs, sub.cells[0].second)) {
                absorbed[k] = true;
                continue;  // swallowed by the generic cell
            }
        }
        for (auto& c : sub.cells) branch_cells.push_back(std::move(c));
    }

    // rebuild the generic N without the absorbed factors
    ParamPoly nkeep = ParamPoly::constant(within.params, 1);
    for (std::size_t k = 0; k < criticals.size(); ++k)
        if (!absorbed[k]) nkeep *= criticals[k];
    generic.N = within.N;
    if (!nkeep.is_constant()) {
        if (!within.N.empty()) {
            std::vector<ParamPoly> nn;
            for (const auto& n : within.N) nn.push_back((n * nkeep).primitive_part());
            generic.N = nn;
        } else {
            generic.N = {nkeep.primitive_part()};
        }
    }
    out.cells.emplace_back(std::move(generic), std::move(payload));
    for (auto& c : branch_cells) out.cells.push_back(std::move(c));
    return out;
}

inline std::vector<WeylElement> substituted_gens(const std::vector<WeylElement>& gens,
                                                 const std::vector<ParamSubstitution>& subs) {
    std::vector<WeylElement> out;
    out.reserve(gens.size());
    for (const auto& g : gens) {
        WeylElement e = detail::subst_all(g, subs);
        if (!e.is_zero()) out.push_back(e.normalized_primitive());
    }
    return out;
}

inline std::vector<WeylElement> normalized_set(std::vector<WeylElement> v) {
    for (auto& e : v) e = e.normalized_primitive();
    std::sort(v.begin(), v.end(), [](const WeylElement& a, const WeylElement& b) {
        return a.compare(b) < 0;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Comprehensive Groebner system: a basis valid on each stratum.
inline StratifiedResult<GroebnerBasis> cgs_lite(const std::vector<WeylElement>& gens,
                                                const TermOrder& order, const Stratum& within) {
    auto compute = [&](const std::vector<ParamSubstitution>& subs, GBTrace& trace) {
        return buchberger_ideal(substituted_gens(gens, subs), order, &trace);
    };
    auto absorbable = [&](const GroebnerBasis& parent, const std::vector<ParamSubstitution>& bsubs,
                          const GroebnerBasis& child) {
        std::vector<WeylElement> pv;
        for (const auto& g : parent.gens) {
            WeylElement e = detail::subst_all(g[0], bsubs);
            if (!e.is_zero()) pv.push_back(e);
        }
        return normalized_set(std::move(pv)) == normalized_set(child.ideal_gens());
    };
    return stratified_compute<GroebnerBasis>(within, compute, absorbable);
}

// Generators of the (-w,w) initial form ideal on each stratum.
inline StratifiedResult<std::vector<WeylElement>> parametric_initial_ideal(
    const std::vector<WeylElement>& gens, const std::vector<int>& w, const Stratum& within) {
    auto compute = [&](const std::vector<ParamSubstitution>& subs, GBTrace& trace) {
        GroebnerBasis gb = buchberger_ideal(substituted_gens(gens, subs), TermOrder::weight(w),
                                            &trace);
        std::vector<WeylElement> forms;
        for (const auto& g : gb.gens) forms.push_back(g[0].initial_form(w));
        return normalized_set(std::move(forms));
    };
    auto absorbable = [&](const std::vector<WeylElement>& parent,
                          const std::vector<ParamSubstitution>& bsubs,
                          const std::vector<WeylElement>& child) {
        std::vector<WeylElement> pv;
        for (const auto& g : parent) {
            WeylElement e = detail::subst_all(g, bsubs);
            if (!e.is_zero()) pv.push_back(e);
        }
        return normalized_set(std::move(pv)) == child;
    };
    return stratified_compute<std::vector<WeylElement>>(within, compute, absorbable);
}

// ---- generic b-function -------------------------------------------------

// Context for b(s): the parameters with one extra slot named "s" (kept last).
inline ParamCtxPtr bfun_ctx(const ParamCtxPtr& params) {
    std::vector<std::string> names = *params;
    names.push_back("s");
    return make_ctx(std::move(names));
}

namespace strata_detail {

// x_k -> u_k x_k, d_k -> v_k d_k for weighted slots; u, v are extra
// commutative variables appended to the context.
inline WeylElement torus_substitute(const WeylElement& e, const WeylCtxPtr& ext,
                                    const std::vector<std::size_t>& weighted) {
    std::size_t n = e.ctx()->vars.size();
    WeylElement out(ext, false);
    for (const auto& [m, c] : e.terms()) {
        WeylMono nm;
        nm.xe = m.xe;
        nm.de = m.de;
        nm.xe.resize(ext->vars.size(), 0);
        nm.de.resize(ext->vars.size(), 0);
        for (std::size_t j = 0; j < weighted.size(); ++j) {
            std::size_t k = weighted[j];
            nm.xe[n + 2 * j] = m.xe[k];      // u_k exponent
            nm.xe[n + 2 * j + 1] = m.de[k];  // v_k exponent
        }
        out.add_term(nm, c);
    }
    return out;
}

// Distraction of a torus-homogeneous element x^a p(theta) d^b:
//   [theta]^a p(theta - b) [theta]_b
// with [theta]^a = prod prod (theta_i + l) and [theta]_b = prod prod
// (theta_i - l). The element must have a uniform imbalance vector.
inline WeylElement theta_rewrite(const WeylElement& e, const WeylCtxPtr& theta_ctx) {
    std::size_t n = e.ctx()->vars.size();
    if (e.is_zero()) return WeylElement(theta_ctx);
    Expvec d(n, 0);
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        for (std::size_t i = 0; i < n; ++i) {
            int di = m.de[i] - m.xe[i];
            if (first)
                d[i] = di;
            else if (d[i] != di)
                throw UnsupportedError("element is not torus-homogeneous: " + e.str());
        }
        first = false;
    }
    Expvec a(n, 0), b(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::max(-d[i], 0);
        b[i] = std::max(d[i], 0);
    }
    WeylElement p(theta_ctx);
    for (const auto& [m, c] : e.terms()) {
        WeylElement term = WeylElement::scalar(theta_ctx, c);
        for (std::size_t i = 0; i < n; ++i) {
            int gamma = m.xe[i] - a[i];
            for (int l = 0; l < gamma; ++l)
                term = term * (WeylElement::x(theta_ctx, i) -
                               WeylElement::constant(theta_ctx, Rat(l)));
        }
        p += term;
    }
    // p(theta - b)
    std::map<std::size_t, Rat> shift;
    for (std::size_t i = 0; i < n; ++i)
        if (b[i] != 0) shift[i] = Rat(-b[i]);
    WeylElement out = shift.empty() ? p : p.change_vars_shift(shift);
    for (std::size_t i = 0; i < n; ++i) {
        for (int l = 1; l <= a[i]; ++l)
            out = out * (WeylElement::x(theta_ctx, i) + WeylElement::constant(theta_ctx, Rat(l)));
        for (int l = 0; l < b[i]; ++l)
            out = out * (WeylElement::x(theta_ctx, i) - WeylElement::constant(theta_ctx, Rat(l)));
    }
    return out;
}

}  // namespace strata_detail

// The monic-up-to-content generator of in_{(-w,w)}(I) cap C[s] with
// s = sum w_i theta_i, on each stratum. Positive weights only.
inline StratifiedResult<ParamPoly> generic_bfunction(const std::vector<WeylElement>& gens,
                                                     const std::vector<int>& w,
                                                     const Stratum& within) {
    if (gens.empty()) throw std::invalid_argument("empty ideal");
    const WeylCtxPtr& ctx = gens.front().ctx();
    std::size_t n = ctx->vars.size();
    std::vector<std::size_t> weighted;
    for (std::size_t k = 0; k < n; ++k)
        if (w[k] != 0) weighted.push_back(k);

    // u,v-extended and theta/s contexts are shared across strata
    std::vector<std::string> ext_vars = ctx->vars;
    for (std::size_t k : weighted) {
        ext_vars.push_back("u_" + ctx->vars[k]);
        ext_vars.push_back("v_" + ctx->vars[k]);
    }
    WeylCtxPtr ext = make_weyl_ctx(ctx->params, ext_vars);
    std::vector<std::string> theta_vars;
    for (std::size_t i = 0; i < n; ++i) theta_vars.push_back("t_" + ctx->vars[i]);
    theta_vars.push_back("s");
    WeylCtxPtr tctx = make_weyl_ctx(ctx->params, theta_vars);

    auto compute = [&](const std::vector<ParamSubstitution>& subs, GBTrace& trace) -> ParamPoly {
        // step 1: initial forms of a (-w,w) basis
        GroebnerBasis gb = buchberger_ideal(substituted_gens(gens, subs), TermOrder::weight(w),
                                            &trace);
        std::vector<WeylElement> forms;
        for (const auto& g : gb.gens) forms.push_back(g[0].initial_form(w).normalized_primitive());
        forms = normalized_set(std::move(forms));

        // step 2: torus substitution, adjoin 1 - u_k v_k, eliminate u, v
        std::vector<WeylElement> J;
        for (const auto& f : forms) J.push_back(strata_detail::torus_substitute(f, ext, weighted));
        for (std::size_t j = 0; j < weighted.size(); ++j) {
            WeylElement rel = WeylElement::constant(ext, 1) -
                              WeylElement::x(ext, n + 2 * j) * WeylElement::x(ext, n + 2 * j + 1);
            J.push_back(rel);
        }
        std::vector<std::size_t> uv_slots;
        for (std::size_t j = 0; j < 2 * weighted.size(); ++j) uv_slots.push_back(n + j);
        GroebnerBasis egb = ring_block_basis(J, {uv_slots}, &trace);
        std::vector<WeylElement> fixed;
        for (const auto& g : egb.gens) {
            bool free_uv = true;
            for (const auto& [m, c] : g[0].terms())
                for (std::size_t j = 0; j < 2 * weighted.size(); ++j)
                    if (m.xe[n + j] > 0 || m.de[n + j] > 0) free_uv = false;
            if (!free_uv) continue;
            // back to the original variable set
            WeylElement e(ctx, false);
            for (const auto& [m, c] : g[0].terms()) {
                WeylMono nm;
                nm.xe.assign(m.xe.begin(), m.xe.begin() + static_cast<long>(n));
                nm.de.assign(m.de.begin(), m.de.begin() + static_cast<long>(n));
                e.add_term(nm, c);
            }
            fixed.push_back(e);
        }
        if (fixed.empty()) throw NonSpecializableError("no torus-fixed elements found");

        // step 3: theta rewrite, adjoin s - sum w_i theta_i, eliminate theta
        std::vector<WeylElement> T;
        for (const auto& f : fixed) T.push_back(strata_detail::theta_rewrite(f, tctx));
        WeylElement srel = WeylElement::x(tctx, n);
        for (std::size_t i = 0; i < n; ++i)
            srel -= WeylElement::constant(tctx, Rat(w[i])) * WeylElement::x(tctx, i);
        T.push_back(srel);
        auto elim = eliminate_to_univariate(T, n, &trace);
        if (!elim) throw NonSpecializableError("initial ideal meets C[s] trivially");

        // repackage as a polynomial in (params, s)
        ParamCtxPtr bctx = bfun_ctx(ctx->params);
        ParamPoly b(bctx);
        for (const auto& [m, c] : elim->terms()) {
            ParamPoly cp = c.as_polynomial();
            for (const auto& [pe, rat] : cp.terms()) {
                Expvec e(bctx->size(), 0);
                for (std::size_t i = 0; i < pe.size(); ++i) e[i] = pe[i];
                e[bctx->size() - 1] = m.xe[n];
                ParamPoly t(bctx);
                t += ParamPoly::constant(bctx, rat);
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i]) t *= ParamPoly::variable(bctx, i, e[i]);
                b += t;
            }
        }
        ParamPoly bp = b.primitive_part();
        // sign: positive coefficient on the highest s-power
        std::size_t spos = bctx->size() - 1;
        auto cs = bp.coeffs_in(spos);
        if (!cs.empty() && !cs.back().is_zero() && cs.back().lead_coeff() < 0) bp = -bp;
        return bp;
    };

    auto absorbable = [&](const ParamPoly& parent, const std::vector<ParamSubstitution>& bsubs,
                          const ParamPoly& child) {
        // substitutions live in the base parameter ctx; extend to (params, s)
        ParamCtxPtr bctx = bfun_ctx(ctx->params);
        ParamPoly p = parent;
        for (const auto& s : bsubs) {
            ParamPoly v(bctx);
            for (const auto& [pe, rat] : s.value.terms()) {
                Expvec e(bctx->size(), 0);
                for (std::size_t i = 0; i < pe.size(); ++i) e[i] = pe[i];
                ParamPoly t = ParamPoly::constant(bctx, rat);
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i]) t *= ParamPoly::variable(bctx, i, e[i]);
                v += t;
            }
            p = p.substitute(s.index, v);
        }
        ParamPoly pn = p.primitive_part();
        std::size_t spos = bctx->size() - 1;
        auto cs = pn.coeffs_in(spos);
        if (!cs.empty() && !cs.back().is_zero() && cs.back().lead_coeff() < 0) pn = -pn;
        return pn == child;
    };
    return stratified_compute<ParamPoly>(within, compute, absorbable);
}

// ---- parametric linear algebra -------------------------------------------

// Rank of a ParamPoly matrix on each stratum, by fraction-free elimination
// with every pivot recorded as a critical coefficient.
inline StratifiedResult<int> parametric_rank(const std::vector<std::vector<ParamPoly>>& mat,
                                             const ParamCtxPtr& params, const Stratum& within) {
    auto compute = [&](const std::vector<ParamSubstitution>& subs, GBTrace& trace) -> int {
        std::vector<std::vector<ParamPoly>> m;
        for (const auto& row : mat) {
            std::vector<ParamPoly> r;
            for (const auto& e : row) r.push_back(detail::subst_all(e, subs));
            m.push_back(std::move(r));
        }
        std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols && rank < rows; ++col) {
            std::size_t piv = rows;
            for (std::size_t r = rank; r < rows; ++r)
                if (!m[r][col].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv == rows) continue;
            std::swap(m[rank], m[piv]);
            trace.note(m[rank][col]);
            for (std::size_t r = rank + 1; r < rows; ++r) {
                if (m[r][col].is_zero()) continue;
                ParamPoly f = m[r][col];
                for (std::size_t cc = 0; cc < cols; ++cc)
                    m[r][cc] = m[r][cc] * m[rank][col] - m[rank][cc] * f;
            }
            ++rank;
        }
        return static_cast<int>(rank);
    };
    auto absorbable = [](const int& parent, const std::vector<ParamSubstitution>&,
                         const int& child) { return parent == child; };
    return stratified_compute<int>(within, compute, absorbable);
}

}  // namespace weylkit
