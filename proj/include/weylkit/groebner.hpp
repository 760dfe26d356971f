#pragma once

#include "weylkit/weyl.hpp"

#include <deque>
#include <set>

namespace weylkit {

struct NotInvertibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoWitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonSpecializableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of a free left module D^m.
class ModuleElement {
public:
    ModuleElement() = default;
    explicit ModuleElement(std::vector<WeylElement> comps) : comps_(std::move(comps)) {}

    static ModuleElement zero(const WeylCtxPtr& ctx, std::size_t m, bool homog = false) {
        return ModuleElement(std::vector<WeylElement>(m, WeylElement(ctx, homog)));
    }

    std::size_t rank() const { return comps_.size(); }
    const WeylElement& operator[](std::size_t i) const { return comps_[i]; }
    WeylElement& operator[](std::size_t i) { return comps_[i]; }
    const std::vector<WeylElement>& comps() const { return comps_; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    ModuleElement operator-() const {
        ModuleElement r(*this);
        for (auto& c : r.comps_) c = -c;
        return r;
    }
    ModuleElement& operator+=(const ModuleElement& o) {
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
        return *this;
    }
    ModuleElement& operator-=(const ModuleElement& o) {
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
        return *this;
    }
    friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
    friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }

    friend ModuleElement operator*(const WeylElement& a, ModuleElement e) {
        for (auto& c : e.comps_) c = a * c;
        return e;
    }
    ModuleElement& operator*=(const ParamScalar& c) {
        for (auto& comp : comps_) comp *= c;
        return *this;
    }
    friend ModuleElement operator*(ModuleElement e, const ParamScalar& c) { return e *= c; }
    friend ModuleElement operator*(const ParamScalar& c, ModuleElement e) { return e *= c; }

    bool operator==(const ModuleElement& o) const { return comps_ == o.comps_; }

    int compare(const ModuleElement& o) const {
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            int c = comps_[i].compare(o.comps_[i]);
            if (c != 0) return c;
        }
        return 0;
    }

    ModuleElement dehomogenize() const {
        ModuleElement r(*this);
        for (auto& c : r.comps_) c = c.dehomogenize();
        return r;
    }

    ModuleElement homogenize_total() const {
        // joint total-degree homogenization keeps the POT leading structure
        int top = 0;
        for (const auto& c : comps_)
            for (const auto& [m, v] : c.terms()) top = std::max(top, m.total_degree());
        ModuleElement r(*this);
        for (auto& c : r.comps_) {
            WeylElement h(c.ctx(), true);
            for (const auto& [m, v] : c.terms()) {
                WeylMono nm = m;
                nm.he = top - m.total_degree();
                h.add_term(nm, v);
            }
            c = h;
        }
        return r;
    }

    struct PrimSplit;

    ModuleElement normalized_primitive() const;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += comps_[i].str();
        }
        return s + ")";
    }

private:
    std::vector<WeylElement> comps_;
};

// old = content * elem, with elem primitive polynomial-coefficient and
// sign-normalized.
struct ModuleElement::PrimSplit {
    ModuleElement elem;
    ParamScalar content;
};

inline ModuleElement::PrimSplit primitive_split(const ModuleElement& me) {
    if (me.is_zero()) throw std::logic_error("primitive split of zero");
    const WeylCtxPtr& ctx = me[0].ctx();
    ParamPoly denlcm = ParamPoly::constant(ctx->params, 1);
    for (const auto& comp : me.comps())
        for (const auto& [m, c] : comp.terms()) {
            ParamPoly g = poly_gcd(denlcm, c.den());
            denlcm = *(denlcm * c.den()).divide_exact(g);
        }
    std::vector<ParamPoly> nums;
    for (const auto& comp : me.comps())
        for (const auto& [m, c] : comp.terms())
            nums.push_back(c.num() * *denlcm.divide_exact(c.den()));
    ParamPoly g = nums.front();
    for (std::size_t i = 1; i < nums.size() && !g.is_constant(); ++i) g = poly_gcd(g, nums[i]);
    Rat cont = 0;
    for (auto& p : nums) {
        if (!g.is_constant()) p = *p.divide_exact(g);
        Rat cc = p.content();
        if (cc < 0) cc = -cc;
        cont = (cont == 0) ? cc
                           : Rat(int_gcd(rat_num(cont) * rat_den(cc), rat_num(cc) * rat_den(cont)),
                                 rat_den(cont) * rat_den(cc));
    }
    ModuleElement r = me;
    std::size_t i = 0;
    for (std::size_t ci = 0; ci < r.rank(); ++ci) {
        WeylElement ne(r[ci].ctx(), r[ci].homogenized());
        for (const auto& [m, c] : r[ci].terms()) {
            ParamPoly p = nums[i++];
            p *= Rat(1) / cont;
            ne.add_term(m, ParamScalar(p));
        }
        r[ci] = ne;
    }
    int sign = 1;
    for (std::size_t ci = 0; ci < r.rank(); ++ci) {
        if (r[ci].is_zero()) continue;
        if (r[ci].terms().rbegin()->second.num().lead_coeff() < 0) {
            sign = -1;
            for (std::size_t cj = 0; cj < r.rank(); ++cj) r[cj] = -r[cj];
        }
        break;
    }
    ParamPoly cnum = g.is_constant() ? ParamPoly::constant(ctx->params, g.constant_value())
                                     : g;
    cnum *= cont * Rat(sign);
    return ModuleElement::PrimSplit{std::move(r), ParamScalar(cnum, denlcm)};
}

inline ModuleElement ModuleElement::normalized_primitive() const {
    if (is_zero()) return *this;
    return primitive_split(*this).elem;
}

// Collected nonvanishing requirements from a run over the rational function
// field; specializations keeping all of them nonzero replay the computation.
struct GBTrace {
    std::vector<ParamPoly> critical;

    void note(const ParamPoly& p) {
        if (p.is_zero()) throw std::logic_error("vanishing critical coefficient");
        if (p.is_constant()) return;
        ParamPoly n = p.primitive_part();
        for (const auto& q : critical)
            if (q == n) return;
        critical.push_back(n);
    }
    void note(const ParamScalar& c) {
        note(c.num());
        note(c.den());
    }
};

struct GroebnerBasis {
    std::vector<ModuleElement> gens;
    TermOrder order = TermOrder::canonical();
    std::size_t rank = 1;
    bool reduced = false;
    bool weight_route = false;  // computed through the homogenized algebra

    const WeylCtxPtr& ctx() const { return gens.front()[0].ctx(); }
    std::vector<WeylElement> ideal_gens() const {
        std::vector<WeylElement> out;
        for (const auto& g : gens) out.push_back(g[0]);
        return out;
    }
};

namespace gb_detail {

struct Lead {
    std::size_t pos = 0;
    WeylMono mono;
    ParamScalar coeff;
};

inline Lead lead_of(const ModuleElement& e, const TermOrder& ord) {
    for (std::size_t p = 0; p < e.rank(); ++p) {
        if (!e[p].is_zero()) {
            const auto& [m, c] = e[p].lead(ord);
            return Lead{p, m, c};
        }
    }
    throw std::logic_error("lead of zero module element");
}

inline WeylMono mono_lcm(const WeylMono& a, const WeylMono& b) {
    WeylMono r = a;
    for (std::size_t i = 0; i < r.xe.size(); ++i) {
        r.xe[i] = std::max(a.xe[i], b.xe[i]);
        r.de[i] = std::max(a.de[i], b.de[i]);
    }
    r.he = std::max(a.he, b.he);
    return r;
}

inline WeylMono mono_quot(const WeylMono& a, const WeylMono& b) {
    WeylMono r = a;
    for (std::size_t i = 0; i < r.xe.size(); ++i) {
        r.xe[i] = a.xe[i] - b.xe[i];
        r.de[i] = a.de[i] - b.de[i];
    }
    r.he = a.he - b.he;
    return r;
}

inline WeylElement mono_element(const WeylCtxPtr& ctx, const WeylMono& m, bool homog) {
    return WeylElement::monomial(ctx, m, ParamScalar::constant(ctx->params, 1), homog);
}

}  // namespace gb_detail

// One cross-multiplied reduction step of e by g at the given term of e.
// Returns lc(g)*e - c*(u*g), content-normalized by the caller.
inline ModuleElement reduction_step(const ModuleElement& e, const ModuleElement& g,
                                    std::size_t pos, const WeylMono& mono, const ParamScalar& coeff,
                                    const gb_detail::Lead& gl, GBTrace* trace) {
    const WeylCtxPtr& ctx = e[0].ctx();
    bool homog = e[0].homogenized() || g[0].homogenized();
    WeylMono u = gb_detail::mono_quot(mono, gl.mono);
    WeylElement mult = gb_detail::mono_element(ctx, u, homog);
    ModuleElement r = e * gl.coeff - coeff * (mult * g);
    if (trace) {
        trace->note(gl.coeff);
        trace->note(coeff);
    }
    return r;
}

// Full normal form of e against basis elements (well-orders only). The result
// r satisfies r = s*e - (combination of basis) for a nonzero s in K, and is
// rescaled so that e - r lies in the module generated by the basis.
inline ModuleElement normal_form(const ModuleElement& e, const std::vector<ModuleElement>& basis,
                                 const TermOrder& ord, GBTrace* trace = nullptr) {
    if (e.is_zero() || basis.empty()) return e;
    std::vector<gb_detail::Lead> leads;
    leads.reserve(basis.size());
    for (const auto& g : basis) leads.push_back(gb_detail::lead_of(g, ord));

    ModuleElement r = e;
    ParamScalar scale = ParamScalar::constant(e[0].ctx()->params, 1);
    bool progress = true;
    while (progress && !r.is_zero()) {
        progress = false;
        // largest reducible term across all positions
        const WeylMono* best_mono = nullptr;
        std::size_t best_pos = 0, best_g = 0;
        ParamScalar best_coeff;
        for (std::size_t p = 0; p < r.rank(); ++p) {
            for (const auto& [m, c] : r[p].terms()) {
                for (std::size_t gi = 0; gi < basis.size(); ++gi) {
                    if (leads[gi].pos != p || !leads[gi].mono.divides(m)) continue;
                    if (!best_mono || p < best_pos ||
                        (p == best_pos && ord.compare(m, *best_mono) > 0)) {
                        best_mono = &m;
                        best_pos = p;
                        best_g = gi;
                        best_coeff = c;
                    }
                    break;
                }
            }
        }
        if (best_mono) {
            WeylMono mono = *best_mono;
            r = reduction_step(r, basis[best_g], best_pos, mono, best_coeff, leads[best_g], trace);
            scale *= leads[best_g].coeff;
            if (!r.is_zero()) {
                // keep coefficients primitive; the removed content is a
                // critical quantity for specialization
                auto sp = primitive_split(r);
                r = sp.elem;
                scale = scale / sp.content;
                if (trace) trace->note(sp.content);
            }
            progress = true;
        }
    }
    if (!r.is_zero()) r *= scale.inverse();
    return r;
}

inline WeylElement normal_form(const WeylElement& e, const GroebnerBasis& gb,
                               GBTrace* trace = nullptr) {
    if (gb.weight_route) throw UnsupportedError("normal form needs a well-order basis");
    ModuleElement me(std::vector<WeylElement>{e});
    return normal_form(me, gb.gens, gb.order, trace)[0];
}

inline ModuleElement normal_form(const ModuleElement& e, const GroebnerBasis& gb,
                                 GBTrace* trace = nullptr) {
    if (gb.weight_route) throw UnsupportedError("normal form needs a well-order basis");
    return normal_form(e, gb.gens, gb.order, trace);
}

namespace gb_detail {

// Buchberger loop over a well-order. Inputs must already be normalized and
// homogeneous when running inside the homogenized algebra.
inline std::vector<ModuleElement> buchberger_core(std::vector<ModuleElement> basis,
                                                  const TermOrder& ord, GBTrace* trace,
                                                  std::size_t pair_cap = 200000) {
    std::vector<Lead> leads;
    for (auto& b : basis) leads.push_back(lead_of(b, ord));
    if (trace)
        for (const auto& l : leads) trace->note(l.coeff);

    struct Pair {
        std::size_t i, j;
        WeylMono lcm;
    };
    std::deque<Pair> pairs;
    auto queue_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (leads[i].pos != leads[j].pos) continue;
            pairs.push_back(Pair{i, j, mono_lcm(leads[i].mono, leads[j].mono)});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) queue_pairs(j);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > pair_cap) throw std::runtime_error("Buchberger pair cap exceeded");
        // normal strategy: minimal lcm under the order, then lowest indices
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            int c = ord.compare(pairs[k].lcm, pairs[best].lcm);
            if (c < 0 || (c == 0 && std::make_pair(pairs[k].i, pairs[k].j) <
                                        std::make_pair(pairs[best].i, pairs[best].j)))
                best = k;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));

        const auto& f = basis[pr.i];
        const auto& g = basis[pr.j];
        const auto& lf = leads[pr.i];
        const auto& lg = leads[pr.j];
        const WeylCtxPtr& ctx = f[0].ctx();
        bool homog = f[0].homogenized() || g[0].homogenized();
        WeylElement uf = mono_element(ctx, mono_quot(pr.lcm, lf.mono), homog);
        WeylElement ug = mono_element(ctx, mono_quot(pr.lcm, lg.mono), homog);
        ModuleElement s = (uf * f) * lg.coeff - (ug * g) * lf.coeff;
        if (trace) {
            trace->note(lf.coeff);
            trace->note(lg.coeff);
        }
        if (s.is_zero()) continue;
        {
            auto sp = primitive_split(s);
            s = std::move(sp.elem);
            if (trace) trace->note(sp.content);
        }
        s = normal_form(s, basis, ord, trace);
        if (s.is_zero()) continue;
        {
            auto sp = primitive_split(s);
            s = std::move(sp.elem);
            if (trace) trace->note(sp.content);
        }
        basis.push_back(s);
        leads.push_back(lead_of(s, ord));
        if (trace) trace->note(leads.back().coeff);
        queue_pairs(basis.size() - 1);
    }
    return basis;
}

inline std::vector<ModuleElement> minimalize(std::vector<ModuleElement> basis, const TermOrder& ord) {
    std::vector<Lead> leads;
    for (auto& b : basis) leads.push_back(lead_of(b, ord));
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || leads[j].pos != leads[i].pos) continue;
            if (!leads[j].mono.divides(leads[i].mono)) continue;
            bool equal = leads[i].mono == leads[j].mono;
            if (!equal || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<ModuleElement> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) out.push_back(basis[i]);
    return out;
}

}  // namespace gb_detail

// Moving the parameters into the monomial world: each parameter becomes an
// extra commutative variable (an x-slot whose derivative never occurs), the
// coefficient field shrinks to Q. Coefficients must be polynomial.
inline WeylCtxPtr beta_vars_ctx(const WeylCtxPtr& ctx) {
    std::vector<std::string> vars = ctx->vars;
    for (const auto& p : *ctx->params) vars.push_back(p);
    return make_weyl_ctx(make_ctx({}), std::move(vars));
}

inline WeylElement to_beta_vars(const WeylElement& e, const WeylCtxPtr& ext) {
    std::size_t n = e.ctx()->vars.size();
    std::size_t np = e.ctx()->params->size();
    WeylElement out(ext, e.homogenized());
    for (const auto& [m, c] : e.terms()) {
        if (!c.is_polynomial()) throw std::invalid_argument("rational coefficient in ring context");
        ParamPoly cp = c.as_polynomial();
        for (const auto& [pe, rat] : cp.terms()) {
            WeylMono nm;
            nm.xe = m.xe;
            nm.de = m.de;
            nm.he = m.he;
            nm.xe.resize(n + np, 0);
            nm.de.resize(n + np, 0);
            for (std::size_t i = 0; i < np; ++i) nm.xe[n + i] = pe[i];
            out.add_term(nm, ParamScalar::constant(ext->params, rat));
        }
    }
    return out;
}

inline WeylElement from_beta_vars(const WeylElement& e, const WeylCtxPtr& orig) {
    std::size_t n = orig->vars.size();
    std::size_t np = orig->params->size();
    WeylElement out(orig, e.homogenized());
    for (const auto& [m, c] : e.terms()) {
        WeylMono nm;
        nm.xe.assign(m.xe.begin(), m.xe.begin() + static_cast<long>(n));
        nm.de.assign(m.de.begin(), m.de.begin() + static_cast<long>(n));
        nm.he = m.he;
        ParamPoly coeff = ParamPoly::constant(orig->params, c.as_polynomial().constant_value());
        for (std::size_t i = 0; i < np; ++i)
            if (m.xe[n + i] > 0) coeff *= ParamPoly::variable(orig->params, i, m.xe[n + i]);
        out.add_term(nm, ParamScalar(coeff));
    }
    return out;
}

// ---- computations over D[beta] ---------------------------------------------
//
// The parameters move into trailing commutative slots and the whole run uses
// rational coefficients; the returned leading beta-coefficients are the
// nonvanishing conditions under which the basis specializes to a basis
// (generic branch of a comprehensive system).

struct RingGB {
    std::vector<WeylElement> gens;     // mapped back, ParamPoly coefficients
    std::vector<ParamPoly> criticals;  // leading coefficients over the order
    bool unit_on_generic = false;      // basis met C[beta]: generic ideal is (1)
};

struct RingOrderSpec {
    bool weight = false;
    std::vector<int> w;                            // weight mode
    std::vector<std::vector<std::size_t>> groups;  // block mode, real slot numbering
};

inline RingGB ring_groebner(const std::vector<WeylElement>& gens, const RingOrderSpec& spec) {
    if (gens.empty()) return RingGB{};
    const WeylCtxPtr& ctx = gens.front().ctx();
    std::size_t n = ctx->vars.size();
    std::size_t np = ctx->params->size();
    WeylCtxPtr ext = beta_vars_ctx(ctx);
    std::size_t ne = n + np;

    TermOrder ring_ord = TermOrder::canonical();
    if (spec.weight) {
        ring_ord = TermOrder::weight_ring(spec.w, n);
    } else {
        // remap real slot numbers into the extended context and keep the
        // parameter slots in the implicit last group
        std::vector<std::vector<std::size_t>> groups;
        for (const auto& g : spec.groups) {
            std::vector<std::size_t> gg;
            for (std::size_t s : g) gg.push_back(s < n ? s : ne + (s - n));
            groups.push_back(std::move(gg));
        }
        // everything real that is unlisted still precedes the parameters
        std::vector<bool> seen(2 * n, false);
        for (const auto& g : spec.groups)
            for (std::size_t s : g) seen[s] = true;
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < 2 * n; ++s)
            if (!seen[s]) rest.push_back(s < n ? s : ne + (s - n));
        if (!rest.empty()) groups.push_back(std::move(rest));
        ring_ord = TermOrder::block(ne, groups);
    }

    std::vector<ModuleElement> work;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        WeylElement e = to_beta_vars(g.normalized_primitive(), ext);
        if (spec.weight) e = e.homogenize_total_real(n);
        work.push_back(ModuleElement(std::vector<WeylElement>{e}).normalized_primitive());
    }
    if (work.empty()) return RingGB{};

    auto res = gb_detail::buchberger_core(std::move(work), ring_ord, nullptr);

    RingGB out;
    std::vector<WeylElement> mapped;
    for (const auto& me : res) {
        const WeylElement& eh = me[0];
        if (eh.is_zero()) continue;
        // leading coefficient: the beta-polynomial attached to the maximal
        // real monomial (taken before dehomogenizing)
        const WeylMono& lead = eh.lead(ring_ord).first;
        ParamPoly lc(ctx->params);
        for (const auto& [m, c] : eh.terms()) {
            bool same_real = m.he == lead.he;
            for (std::size_t i = 0; i < n && same_real; ++i)
                if (m.xe[i] != lead.xe[i] || m.de[i] != lead.de[i]) same_real = false;
            if (!same_real) continue;
            ParamPoly mono = ParamPoly::constant(ctx->params, c.as_polynomial().constant_value());
            for (std::size_t i = 0; i < np; ++i)
                if (m.xe[n + i] > 0) mono *= ParamPoly::variable(ctx->params, i, m.xe[n + i]);
            lc += mono;
        }
        WeylElement e = spec.weight ? eh.dehomogenize() : eh;
        WeylElement back = from_beta_vars(e, ctx).normalized_primitive();
        bool pure_beta = true;
        for (const auto& [m, c] : back.terms())
            if (m.total_degree() != 0) pure_beta = false;
        if (pure_beta) {
            out.unit_on_generic = true;
            out.criticals.push_back(back.scalar_value().num());
            continue;
        }
        out.criticals.push_back(lc);
        mapped.push_back(back);
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const WeylElement& a, const WeylElement& b) { return a.compare(b) < 0; });
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    out.gens = std::move(mapped);
    return out;
}

// Groebner basis of the left submodule of D^m generated by gens. Weight
// orders run transparently through the homogenized algebra; the returned
// generators are h-free.
inline GroebnerBasis buchberger(const std::vector<ModuleElement>& gens, const TermOrder& ord,
                                GBTrace* trace = nullptr, bool want_reduced = true) {
    GroebnerBasis gb;
    gb.order = ord;
    std::vector<ModuleElement> work;
    std::size_t rank = 0;
    for (const auto& g : gens) {
        if (rank == 0)
            rank = g.rank();
        else if (g.rank() != rank)
            throw std::invalid_argument("mixed module ranks");
        if (!g.is_zero()) {
            auto sp = primitive_split(g);
            if (trace) trace->note(sp.content);
            work.push_back(std::move(sp.elem));
        }
    }
    gb.rank = rank == 0 ? 1 : rank;
    if (work.empty()) return gb;

    if (ord.is_weight()) {
        gb.weight_route = true;
        for (auto& g : work) g = g.homogenize_total();
        auto res = gb_detail::buchberger_core(std::move(work), ord, trace);
        std::vector<ModuleElement> dehom;
        for (auto& g : res) {
            ModuleElement dg = g.dehomogenize();
            if (dg.is_zero()) continue;
            auto sp = primitive_split(dg);
            if (trace) trace->note(sp.content);
            dehom.push_back(std::move(sp.elem));
        }
        std::sort(dehom.begin(), dehom.end(),
                  [](const ModuleElement& a, const ModuleElement& b) { return a.compare(b) < 0; });
        dehom.erase(std::unique(dehom.begin(), dehom.end()), dehom.end());
        gb.gens = std::move(dehom);
        if (trace)
            for (const auto& g : gb.gens) trace->note(gb_detail::lead_of(g, ord).coeff);
        return gb;
    }

    auto res = gb_detail::buchberger_core(std::move(work), ord, trace);
    res = gb_detail::minimalize(std::move(res), ord);
    if (want_reduced) {
        // tail-reduce each element against the others
        bool changed = true;
        std::size_t rounds = 0;
        while (changed && ++rounds < 50) {
            changed = false;
            for (std::size_t i = 0; i < res.size(); ++i) {
                std::vector<ModuleElement> others;
                for (std::size_t j = 0; j < res.size(); ++j)
                    if (j != i) others.push_back(res[j]);
                ModuleElement nf = normal_form(res[i], others, ord, trace);
                if (!nf.is_zero()) {
                    auto sp = primitive_split(nf);
                    nf = std::move(sp.elem);
                    if (trace) trace->note(sp.content);
                }
                if (!(nf == res[i])) {
                    if (nf.is_zero()) {
                        res.erase(res.begin() + static_cast<long>(i));
                        --i;
                    } else {
                        res[i] = nf;
                    }
                    changed = true;
                }
            }
        }
        gb.reduced = true;
    }
    std::sort(res.begin(), res.end(),
              [](const ModuleElement& a, const ModuleElement& b) { return a.compare(b) < 0; });
    gb.gens = std::move(res);
    if (trace)
        for (const auto& g : gb.gens) trace->note(gb_detail::lead_of(g, ord).coeff);
    return gb;
}

inline GroebnerBasis buchberger_ideal(const std::vector<WeylElement>& gens, const TermOrder& ord,
                                      GBTrace* trace = nullptr, bool want_reduced = true) {
    // weight orders run over D[beta]: homogenized, parameters in the
    // monomials, integer arithmetic throughout
    if (ord.is_weight() && !gens.empty()) {
        RingOrderSpec spec;
        spec.weight = true;
        spec.w = ord.weights();
        RingGB rgb = ring_groebner(gens, spec);
        if (trace)
            for (const auto& c : rgb.criticals) trace->note(c);
        if (rgb.unit_on_generic)
            throw NonSpecializableError("ideal meets C[beta]; no uniform basis on the generic cell");
        GroebnerBasis gb;
        gb.order = ord;
        gb.weight_route = true;
        for (const auto& g : rgb.gens) gb.gens.push_back(ModuleElement(std::vector<WeylElement>{g}));
        return gb;
    }
    std::vector<ModuleElement> mod;
    for (const auto& g : gens) mod.push_back(ModuleElement(std::vector<WeylElement>{g}));
    return buchberger(mod, ord, trace, want_reduced);
}

// Elimination-order ideal basis over D[beta]; criticals reported via trace.
inline GroebnerBasis ring_block_basis(const std::vector<WeylElement>& gens,
                                      const std::vector<std::vector<std::size_t>>& groups,
                                      GBTrace* trace = nullptr) {
    RingOrderSpec spec;
    spec.groups = groups;
    RingGB rgb = ring_groebner(gens, spec);
    if (trace)
        for (const auto& c : rgb.criticals) trace->note(c);
    GroebnerBasis gb;
    if (!gens.empty())
        gb.order = TermOrder::block(gens.front().ctx()->vars.size(), groups);
    if (rgb.unit_on_generic) {
        const WeylCtxPtr& ctx = gens.front().ctx();
        gb.gens.push_back(ModuleElement(std::vector<WeylElement>{WeylElement::constant(ctx, 1)}));
        return gb;
    }
    for (const auto& g : rgb.gens) gb.gens.push_back(ModuleElement(std::vector<WeylElement>{g}));
    return gb;
}

inline bool reduces_to_zero(const WeylElement& e, const GroebnerBasis& gb) {
    if (e.is_zero()) return true;
    if (gb.gens.empty()) return false;
    return normal_form(e, gb).is_zero();
}

// Canonical membership basis: grevlex reduced basis of a left ideal.
inline GroebnerBasis membership_basis(const std::vector<WeylElement>& gens) {
    return buchberger_ideal(gens, TermOrder::canonical());
}

struct InverseWitness {
    WeylElement inverse;   // s with s*target = cofactor mod ideal
    ParamPoly cofactor;    // nonzero element of C[beta]
};

// Solves s*target = b mod <ideal_gens> with b a nonzero polynomial in the
// parameters, by scanning the POT basis of {(target,1)} u {(l_i,0)}.
inline InverseWitness solve_inverse(const WeylElement& target,
                                    const std::vector<WeylElement>& ideal_gens,
                                    const TermOrder& inner = TermOrder::canonical()) {
    const WeylCtxPtr& ctx = target.ctx();
    std::vector<ModuleElement> mod;
    mod.push_back(ModuleElement({target, WeylElement::constant(ctx, 1)}));
    for (const auto& l : ideal_gens) mod.push_back(ModuleElement({l, WeylElement(ctx)}));
    GroebnerBasis gb = buchberger(mod, inner);

    const ModuleElement* best = nullptr;
    for (const auto& g : gb.gens) {
        if (g[0].is_zero() || !g[0].is_scalar() || g[1].is_zero()) continue;
        if (!best) {
            best = &g;
            continue;
        }
        const ParamPoly &bn = g[0].scalar_value().num(), &cur = (*best)[0].scalar_value().num();
        int dn = bn.total_degree(), dc = cur.total_degree();
        if (dn < dc || (dn == dc && g.compare(*best) < 0)) best = &g;
    }
    if (!best) throw NotInvertibleError("no inverse witness: " + target.str());
    ModuleElement w = best->normalized_primitive();
    ParamScalar b = w[0].scalar_value();
    InverseWitness out;
    out.inverse = w[1];
    out.cofactor = b.num();
    if (!b.den().is_constant()) throw std::logic_error("non-polynomial cofactor after normalization");
    Rat dc = b.den().constant_value();
    out.cofactor *= Rat(1) / dc;
    return out;
}

struct SaitoWitness {
    WeylElement E;
    ParamPoly b;
};

// E and b with E d^u = b d^v modulo the ideal. The parameters are adjoined as
// ring variables and ordered below the derivative slots in the support of v,
// and the module basis is scanned for an element whose first slot is b d^w
// with d^w | d^v.
inline SaitoWitness saito_E_b(const std::vector<WeylElement>& ideal_gens, const Expvec& u,
                              const Expvec& v) {
    if (ideal_gens.empty()) throw std::invalid_argument("empty ideal");
    const WeylCtxPtr& ctx = ideal_gens.front().ctx();
    std::size_t n = ctx->vars.size();
    std::size_t np = ctx->params->size();
    for (std::size_t i = 0; i < n; ++i)
        if (u[i] > 0 && v[i] > 0) throw std::invalid_argument("supports of u and v must be disjoint");

    WeylCtxPtr ext = beta_vars_ctx(ctx);
    std::size_t ne = n + np;
    std::vector<std::size_t> big;
    for (std::size_t i = 0; i < n; ++i) big.push_back(i);  // original x slots
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] == 0) big.push_back(ne + i);  // derivatives outside supp(v)
    std::vector<std::size_t> mid;
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] > 0) mid.push_back(ne + i);  // supp(v) derivatives above the parameters
    TermOrder inner = TermOrder::block(ne, {big, mid});

    WeylMono du;
    du.xe.assign(ne, 0);
    du.de = u;
    du.de.resize(ne, 0);
    WeylElement target = WeylElement::monomial(ext, du, ParamScalar::constant(ext->params, 1));

    std::vector<ModuleElement> mod;
    mod.push_back(ModuleElement({target, WeylElement::constant(ext, 1)}));
    for (const auto& l : ideal_gens)
        mod.push_back(ModuleElement({to_beta_vars(l, ext), WeylElement(ext)}));
    GroebnerBasis gb = buchberger(mod, inner);

    const ModuleElement* best = nullptr;
    Expvec bestw;
    int best_bdeg = -1;
    for (const auto& g : gb.gens) {
        if (g[0].is_zero()) continue;
        // every term must be the same d^w times a parameter monomial
        bool shape = true;
        Expvec w;
        int bdeg = 0;
        for (const auto& [m, c] : g[0].terms()) {
            for (std::size_t i = 0; i < n; ++i)
                if (m.xe[i] > 0) shape = false;
            if (m.he != 0 || expvec_total(m.de) < 0) shape = false;
            Expvec dw(m.de.begin(), m.de.begin() + static_cast<long>(n));
            if (w.empty())
                w = dw;
            else if (w != dw)
                shape = false;
            int pd = 0;
            for (std::size_t i = 0; i < np; ++i) pd += m.xe[n + i];
            bdeg = std::max(bdeg, pd);
            if (!shape) break;
        }
        if (!shape || w.empty()) continue;
        bool div = true;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] > v[i]) div = false;
        if (!div) continue;
        if (!best || bdeg < best_bdeg || (bdeg == best_bdeg && g.compare(*best) < 0)) {
            best = &g;
            bestw = w;
            best_bdeg = bdeg;
        }
    }
    if (!best) throw NoWitnessError("no b*d^w element found in the module basis");

    ModuleElement wit = best->normalized_primitive();
    SaitoWitness out;
    WeylElement bpart = from_beta_vars(wit[0], ctx);
    // strip d^w, leaving the parameter polynomial
    ParamPoly b(ctx->params);
    for (const auto& [m, c] : bpart.terms()) b += c.as_polynomial();
    out.b = b;
    WeylMono shift;
    shift.xe.assign(n, 0);
    shift.de.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) shift.de[i] = v[i] - bestw[i];
    out.E = gb_detail::mono_element(ctx, shift, false) * from_beta_vars(wit[1], ctx);
    if (!out.b.is_zero() && out.b.lead_coeff() < 0) {
        out.b = -out.b;
        out.E = -out.E;
    }
    return out;
}

// Minimal-degree generator of (commutative ideal) cap K[last variable]. The
// elements must be commutative, i.e. use only x-slots.
inline std::optional<WeylElement> eliminate_to_univariate(const std::vector<WeylElement>& gens,
                                                          std::size_t keep_var, GBTrace* trace) {
    if (gens.empty()) return std::nullopt;
    const WeylCtxPtr& ctx = gens.front().ctx();
    std::size_t n = ctx->vars.size();
    std::vector<std::size_t> big;
    for (std::size_t i = 0; i < n; ++i)
        if (i != keep_var) big.push_back(i);
    GroebnerBasis gb = ring_block_basis(gens, {big}, trace);
    const WeylElement* best = nullptr;
    for (const auto& g : gb.gens) {
        const WeylElement& e = g[0];
        bool only_keep = true;
        for (const auto& [m, c] : e.terms()) {
            for (std::size_t i = 0; i < n; ++i)
                if (i != keep_var && (m.xe[i] > 0 || m.de[i] > 0)) only_keep = false;
            if (expvec_total(m.de) > 0) only_keep = false;
        }
        if (!only_keep) continue;
        if (!best || e.terms().rbegin()->first.xe[keep_var] <
                         best->terms().rbegin()->first.xe[keep_var])
            best = &e;
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace weylkit
