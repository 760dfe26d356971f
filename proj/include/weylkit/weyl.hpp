#pragma once

#include "weylkit/paramscalar.hpp"

#include <array>
#include <functional>
#include <numeric>

namespace weylkit {

// Variable context of a Weyl algebra instance: the x-variable names plus the
// parameter universe of the coefficient field.
struct WeylCtx {
    ParamCtxPtr params;
    std::vector<std::string> vars;
};
using WeylCtxPtr = std::shared_ptr<const WeylCtx>;

inline WeylCtxPtr make_weyl_ctx(ParamCtxPtr params, std::vector<std::string> vars) {
    return std::make_shared<const WeylCtx>(WeylCtx{std::move(params), std::move(vars)});
}

// Normally ordered monomial x^p d^q h^r.
struct WeylMono {
    Expvec xe, de;
    int he = 0;

    int total_degree() const { return expvec_total(xe) + expvec_total(de) + he; }

    bool operator==(const WeylMono& o) const { return xe == o.xe && de == o.de && he == o.he; }

    bool divides(const WeylMono& o) const {
        for (std::size_t i = 0; i < xe.size(); ++i)
            if (xe[i] > o.xe[i] || de[i] > o.de[i]) return false;
        return he <= o.he;
    }
};

// Canonical storage order: graded reverse lex on (x, d, h).
struct CanonicalMonoLess {
    bool operator()(const WeylMono& a, const WeylMono& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        if (a.he != b.he) return a.he > b.he;  // reverse-lex from the back
        for (std::size_t i = a.de.size(); i-- > 0;)
            if (a.de[i] != b.de[i]) return a.de[i] > b.de[i];
        for (std::size_t i = a.xe.size(); i-- > 0;)
            if (a.xe[i] != b.xe[i]) return a.xe[i] > b.xe[i];
        return false;
    }
};

// Term orders are comparison strategies over WeylMono. Admissibility with the
// commutation relations holds because every block/weight comparison is
// degree-refining on the slots it sees.
class TermOrder {
public:
    enum class Kind { Canonical, Weight, WeightRing, Block };

    static TermOrder canonical() { return TermOrder(Kind::Canonical); }

    // (-w,w)-order: total degree (with h), then -w.p + w.q, then grevlex.
    // The leading total-degree key makes it a term order on the homogenized
    // algebra; on (-w,w)-homogeneous data it reduces to the weight order.
    static TermOrder weight(std::vector<int> w) {
        TermOrder t(Kind::Weight);
        t.w_ = std::move(w);
        return t;
    }

    // Weight order on the first nreal slots with any trailing (parameter)
    // slots compared last; used for computations over D[beta].
    static TermOrder weight_ring(std::vector<int> w, std::size_t nreal) {
        TermOrder t(Kind::WeightRing);
        t.w_ = std::move(w);
        t.n_ = nreal;
        return t;
    }

    // Elimination-style block order: earlier slot groups dominate. Slots are
    // 0..n-1 for x_i and n..2n-1 for d_i; unlisted slots form a final block.
    static TermOrder block(std::size_t n, std::vector<std::vector<std::size_t>> groups) {
        TermOrder t(Kind::Block);
        t.n_ = n;
        t.groups_ = std::move(groups);
        std::vector<bool> seen(2 * n, false);
        for (const auto& g : t.groups_)
            for (std::size_t s : g) seen.at(s) = true;
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < 2 * n; ++s)
            if (!seen[s]) rest.push_back(s);
        if (!rest.empty()) t.groups_.push_back(std::move(rest));
        return t;
    }

    // Positive if a > b.
    int compare(const WeylMono& a, const WeylMono& b) const {
        switch (kind_) {
            case Kind::Canonical:
                return grevlex_cmp(a, b);
            case Kind::Weight: {
                int da = a.total_degree(), db = b.total_degree();
                if (da != db) return da < db ? -1 : 1;
                long wa = weight_deg(a), wb = weight_deg(b);
                if (wa != wb) return wa < wb ? -1 : 1;
                return grevlex_cmp(a, b);
            }
            case Kind::WeightRing: {
                int da = real_degree(a), db = real_degree(b);
                if (da != db) return da < db ? -1 : 1;
                long wa = weight_deg(a), wb = weight_deg(b);
                if (wa != wb) return wa < wb ? -1 : 1;
                int c = real_grevlex_cmp(a, b);
                if (c != 0) return c;
                return grevlex_cmp(a, b);  // trailing parameter slots
            }
            case Kind::Block: {
                for (const auto& g : groups_) {
                    int c = group_cmp(a, b, g);
                    if (c != 0) return c;
                }
                if (a.he != b.he) return a.he < b.he ? -1 : 1;
                return 0;
            }
        }
        return 0;
    }

    bool is_weight() const { return kind_ == Kind::Weight || kind_ == Kind::WeightRing; }
    std::size_t real_slots() const { return n_; }
    const std::vector<int>& weights() const { return w_; }

    int real_degree(const WeylMono& m) const {
        int d = m.he;
        for (std::size_t i = 0; i < n_; ++i) d += m.xe[i] + m.de[i];
        return d;
    }

    long weight_deg(const WeylMono& m) const {
        long d = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) d += static_cast<long>(w_[i]) * (m.de[i] - m.xe[i]);
        return d;
    }

private:
    explicit TermOrder(Kind k) : kind_(k) {}

    static int grevlex_cmp(const WeylMono& a, const WeylMono& b) {
        CanonicalMonoLess lt;
        if (lt(a, b)) return -1;
        if (lt(b, a)) return 1;
        return 0;
    }

    int real_grevlex_cmp(const WeylMono& a, const WeylMono& b) const {
        if (a.he != b.he) return a.he < b.he ? 1 : -1;  // reverse-lex tail
        for (std::size_t i = n_; i-- > 0;)
            if (a.de[i] != b.de[i]) return a.de[i] > b.de[i] ? -1 : 1;
        for (std::size_t i = n_; i-- > 0;)
            if (a.xe[i] != b.xe[i]) return a.xe[i] > b.xe[i] ? -1 : 1;
        return 0;
    }

    int group_cmp(const WeylMono& a, const WeylMono& b, const std::vector<std::size_t>& g) const {
        auto slot = [&](const WeylMono& m, std::size_t s) {
            return s < n_ ? m.xe[s] : m.de[s - n_];
        };
        int da = 0, db = 0;
        for (std::size_t s : g) {
            da += slot(a, s);
            db += slot(b, s);
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = g.size(); i-- > 0;) {
            int xa = slot(a, g[i]), xb = slot(b, g[i]);
            if (xa != xb) return xa > xb ? -1 : 1;
        }
        return 0;
    }

    Kind kind_;
    std::vector<int> w_;
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> groups_;
};

class WeylElement {
public:
    using TermMap = std::map<WeylMono, ParamScalar, CanonicalMonoLess>;

    WeylElement() = default;
    explicit WeylElement(WeylCtxPtr ctx, bool homogenized = false)
        : ctx_(std::move(ctx)), homog_(homogenized) {}

    static WeylElement zero(const WeylCtxPtr& ctx) { return WeylElement(ctx); }

    static WeylElement scalar(const WeylCtxPtr& ctx, const ParamScalar& c) {
        WeylElement e(ctx);
        if (!c.is_zero()) e.terms_[e.unit_mono()] = c;
        return e;
    }

    static WeylElement constant(const WeylCtxPtr& ctx, const Rat& c) {
        return scalar(ctx, ParamScalar::constant(ctx->params, c));
    }

    static WeylElement param(const WeylCtxPtr& ctx, std::size_t i) {
        return scalar(ctx, ParamScalar(ParamPoly::variable(ctx->params, i)));
    }

    static WeylElement x(const WeylCtxPtr& ctx, std::size_t i, int exp = 1) {
        WeylElement e(ctx);
        WeylMono m = e.unit_mono();
        m.xe.at(i) = exp;
        e.terms_[m] = ParamScalar::constant(ctx->params, 1);
        return e;
    }

    static WeylElement d(const WeylCtxPtr& ctx, std::size_t i, int exp = 1) {
        WeylElement e(ctx);
        WeylMono m = e.unit_mono();
        m.de.at(i) = exp;
        e.terms_[m] = ParamScalar::constant(ctx->params, 1);
        return e;
    }

    // Euler operator x_i d_i, expanded on construction.
    static WeylElement theta(const WeylCtxPtr& ctx, std::size_t i) {
        WeylElement e(ctx);
        WeylMono m = e.unit_mono();
        m.xe.at(i) = 1;
        m.de.at(i) = 1;
        e.terms_[m] = ParamScalar::constant(ctx->params, 1);
        return e;
    }

    static WeylElement monomial(const WeylCtxPtr& ctx, WeylMono m, const ParamScalar& c,
                                bool homogenized = false) {
        WeylElement e(ctx, homogenized);
        if (!c.is_zero()) e.terms_[std::move(m)] = c;
        return e;
    }

    const WeylCtxPtr& ctx() const { return ctx_; }
    std::size_t nvars() const { return ctx_ ? ctx_->vars.size() : 0; }
    bool homogenized() const { return homog_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_scalar() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0;
    }

    ParamScalar scalar_value() const {
        if (terms_.empty()) return ParamScalar(ctx_->params);
        if (!is_scalar()) throw std::logic_error("element is not a scalar");
        return terms_.begin()->second;
    }

    WeylMono unit_mono() const {
        WeylMono m;
        m.xe.assign(nvars(), 0);
        m.de.assign(nvars(), 0);
        return m;
    }

    void add_term(const WeylMono& m, const ParamScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WeylElement operator-() const {
        WeylElement r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    WeylElement& operator+=(const WeylElement& o) {
        check_compat(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    WeylElement& operator-=(const WeylElement& o) { return *this += -o; }

    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }

    WeylElement& operator*=(const ParamScalar& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }
    friend WeylElement operator*(WeylElement a, const ParamScalar& c) { return a *= c; }
    friend WeylElement operator*(const ParamScalar& c, WeylElement a) { return a *= c; }

    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        a.check_compat(b);
        WeylElement r(a.ctx_, a.homog_ || b.homog_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.accumulate_product(ma, ca, mb, cb);
        return r;
    }
    WeylElement& operator*=(const WeylElement& o) { return *this = *this * o; }

    WeylElement pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative operator power");
        WeylElement r = constant(ctx_, 1);
        r.homog_ = homog_;
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    int compare(const WeylElement& o) const {
        auto i = terms_.rbegin();
        auto j = o.terms_.rbegin();
        CanonicalMonoLess lt;
        for (; i != terms_.rend() && j != o.terms_.rend(); ++i, ++j) {
            if (lt(i->first, j->first)) return -1;
            if (lt(j->first, i->first)) return 1;
            int c = i->second.compare(j->second);
            if (c != 0) return c;
        }
        if (i != terms_.rend()) return 1;
        if (j != o.terms_.rend()) return -1;
        return 0;
    }

    // Leading term under a given order.
    const std::pair<const WeylMono, ParamScalar>& lead(const TermOrder& ord) const {
        if (terms_.empty()) throw std::logic_error("zero element has no leading term");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.compare(it->first, best->first) > 0) best = it;
        return *best;
    }

    long ord_weight(const std::vector<int>& w) const {
        if (terms_.empty()) throw std::invalid_argument("ord of zero element");
        long best = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            long d = 0;
            for (std::size_t i = 0; i < w.size(); ++i) d += static_cast<long>(w[i]) * (m.de[i] - m.xe[i]);
            if (first || d > best) best = d;
            first = false;
        }
        return best;
    }

    WeylElement initial_form(const std::vector<int>& w) const {
        long top = ord_weight(w);
        WeylElement r(ctx_, homog_);
        for (const auto& [m, c] : terms_) {
            long d = 0;
            for (std::size_t i = 0; i < w.size(); ++i) d += static_cast<long>(w[i]) * (m.de[i] - m.xe[i]);
            if (d == top) r.terms_[m] = c;
        }
        return r;
    }

    // h-exponents equalizing (-w,w)-degree across terms (h of weight one);
    // inputs must be h-free.
    WeylElement homogenize_weight(const std::vector<int>& w) const {
        if (homog_) throw std::invalid_argument("already homogenized");
        if (terms_.empty()) return WeylElement(ctx_, true);
        long top = ord_weight(w);
        WeylElement r(ctx_, true);
        for (const auto& [m, c] : terms_) {
            long d = 0;
            for (std::size_t i = 0; i < w.size(); ++i) d += static_cast<long>(w[i]) * (m.de[i] - m.xe[i]);
            WeylMono nm = m;
            nm.he = static_cast<int>(top - d);
            r.terms_[nm] = c;
        }
        return r;
    }

    // Total-degree homogenization; the form used inside Buchberger runs.
    WeylElement homogenize_total() const {
        if (homog_) throw std::invalid_argument("already homogenized");
        if (terms_.empty()) return WeylElement(ctx_, true);
        int top = 0;
        for (const auto& [m, c] : terms_) top = std::max(top, m.total_degree());
        WeylElement r(ctx_, true);
        for (const auto& [m, c] : terms_) {
            WeylMono nm = m;
            nm.he = top - m.total_degree();
            r.terms_[nm] = c;
        }
        return r;
    }

    // Homogenization by the degree of the first nreal slots only; trailing
    // parameter slots do not count.
    WeylElement homogenize_total_real(std::size_t nreal) const {
        if (homog_) throw std::invalid_argument("already homogenized");
        if (terms_.empty()) return WeylElement(ctx_, true);
        auto rd = [&](const WeylMono& m) {
            int d = 0;
            for (std::size_t i = 0; i < nreal; ++i) d += m.xe[i] + m.de[i];
            return d;
        };
        int top = 0;
        for (const auto& [m, c] : terms_) top = std::max(top, rd(m));
        WeylElement r(ctx_, true);
        for (const auto& [m, c] : terms_) {
            WeylMono nm = m;
            nm.he = top - rd(m);
            r.terms_[nm] = c;
        }
        return r;
    }

    WeylElement dehomogenize() const {
        WeylElement r(ctx_, false);
        for (const auto& [m, c] : terms_) {
            WeylMono nm = m;
            nm.he = 0;
            r.add_term(nm, c);
        }
        return r;
    }

    // x_i -> x_i + s_i; derivatives are unchanged.
    WeylElement change_vars_shift(const std::map<std::size_t, Rat>& shifts) const {
        WeylElement r(ctx_, homog_);
        for (const auto& [m, c] : terms_) {
            // expand each shifted x_i^a binomially
            std::vector<std::pair<WeylMono, Rat>> parts{{m, Rat(1)}};
            for (const auto& [i, s] : shifts) {
                if (s == 0) continue;
                std::vector<std::pair<WeylMono, Rat>> next;
                for (const auto& [pm, pc] : parts) {
                    int a = pm.xe[i];
                    for (int k = 0; k <= a; ++k) {
                        WeylMono nm = pm;
                        nm.xe[i] = k;
                        Rat mult = pc * Rat(binomial(a, a - k));
                        for (int t = 0; t < a - k; ++t) mult *= s;
                        if (mult != 0) next.emplace_back(nm, mult);
                    }
                }
                parts = std::move(next);
            }
            for (const auto& [pm, pc] : parts) add_term(r, pm, c, pc);
        }
        return r;
    }

    // Drops every term with a positive x-exponent in the named variables.
    WeylElement restrict_x_to_zero(const std::vector<std::size_t>& vars) const {
        WeylElement r(ctx_, homog_);
        for (const auto& [m, c] : terms_) {
            bool kill = false;
            for (std::size_t i : vars)
                if (m.xe[i] > 0) kill = true;
            if (!kill) r.terms_[m] = c;
        }
        return r;
    }

    ParamScalar extract_coeff(const Expvec& xe, const Expvec& de) const {
        WeylMono m{xe, de, 0};
        auto it = terms_.find(m);
        return it == terms_.end() ? ParamScalar(ctx_->params) : it->second;
    }

    WeylElement specialize(const std::map<std::size_t, Rat>& assignment) const {
        WeylElement r(ctx_, homog_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.specialize(assignment));
        return r;
    }

    WeylElement substitute_param(std::size_t i, const ParamPoly& value) const {
        WeylElement r(ctx_, homog_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.substitute(i, value));
        return r;
    }

    // Clears denominators and divides by the polynomial content; the result
    // generates the same left ideal over K.
    WeylElement normalized_primitive() const {
        if (terms_.empty()) return *this;
        ParamPoly denlcm = ParamPoly::constant(ctx_->params, 1);
        for (const auto& [m, c] : terms_) {
            ParamPoly g = poly_gcd(denlcm, c.den());
            denlcm = *(denlcm * c.den()).divide_exact(g);
        }
        std::vector<ParamPoly> nums;
        for (const auto& [m, c] : terms_) nums.push_back(c.num() * *denlcm.divide_exact(c.den()));
        ParamPoly g = nums.front();
        for (std::size_t i = 1; i < nums.size() && !g.is_constant(); ++i) g = poly_gcd(g, nums[i]);
        if (!g.is_constant())
            for (auto& p : nums) p = *p.divide_exact(g);
        Rat cont = 0;
        for (const auto& p : nums) {
            Rat cc = p.content();
            if (cc < 0) cc = -cc;
            cont = (cont == 0) ? cc
                               : Rat(int_gcd(rat_num(cont) * rat_den(cc), rat_num(cc) * rat_den(cont)),
                                     rat_den(cont) * rat_den(cc));
        }
        WeylElement r(ctx_, homog_);
        std::size_t i = 0;
        for (const auto& [m, c] : terms_) {
            ParamPoly p = nums[i++];
            p *= Rat(1) / cont;
            r.terms_[m] = ParamScalar(p);
        }
        const ParamScalar& leadc = r.terms_.rbegin()->second;
        if (leadc.num().lead_coeff() < 0)
            for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    std::string str(bool fold_theta = false) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const ParamScalar& c = it->second;
            bool neg = c.num().lead_coeff() < 0;
            std::string abs = (neg ? -c : c).str();
            bool needs_paren = abs.find_first_of("+- ") != std::string::npos;
            std::string mono = mono_str(it->first, fold_theta);
            std::string piece;
            if (mono.empty()) {
                piece = needs_paren ? "(" + abs + ")" : abs;
            } else if (abs == "1") {
                piece = mono;
            } else {
                piece = (needs_paren ? "(" + abs + ")" : abs) + "*" + mono;
            }
            if (first) {
                out += (neg ? "-" : "") + piece;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + piece;
            }
        }
        return out;
    }

private:
    void check_compat(const WeylElement& o) const {
        if (nvars() != o.nvars()) throw std::invalid_argument("Weyl algebra dimension mismatch");
        if (homog_ != o.homog_ && !terms_.empty() && !o.terms_.empty())
            throw std::invalid_argument("mixed homogenization");
    }

    static void add_term(WeylElement& e, const WeylMono& m, const ParamScalar& c, const Rat& mult) {
        ParamScalar v = c * ParamScalar::constant(e.ctx_->params, mult);
        e.add_term(m, v);
    }

    // Accumulate (ma * mb) with normal ordering, Leibniz per variable:
    // d^a x^b = sum_k C(a,k) C(b,k) k! x^{b-k} d^{a-k} (h^{2k} if homogenized).
    void accumulate_product(const WeylMono& ma, const ParamScalar& ca, const WeylMono& mb,
                            const ParamScalar& cb) {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < ma.de.size(); ++i)
            if (ma.de[i] > 0 && mb.xe[i] > 0) active.push_back(i);

        ParamScalar base = ca * cb;
        WeylMono m0;
        m0.xe = ma.xe;
        m0.de = mb.de;
        m0.he = ma.he + mb.he;
        for (std::size_t i = 0; i < m0.xe.size(); ++i) {
            m0.xe[i] += mb.xe[i];
            m0.de[i] += ma.de[i];
        }
        if (active.empty()) {
            add_term(m0, base);
            return;
        }
        std::vector<int> k(active.size(), 0);
        while (true) {
            Rat mult = 1;
            WeylMono m = m0;
            for (std::size_t j = 0; j < active.size(); ++j) {
                std::size_t i = active[j];
                int a = ma.de[i], b = mb.xe[i], kk = k[j];
                mult *= Rat(binomial(a, kk) * binomial(b, kk) * factorial(kk));
                m.xe[i] -= kk;
                m.de[i] -= kk;
                if (homog_) m.he += 2 * kk;
            }
            add_term(this->terms_, m, base, mult);
            // advance the multi-index
            std::size_t j = 0;
            while (j < active.size()) {
                ++k[j];
                if (k[j] <= std::min(ma.de[active[j]], mb.xe[active[j]])) break;
                k[j] = 0;
                ++j;
            }
            if (j == active.size()) break;
        }
    }

    void add_term(TermMap& tm, const WeylMono& m, const ParamScalar& base, const Rat& mult) {
        if (mult == 0) return;
        ParamScalar v = base * ParamScalar::constant(ctx_->params, mult);
        if (v.is_zero()) return;
        auto it = tm.find(m);
        if (it == tm.end()) {
            tm.emplace(m, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) tm.erase(it);
        }
    }

    std::string mono_str(const WeylMono& m, bool fold_theta) const {
        std::string s;
        auto app = [&](const std::string& t) {
            if (!s.empty()) s += "*";
            s += t;
        };
        auto xpart = [&](std::size_t i, int a) {
            if (a > 0) app(ctx_->vars[i] + (a > 1 ? "^" + std::to_string(a) : ""));
        };
        auto dpart = [&](std::size_t i, int b) {
            if (b > 0) app("d" + ctx_->vars[i] + (b > 1 ? "^" + std::to_string(b) : ""));
        };
        if (!fold_theta) {
            for (std::size_t i = 0; i < m.xe.size(); ++i) xpart(i, m.xe[i]);
            for (std::size_t i = 0; i < m.de.size(); ++i) dpart(i, m.de[i]);
        } else {
            for (std::size_t i = 0; i < m.xe.size(); ++i) {
                int a = m.xe[i], b = m.de[i];
                if (a > 0 && b > 0) {
                    int k = std::min(a, b);
                    xpart(i, a - k);
                    if (k == 1)
                        app("theta_" + ctx_->vars[i]);
                    else
                        app("ff(theta_" + ctx_->vars[i] + "," + std::to_string(k) + ")");
                    dpart(i, b - k);
                } else {
                    xpart(i, a);
                    dpart(i, b);
                }
            }
        }
        if (m.he > 0) app("h" + std::string(m.he > 1 ? "^" + std::to_string(m.he) : ""));
        return s;
    }

    WeylCtxPtr ctx_;
    bool homog_ = false;
    TermMap terms_;
};

inline WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) { return a * b; }

}  // namespace weylkit
