#pragma once

#include "weylkit/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weylkit {

// Ordered parameter universe, fixed for a whole computation. Polynomials over
// different universes never mix.
using ParamCtx = std::vector<std::string>;
using ParamCtxPtr = std::shared_ptr<const ParamCtx>;

inline ParamCtxPtr make_ctx(std::vector<std::string> names) {
    return std::make_shared<const ParamCtx>(std::move(names));
}

using Expvec = std::vector<int>;

inline int expvec_total(const Expvec& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
}

// Graded lex, ascending form used as map comparator; iteration in reverse
// yields the canonical descending term order.
struct GradedLexLess {
    bool operator()(const Expvec& a, const Expvec& b) const {
        int da = expvec_total(a), db = expvec_total(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class ParamPoly {
public:
    using TermMap = std::map<Expvec, Rat, GradedLexLess>;

    ParamPoly() = default;
    explicit ParamPoly(ParamCtxPtr ctx) : ctx_(std::move(ctx)) {}

    static ParamPoly constant(ParamCtxPtr ctx, const Rat& c) {
        ParamPoly p(std::move(ctx));
        if (c != 0) p.terms_[Expvec(p.nvars(), 0)] = c;
        return p;
    }

    static ParamPoly variable(ParamCtxPtr ctx, std::size_t i, int exp = 1) {
        ParamPoly p(ctx);
        if (i >= p.nvars()) throw std::out_of_range("parameter index");
        Expvec e(p.nvars(), 0);
        e[i] = exp;
        p.terms_[e] = 1;
        return p;
    }

    const ParamCtxPtr& ctx() const { return ctx_; }
    std::size_t nvars() const { return ctx_ ? ctx_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expvec_total(terms_.begin()->first) == 0);
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::logic_error("not a constant polynomial");
        return terms_.begin()->second;
    }

    int total_degree() const {
        if (terms_.empty()) return -1;
        return expvec_total(terms_.rbegin()->first);
    }

    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return terms_.empty() ? -1 : d;
    }

    bool depends_on(std::size_t i) const {
        for (const auto& [e, c] : terms_)
            if (e[i] > 0) return true;
        return false;
    }

    // Leading data under graded lex descending.
    const Expvec& lead_exp() const { return require_nonzero().first; }
    const Rat& lead_coeff() const { return require_nonzero().second; }

    ParamPoly operator-() const {
        ParamPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        check_ctx(o);
        for (const auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_.emplace(e, c);
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    ParamPoly& operator-=(const ParamPoly& o) { return *this += -o; }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        a.check_ctx(b);
        ParamPoly r(a.ctx_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Expvec e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                Rat c = ca * cb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(std::move(e), std::move(c));
                } else {
                    it->second += c;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [e, v] : terms_) v *= c;
        }
        return *this;
    }

    friend ParamPoly operator*(ParamPoly a, const Rat& c) { return a *= c; }
    friend ParamPoly operator*(const Rat& c, ParamPoly a) { return a *= c; }

    ParamPoly pow(int n) const {
        if (n < 0) throw std::invalid_argument("negative power");
        ParamPoly r = constant(ctx_, 1);
        for (int i = 0; i < n; ++i) r *= *this;
        return r;
    }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    // Deterministic total order, used for canonical sorting of sets of polys.
    int compare(const ParamPoly& o) const {
        auto i = terms_.rbegin();
        auto j = o.terms_.rbegin();
        for (; i != terms_.rend() && j != o.terms_.rend(); ++i, ++j) {
            GradedLexLess lt;
            if (lt(i->first, j->first)) return -1;
            if (lt(j->first, i->first)) return 1;
            if (i->second != j->second) return i->second < j->second ? -1 : 1;
        }
        if (i != terms_.rend()) return 1;
        if (j != o.terms_.rend()) return -1;
        return 0;
    }

    // Partial substitution of parameters by rationals; unassigned parameters
    // stay symbolic.
    ParamPoly specialize(const std::map<std::size_t, Rat>& assignment) const {
        ParamPoly r(ctx_);
        for (const auto& [e, c] : terms_) {
            Rat v = c;
            Expvec ne = e;
            for (const auto& [i, val] : assignment) {
                for (int k = 0; k < e[i]; ++k) v *= val;
                ne[i] = 0;
            }
            if (v == 0) continue;
            auto it = r.terms_.find(ne);
            if (it == r.terms_.end()) {
                r.terms_.emplace(ne, v);
            } else {
                it->second += v;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    // Substitution of a parameter by a polynomial (used when strata solve a
    // linear equation for one parameter).
    ParamPoly substitute(std::size_t i, const ParamPoly& value) const {
        check_ctx(value);
        ParamPoly r(ctx_);
        for (const auto& [e, c] : terms_) {
            Expvec ne = e;
            ne[i] = 0;
            ParamPoly t(ctx_);
            t.terms_[ne] = c;
            r += t * value.pow(e[i]);
        }
        return r;
    }

    ParamPoly derivative(std::size_t i) const {
        ParamPoly r(ctx_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Expvec ne = e;
            ne[i] -= 1;
            r.terms_[ne] = c * e[i];
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& point) const {
        Rat r = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            r += t;
        }
        return r;
    }

    // Coefficients with respect to one variable, constant term first.
    std::vector<ParamPoly> coeffs_in(std::size_t i) const {
        int d = degree_in(i);
        std::vector<ParamPoly> out(static_cast<std::size_t>(std::max(d, 0)) + 1, ParamPoly(ctx_));
        if (terms_.empty()) return out;
        for (const auto& [e, c] : terms_) {
            Expvec ne = e;
            int k = ne[i];
            ne[i] = 0;
            out[k].terms_[ne] = c;
        }
        return out;
    }

    static ParamPoly from_coeffs_in(const ParamCtxPtr& ctx, std::size_t i,
                                    const std::vector<ParamPoly>& cs) {
        ParamPoly r(ctx);
        for (std::size_t k = 0; k < cs.size(); ++k)
            r += cs[k] * variable(ctx, i).pow(static_cast<int>(k));
        return r;
    }

    // Rational content: the positive rational c with p = c * (coprime-integer
    // poly whose leading coefficient is positive); sign goes with the content.
    Rat content() const {
        if (terms_.empty()) return Rat(0);
        Int g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            g = int_gcd(g, rat_num(c));
            l = int_lcm(l, rat_den(c));
        }
        Rat r(g, l);
        if (lead_coeff() < 0) r = -r;
        return r;
    }

    ParamPoly primitive_part() const {
        if (terms_.empty()) return *this;
        Rat c = content();
        ParamPoly r(*this);
        for (auto& [e, v] : r.terms_) v /= c;
        return r;
    }

    // Exact quotient when the divisor divides; nullopt otherwise.
    std::optional<ParamPoly> divide_exact(const ParamPoly& d) const {
        check_ctx(d);
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        ParamPoly rem(*this), quot(ctx_);
        const Expvec& de = d.lead_exp();
        const Rat& dc = d.lead_coeff();
        while (!rem.is_zero()) {
            const Expvec& re = rem.lead_exp();
            Expvec qe(re.size());
            for (std::size_t i = 0; i < re.size(); ++i) {
                qe[i] = re[i] - de[i];
                if (qe[i] < 0) return std::nullopt;
            }
            ParamPoly t(ctx_);
            t.terms_[qe] = rem.lead_coeff() / dc;
            quot += t;
            rem -= t * d;
        }
        return quot;
    }

    bool divides(const ParamPoly& multiple) const { return multiple.divide_exact(*this).has_value(); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rat& c = it->second;
            Rat ac = c < 0 ? Rat(-c) : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono = mono_str(it->first);
            if (mono.empty()) {
                out += rat_str(ac);
            } else {
                if (ac != 1) out += rat_str(ac) + "*";
                out += mono;
            }
        }
        return out;
    }

private:
    std::pair<const Expvec&, const Rat&> require_nonzero() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    void check_ctx(const ParamPoly& o) const {
        if (nvars() != o.nvars()) throw std::invalid_argument("mixed parameter universes");
    }

    std::string mono_str(const Expvec& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += (*ctx_)[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    ParamCtxPtr ctx_;
    TermMap terms_;
};

namespace detail {

// Pseudo-remainder of a by b in variable v: a scalar multiple of the
// remainder of lc(b)^k * a under division by b.
inline ParamPoly prem(const ParamPoly& a, const ParamPoly& b, std::size_t v) {
    auto bc = b.coeffs_in(v);
    int db = static_cast<int>(bc.size()) - 1;
    const ParamPoly& lb = bc.back();
    std::vector<ParamPoly> r = a.coeffs_in(v);
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    while (static_cast<int>(r.size()) - 1 >= db) {
        int k = static_cast<int>(r.size()) - 1;
        ParamPoly top = r[k];
        for (auto& rj : r) rj = rj * lb;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= top * bc[j];
        r.pop_back();
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    return ParamPoly::from_coeffs_in(a.ctx(), v, r);
}

}  // namespace detail

// Multivariate gcd by content/primitive-part recursion on the highest present
// variable, with the primitive PRS in that variable.
inline ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0,0)");
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return ParamPoly::constant(a.ctx(), 1);

    std::size_t v = 0;
    bool found = false;
    for (std::size_t i = a.nvars(); i-- > 0;) {
        if (a.depends_on(i) || b.depends_on(i)) {
            v = i;
            found = true;
            break;
        }
    }
    if (!found) return ParamPoly::constant(a.ctx(), 1);

    if (!a.depends_on(v) || !b.depends_on(v)) {
        // One side is free of v: gcd divides every v-coefficient of the other.
        const ParamPoly& free = a.depends_on(v) ? b : a;
        const ParamPoly& other = a.depends_on(v) ? a : b;
        ParamPoly g = free;
        for (const auto& c : other.coeffs_in(v)) {
            if (c.is_zero()) continue;
            g = poly_gcd(g, c);
            if (g.is_constant()) break;
        }
        return g.primitive_part();
    }

    auto content_in = [&](const ParamPoly& p) {
        ParamPoly g(p.ctx());
        for (const auto& c : p.coeffs_in(v)) {
            if (c.is_zero()) continue;
            g = g.is_zero() ? c : poly_gcd(g, c);
            if (g.is_constant()) break;
        }
        return g.is_constant() ? ParamPoly::constant(p.ctx(), 1) : g.primitive_part();
    };

    ParamPoly ca = content_in(a), cb = content_in(b);
    ParamPoly pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
    ParamPoly cont = poly_gcd(ca, cb);

    // Primitive PRS in v.
    ParamPoly f = pa, g = pb;
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    while (true) {
        ParamPoly r = detail::prem(f, g, v);
        if (r.is_zero()) break;
        ParamPoly rc = content_in(r);
        r = *r.divide_exact(rc);
        f = g;
        g = r.primitive_part();
        if (!g.depends_on(v)) {
            g = ParamPoly::constant(a.ctx(), 1);
            break;
        }
    }
    ParamPoly result = cont * g.primitive_part();
    return result.primitive_part();
}

struct LinearFactorization {
    Rat constant = 0;                               // overall rational scale
    std::vector<std::pair<ParamPoly, int>> factors; // normalized degree-1 factors
    ParamPoly remainder;                            // 1 when fully factored
    bool complete = false;
};

namespace detail {

// Rational roots q of a system of univariate rational-coefficient polynomials
// (all must vanish simultaneously).
inline std::vector<Rat> common_rational_roots(const std::vector<std::vector<Rat>>& polys) {
    // Seed candidates from the first nonzero poly via the rational root theorem.
    const std::vector<Rat>* seed = nullptr;
    for (const auto& p : polys) {
        bool nz = false;
        for (const auto& c : p)
            if (c != 0) nz = true;
        if (nz) {
            seed = &p;
            break;
        }
    }
    std::vector<Rat> out;
    if (!seed) return out;  // identically zero system: no constraint, caller handles
    // Clear to integer coefficients.
    Int l = 1;
    for (const auto& c : *seed) l = int_lcm(l, rat_den(c));
    std::vector<Int> ic;
    for (const auto& c : *seed) ic.push_back(rat_num(c) * (l / rat_den(c)));
    while (!ic.empty() && ic.back() == 0) ic.pop_back();
    std::size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;  // root 0 handled separately
    if (low >= ic.size()) return out;

    auto divisors = [](Int n) {
        if (n < 0) n = -n;
        std::vector<Int> ds;
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    auto eval_all_zero = [&](const Rat& q) {
        for (const auto& p : polys) {
            Rat v = 0, pw = 1;
            for (const auto& c : p) {
                v += c * pw;
                pw *= q;
            }
            if (v != 0) return false;
        }
        return true;
    };

    if (eval_all_zero(Rat(0))) out.push_back(Rat(0));
    for (const Int& p : divisors(ic[low])) {
        for (const Int& q : divisors(ic.back())) {
            for (int s : {1, -1}) {
                Rat cand(p * s, q);
                if (std::find(out.begin(), out.end(), cand) != out.end()) continue;
                if (eval_all_zero(cand)) out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Complete factorization into affine-linear factors where possible; a
// non-constant remainder with no further linear factors is reported unfactored.
inline LinearFactorization factor_linear(const ParamPoly& p) {
    LinearFactorization out;
    out.remainder = ParamPoly::constant(p.ctx(), 1);
    if (p.is_zero()) {
        out.constant = 0;
        out.complete = true;
        return out;
    }
    Rat cont = p.content();
    ParamPoly work = *p.divide_exact(ParamPoly::constant(p.ctx(), cont));
    out.constant = cont;

    auto push_factor = [&](const ParamPoly& f) {
        ParamPoly nf = f.primitive_part();
        Rat adjust = f.content();
        out.constant *= adjust;  // keep product exact after normalization
        for (auto& [g, m] : out.factors)
            if (g == nf) {
                ++m;
                return;
            }
        out.factors.emplace_back(nf, 1);
    };

    bool progress = true;
    while (progress && !work.is_constant()) {
        progress = false;
        // Highest present variable drives the search.
        std::size_t v = 0;
        for (std::size_t i = work.nvars(); i-- > 0;)
            if (work.depends_on(i)) {
                v = i;
                break;
            }

        auto cs = work.coeffs_in(v);
        // Factors free of v divide every coefficient.
        ParamPoly g(work.ctx());
        for (const auto& c : cs)
            if (!c.is_zero()) g = g.is_zero() ? c : poly_gcd(g, c);
        if (!g.is_constant()) {
            LinearFactorization sub = factor_linear(g);
            work = *work.divide_exact(g);
            out.constant *= sub.constant;
            for (const auto& [f, m] : sub.factors)
                for (int k = 0; k < m; ++k) push_factor(f);
            if (!sub.remainder.is_constant()) {
                // irreducible non-v part stays in the remainder
                out.remainder *= sub.remainder;
            }
            progress = true;
            continue;
        }

        // Pure power of v.
        while (cs.size() > 1 && cs[0].is_zero()) {
            push_factor(ParamPoly::variable(work.ctx(), v));
            work = *work.divide_exact(ParamPoly::variable(work.ctx(), v));
            cs = work.coeffs_in(v);
            progress = true;
        }
        if (work.is_constant()) break;
        if (cs.size() <= 1) continue;

        // Candidates v + q*f with f a linear factor of the constant coefficient
        // (or f = 1); q rational solving sum_k c_k (-f)^k q^k = 0.
        std::vector<ParamPoly> cands;
        cands.push_back(ParamPoly::constant(work.ctx(), 1));
        if (!cs[0].is_zero() && !cs[0].is_constant()) {
            LinearFactorization base = factor_linear(cs[0]);
            for (const auto& [f, m] : base.factors)
                if (f.total_degree() == 1) cands.push_back(f);
        }
        bool found = false;
        for (const ParamPoly& f : cands) {
            // P(q) = sum_k cs[k] * (-f)^k q^k; collect per-monomial polys in q.
            std::map<Expvec, std::vector<Rat>, GradedLexLess> rows;
            ParamPoly fp = ParamPoly::constant(work.ctx(), 1);
            for (std::size_t k = 0; k < cs.size(); ++k) {
                ParamPoly term = cs[k] * fp;
                for (const auto& [e, c] : term.terms()) {
                    auto& row = rows[e];
                    if (row.size() < k + 1) row.resize(k + 1, Rat(0));
                    row[k] += c;
                }
                fp *= -f;
            }
            std::vector<std::vector<Rat>> sys;
            for (auto& [e, row] : rows) sys.push_back(row);
            for (const Rat& q : detail::common_rational_roots(sys)) {
                ParamPoly cand = ParamPoly::variable(work.ctx(), v) + f * q;
                auto quot = work.divide_exact(cand);
                if (quot) {
                    push_factor(cand);
                    work = *quot;
                    found = true;
                    progress = true;
                    break;
                }
            }
            if (found) break;
        }
    }

    if (work.is_constant()) {
        out.constant *= work.constant_value();
        out.complete = out.remainder.is_constant();
    } else {
        out.remainder *= work.primitive_part();
        out.constant *= work.content();
        out.complete = false;
    }
    return out;
}

}  // namespace weylkit
