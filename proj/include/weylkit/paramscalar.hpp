#pragma once

#include "weylkit/parampoly.hpp"

namespace weylkit {

// Element of the coefficient field K = Q(beta_1, ..., beta_m). Stored as
// num/den with gcd removed, the denominator a primitive integer polynomial
// with positive leading coefficient.
class ParamScalar {
public:
    ParamScalar() = default;
    explicit ParamScalar(ParamCtxPtr ctx)
        : num_(ParamPoly(ctx)), den_(ParamPoly::constant(ctx, 1)) {}

    ParamScalar(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        normalize();
    }

    /* implicit */ ParamScalar(const ParamPoly& p)
        : num_(p), den_(ParamPoly::constant(p.ctx(), 1)) {}

    static ParamScalar constant(const ParamCtxPtr& ctx, const Rat& c) {
        return ParamScalar(ParamPoly::constant(ctx, c));
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    const ParamCtxPtr& ctx() const { return num_.ctx(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && den_.constant_value() == 1 && num_.is_constant() && !num_.is_zero() && num_.constant_value() == 1; }
    bool is_polynomial() const { return den_.is_constant(); }

    ParamPoly as_polynomial() const {
        if (!is_polynomial()) throw std::logic_error("rational function is not polynomial");
        Rat d = den_.constant_value();
        ParamPoly p = num_;
        p *= Rat(1) / d;
        return p;
    }

    ParamScalar operator-() const {
        ParamScalar r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
        return ParamScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) {
        return ParamScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
        return ParamScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ParamScalar operator/(const ParamScalar& a, const ParamScalar& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return ParamScalar(a.num_ * b.den_, a.den_ * b.num_);
    }

    ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
    ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
    ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
    ParamScalar& operator/=(const ParamScalar& o) { return *this = *this / o; }

    ParamScalar inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return ParamScalar(den_, num_);
    }

    bool operator==(const ParamScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    ParamScalar specialize(const std::map<std::size_t, Rat>& assignment) const {
        ParamPoly d = den_.specialize(assignment);
        if (d.is_zero()) throw std::domain_error("specialization hits a pole");
        return ParamScalar(num_.specialize(assignment), d);
    }

    ParamScalar substitute(std::size_t i, const ParamPoly& value) const {
        ParamPoly d = den_.substitute(i, value);
        if (d.is_zero()) throw std::domain_error("substitution hits a pole");
        return ParamScalar(num_.substitute(i, value), d);
    }

    // d/dv by the quotient rule; used with x adjoined to the universe.
    ParamScalar derivative(std::size_t v) const {
        return ParamScalar(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    Rat eval(const std::vector<Rat>& point) const {
        Rat d = den_.eval(point);
        if (d == 0) throw std::domain_error("evaluation hits a pole");
        return num_.eval(point) / d;
    }

    int compare(const ParamScalar& o) const {
        int c = num_.compare(o.num_);
        if (c != 0) return c;
        return den_.compare(o.den_);
    }

    std::string str() const {
        if (is_polynomial()) return as_polynomial().str();
        std::string n = num_.str(), d = den_.str();
        auto wrap = [](const std::string& s) {
            return s.find_first_of("+- ") == std::string::npos ? s : "(" + s + ")";
        };
        return wrap(n) + "/" + wrap(d);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = ParamPoly::constant(num_.ctx(), 1);
            return;
        }
        if (!num_.is_constant() && !den_.is_constant()) {
            ParamPoly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *num_.divide_exact(g);
                den_ = *den_.divide_exact(g);
            }
        }
        Rat dc = den_.content();
        num_ *= Rat(1) / dc;
        den_ *= Rat(1) / dc;
    }

    ParamPoly num_, den_;
};

}  // namespace weylkit
