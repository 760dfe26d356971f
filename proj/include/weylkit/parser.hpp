#pragma once

#include "weylkit/weyl.hpp"

#include <cctype>

namespace weylkit {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Recursive-descent parser for operator expressions over a declared variable
// and parameter set. Products are written with explicit '*' and keep their
// left-to-right order; exponents are literal non-negative integers.
class OperatorParser {
public:
    explicit OperatorParser(WeylCtxPtr ctx) : ctx_(std::move(ctx)) {}

    WeylElement parse(const std::string& src) const {
        State st{src, 0};
        WeylElement e = parse_expr(st);
        skip_ws(st);
        if (st.pos != src.size()) throw ParseError("trailing input", st.pos);
        return e;
    }

private:
    struct State {
        const std::string& src;
        std::size_t pos;
    };

    static void skip_ws(State& st) {
        while (st.pos < st.src.size() && std::isspace(static_cast<unsigned char>(st.src[st.pos])))
            ++st.pos;
    }

    static bool eat(State& st, char c) {
        skip_ws(st);
        if (st.pos < st.src.size() && st.src[st.pos] == c) {
            ++st.pos;
            return true;
        }
        return false;
    }

    static char peek(State& st) {
        skip_ws(st);
        return st.pos < st.src.size() ? st.src[st.pos] : '\0';
    }

    WeylElement parse_expr(State& st) const {
        WeylElement e = parse_term(st);
        while (true) {
            if (eat(st, '+')) {
                e += parse_term(st);
            } else if (eat(st, '-')) {
                e -= parse_term(st);
            } else {
                return e;
            }
        }
    }

    WeylElement parse_term(State& st) const {
        WeylElement e = parse_factor(st);
        while (eat(st, '*')) e *= parse_factor(st);
        return e;
    }

    WeylElement parse_factor(State& st) const {
        if (eat(st, '-')) return -parse_factor(st);
        WeylElement a = parse_atom(st);
        if (eat(st, '^')) {
            skip_ws(st);
            std::size_t start = st.pos;
            if (st.pos >= st.src.size() || !std::isdigit(static_cast<unsigned char>(st.src[st.pos])))
                throw ParseError("exponent must be a non-negative integer literal", start);
            long n = parse_nat(st);
            return a.pow(static_cast<int>(n));
        }
        return a;
    }

    WeylElement parse_atom(State& st) const {
        skip_ws(st);
        if (st.pos >= st.src.size()) throw ParseError("unexpected end of input", st.pos);
        char c = st.src[st.pos];
        if (c == '(') {
            ++st.pos;
            WeylElement e = parse_expr(st);
            if (!eat(st, ')')) throw ParseError("expected ')'", st.pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long save = static_cast<long>(st.pos);
            Int num(parse_digits(st));
            if (st.pos < st.src.size() && st.src[st.pos] == '/') {
                ++st.pos;
                if (st.pos >= st.src.size() || !std::isdigit(static_cast<unsigned char>(st.src[st.pos])))
                    throw ParseError("malformed rational literal", static_cast<std::size_t>(save));
                Int den(parse_digits(st));
                if (den == 0) throw ParseError("zero denominator", static_cast<std::size_t>(save));
                return WeylElement::scalar(ctx_, ParamScalar::constant(ctx_->params, Rat(num, den)));
            }
            return WeylElement::scalar(ctx_, ParamScalar::constant(ctx_->params, Rat(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = st.pos;
            std::string id = parse_ident(st);
            if (id.rfind("theta_", 0) == 0) {
                std::string v = id.substr(6);
                auto i = var_index(v);
                if (!i) throw ParseError("unknown variable in Euler operator: " + v, start);
                return WeylElement::theta(ctx_, *i);
            }
            if (auto i = var_index(id)) return WeylElement::x(ctx_, *i);
            if (id.size() > 1 && id[0] == 'd') {
                if (auto i = var_index(id.substr(1))) return WeylElement::d(ctx_, *i);
            }
            if (auto i = param_index(id)) return WeylElement::param(ctx_, *i);
            throw ParseError("unknown symbol: " + id, start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", st.pos);
    }

    static std::string parse_digits(State& st) {
        std::string s;
        while (st.pos < st.src.size() && std::isdigit(static_cast<unsigned char>(st.src[st.pos])))
            s += st.src[st.pos++];
        return s;
    }

    static long parse_nat(State& st) { return std::stol(parse_digits(st)); }

    static std::string parse_ident(State& st) {
        std::string s;
        while (st.pos < st.src.size() &&
               (std::isalnum(static_cast<unsigned char>(st.src[st.pos])) || st.src[st.pos] == '_' ||
                st.src[st.pos] == '\''))
            s += st.src[st.pos++];
        return s;
    }

    std::optional<std::size_t> var_index(const std::string& name) const {
        for (std::size_t i = 0; i < ctx_->vars.size(); ++i)
            if (ctx_->vars[i] == name) return i;
        return std::nullopt;
    }

    std::optional<std::size_t> param_index(const std::string& name) const {
        for (std::size_t i = 0; i < ctx_->params->size(); ++i)
            if ((*ctx_->params)[i] == name) return i;
        return std::nullopt;
    }

    WeylCtxPtr ctx_;
};

inline WeylElement parse_operator(const WeylCtxPtr& ctx, const std::string& src) {
    return OperatorParser(ctx).parse(src);
}

// Parses a polynomial in the parameters alone.
inline ParamPoly parse_parampoly(const ParamCtxPtr& params, const std::string& src) {
    auto ctx = make_weyl_ctx(params, {});
    WeylElement e = OperatorParser(ctx).parse(src);
    ParamScalar s = e.scalar_value();
    return s.as_polynomial();
}

}  // namespace weylkit
