#pragma once

/*
 * Text grammar for forms: signed terms of products `coeff * var^e * ...`
 * with explicit `*`, rational literals via `/`, parentheses, and named
 * scalar parameters supplied by the caller.  Also parses Gaussian
 * rational points like "1,i,0,0" and "3/2-2i,0".
 */

#include "soscert/form.hpp"
#include "soscert/gaussrat.hpp"
#include "soscert/mpoly.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

namespace detail {

struct Token {
    enum Kind { Number, Ident, Op, End } kind;
    std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            out.push_back({Token::Op, std::string(1, c)});
            ++i;
            continue;
        }
        throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
    }
    out.push_back({Token::End, ""});
    return out;
}

inline Rat invert_scalar(const Rat& c) { return c.inv(); }
inline RatFunc invert_scalar(const RatFunc& c) { return c.inv(); }
inline AlgNum invert_scalar(const AlgNum& c) { return c.inv(); }
inline GaussRat invert_scalar(const GaussRat& c) { return c.inv(); }
template <class K2> MPoly<K2> invert_scalar(const MPoly<K2>& p) {
    if (p.term_count() != 1) throw std::invalid_argument("division by non-constant");
    const auto& [e, c] = *p.terms().begin();
    for (int x : e)
        if (x != 0) throw std::invalid_argument("division by non-constant");
    return MPoly<K2>(p.nvars(), invert_scalar(c));
}

template <class K2>
MPoly<K2> scalar_div(const MPoly<K2>& a, const MPoly<K2>& b) {
    return a * invert_scalar(b);
}

template <class K>
class ExprParser {
public:
    ExprParser(std::vector<Token> toks, const std::vector<std::string>& vars,
               const std::map<std::string, K>& params)
        : toks_(std::move(toks)), vars_(vars), params_(params) {}

    MPoly<K> parse() {
        MPoly<K> e = expr();
        if (cur().kind != Token::End) throw std::invalid_argument("trailing input in expression");
        return e;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    bool eat_op(const std::string& o) {
        if (cur().kind == Token::Op && cur().text == o) { advance(); return true; }
        return false;
    }

    int nvars() const { return static_cast<int>(vars_.size()); }

    MPoly<K> expr() {
        MPoly<K> acc = eat_op("-") ? -term() : (eat_op("+"), term());
        while (true) {
            if (eat_op("+")) acc += term();
            else if (eat_op("-")) acc -= term();
            else break;
        }
        return acc;
    }
    MPoly<K> term() {
        MPoly<K> acc = factor();
        while (true) {
            if (eat_op("*")) acc *= factor();
            else if (eat_op("/")) acc = scalar_div(acc, factor());
            else break;
        }
        return acc;
    }
    MPoly<K> factor() {
        if (eat_op("-")) return -factor();
        if (eat_op("+")) return factor();
        MPoly<K> base = primary();
        if (eat_op("^")) {
            if (cur().kind != Token::Number) throw std::invalid_argument("exponent must be an integer");
            long e = std::stol(cur().text);
            advance();
            MPoly<K> acc = MPoly<K>::constant(nvars(), k_one<K>());
            for (long i = 0; i < e; ++i) acc *= base;
            return acc;
        }
        return base;
    }
    MPoly<K> primary() {
        if (eat_op("(")) {
            MPoly<K> e = expr();
            if (!eat_op(")")) throw std::invalid_argument("missing ')'");
            return e;
        }
        if (cur().kind == Token::Number) {
            Rat r = Rat::parse(cur().text);
            advance();
            return MPoly<K>::constant(nvars(), from_rat<K>(r));
        }
        if (cur().kind == Token::Ident) {
            std::string name = cur().text;
            advance();
            for (int v = 0; v < nvars(); ++v)
                if (vars_[v] == name) return MPoly<K>::variable(nvars(), v, k_one<K>());
            auto it = params_.find(name);
            if (it != params_.end()) return MPoly<K>::constant(nvars(), it->second);
            throw std::invalid_argument("unknown variable '" + name + "'");
        }
        throw std::invalid_argument("malformed expression");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    const std::vector<std::string>& vars_;
    const std::map<std::string, K>& params_;
};

inline std::vector<std::string> infer_vars(const std::vector<Token>& toks,
                                           const std::map<std::string, int>& reserved) {
    std::vector<std::string> vars;
    for (const auto& t : toks) {
        if (t.kind != Token::Ident || reserved.count(t.text)) continue;
        bool seen = false;
        for (const auto& v : vars) seen = seen || v == t.text;
        if (!seen) vars.push_back(t.text);
    }
    return vars;
}

} // namespace detail

// Parse an arbitrary polynomial expression over declared variables.
template <class K>
MPoly<K> parse_poly(const std::string& text, const std::vector<std::string>& vars,
                    const std::map<std::string, K>& params = {}) {
    detail::ExprParser<K> p(detail::tokenize(text), vars, params);
    return p.parse();
}

/*
 * Parse a form.  With empty `vars` the variables are inferred in order
 * of first appearance.  Non-homogeneous input is an error naming the
 * offending terms; `declared_degree` fixes the degree of "0".
 */
template <class K>
Form<K> parse_form(const std::string& text, std::vector<std::string> vars = {},
                   const std::map<std::string, K>& params = {}, int declared_degree = -1) {
    auto toks = detail::tokenize(text);
    if (vars.empty()) {
        std::map<std::string, int> reserved;
        for (const auto& [k, v] : params) reserved[k] = 1;
        vars = detail::infer_vars(toks, reserved);
    }
    detail::ExprParser<K> parser(std::move(toks), vars, params);
    MPoly<K> p = parser.parse();
    if (p.is_zero())
        return Form<K>(static_cast<int>(vars.size()), declared_degree >= 0 ? declared_degree : 0);
    int deg = -1;
    std::string offenders;
    for (const auto& [e, c] : p.terms()) {
        int d = mi_order(e);
        if (deg < 0) deg = d;
        if (d != p.total_degree()) {
            if (!offenders.empty()) offenders += ", ";
            offenders += MPoly<K>::monomial(p.nvars(), e, c).str(vars);
        }
    }
    if (!offenders.empty())
        throw std::invalid_argument("mixed degrees; offending terms: " + offenders);
    int total = p.total_degree();
    if (declared_degree >= 0 && total != declared_degree)
        throw std::invalid_argument("form has degree " + std::to_string(total) +
                                    ", declared " + std::to_string(declared_degree));
    return Form<K>(static_cast<int>(vars.size()), total, std::move(p));
}

// "1,i,0,0" etc.; each coordinate is a+bi with rational a, b.
inline std::vector<GaussRat> parse_gauss_point(const std::string& text) {
    std::vector<GaussRat> out;
    std::string item;
    std::vector<std::string> items;
    for (char c : text) {
        if (c == ',') { items.push_back(item); item.clear(); }
        else item += c;
    }
    items.push_back(item);
    for (auto& raw : items) {
        std::string s;
        for (char c : raw)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw std::invalid_argument("empty coordinate in point");
        // split into real and imaginary parts at a +/- not at position 0
        size_t split = std::string::npos;
        for (size_t i = 1; i < s.size(); ++i)
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') split = i;
        auto parse_part = [](std::string t, bool* is_imag) {
            *is_imag = false;
            if (!t.empty() && t.back() == 'i') {
                *is_imag = true;
                t.pop_back();
                if (!t.empty() && t.back() == '*') t.pop_back();
                if (t.empty() || t == "+") t = "1";
                else if (t == "-") t = "-1";
            }
            return Rat::parse(t);
        };
        bool im1 = false, im2 = false;
        if (split == std::string::npos) {
            Rat v = parse_part(s, &im1);
            out.push_back(im1 ? GaussRat(Rat(0), v) : GaussRat(v));
        } else {
            Rat a = parse_part(s.substr(0, split), &im1);
            Rat b = parse_part(s.substr(split), &im2);
            if (im1 == im2) throw std::invalid_argument("bad complex coordinate '" + s + "'");
            if (im1) std::swap(a, b);
            out.push_back(GaussRat(a, b));
        }
    }
    return out;
}

} // namespace soscert
