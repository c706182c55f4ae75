#pragma once

/**
 * @file parse.hpp
 * @brief Text grammar for scalars, Laurent polynomials and rational maps.
 *
 *   expr  := term (('+' | '-') term)*
 *   term  := unary (('*' | '/') unary)*
 *   unary := ('-' | '+') unary | power
 *   power := atom ('^' exponent)?
 *   atom  := integer | 'i' | 't' | identifier | '(' expr ')'
 *
 * `t` is the Puiseux parameter and may carry a rational exponent `t^(p/q)`;
 * every other power must be an integer (negative allowed). `i` is the
 * imaginary unit. A name listed as a variable shadows `t` and `i`.
 */

#include "tropcover/laurent.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropcover {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    RationalFunction parse() {
        auto v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "': " + msg);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    RationalFunction constant(const ValuedScalar& c) const {
        return RationalFunction(LaurentPoly::constant(vars_.size(), c));
    }

    RationalFunction expr() {
        auto v = term();
        for (;;) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }
    RationalFunction term() {
        auto v = unary();
        for (;;) {
            if (accept('*'))
                v = v * unary();
            else if (accept('/')) {
                auto d = unary();
                if (d.is_zero()) fail("division by zero");
                v = v / d;
            } else
                return v;
        }
    }
    RationalFunction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Rational exponent() {
        if (accept('(')) {
            bool neg = accept('-');
            Rational e(integer());
            if (accept('/')) {
                mpz_class d = integer();
                if (d == 0) fail("zero exponent denominator");
                e = Rational(e.num(), d);
            }
            expect(')');
            return neg ? -e : e;
        }
        bool neg = accept('-');
        Rational e(integer());
        return neg ? -e : e;
    }

    RationalFunction power() {
        skip_ws();
        bool is_t = false;
        auto base = atom(is_t);
        if (!accept('^')) return base;
        Rational e = exponent();
        if (is_t) return constant(ValuedScalar::t_power(e));
        if (!e.is_integer()) fail("non-integer exponent on a non-t base");
        return base.pow(e.num().get_si());
    }

    RationalFunction atom(bool& is_t) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return constant(ValuedScalar(Rational(integer())));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k] == name) return RationalFunction(LaurentPoly::variable(vars_.size(), k));
            if (name == "t") {
                is_t = true;
                return constant(ValuedScalar::t_power(Rational(1)));
            }
            if (name == "i") return constant(ValuedScalar::imag_unit());
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Identifiers other than `t` and `i`, in order of first appearance.
inline std::vector<std::string> collect_identifiers(std::string_view text) {
    std::vector<std::string> out;
    for (std::size_t p = 0; p < text.size();) {
        char c = text[p];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p;
            while (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_' || text[p] == '\''))
                ++p;
            std::string name(text.substr(start, p - start));
            if (name != "t" && name != "i" && std::find(out.begin(), out.end(), name) == out.end())
                out.push_back(name);
        } else {
            ++p;
        }
    }
    return out;
}

inline RationalFunction parse_rational_function(std::string_view text, const std::vector<std::string>& vars) {
    return detail::ExprParser(text, vars).parse();
}

inline LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& vars) {
    auto f = parse_rational_function(text, vars);
    if (!f.is_polynomial()) throw ParseError("expected a Laurent polynomial: '" + std::string(text) + "'");
    return f.num();
}

inline ValuedScalar parse_scalar(std::string_view text) {
    auto f = parse_rational_function(text, {});
    if (f.num().is_zero()) return ValuedScalar();
    return f.num().terms().begin()->second / f.den().terms().begin()->second;
}

/// Parsed polynomial/map file: optional `vars:` and `name:` headers, one
/// expression per remaining non-empty line; `#` starts a comment.
struct ExpressionFile {
    std::vector<std::string> vars;
    std::string name;
    std::vector<std::string> lines;
};

inline ExpressionFile read_expression_text(std::string_view text) {
    ExpressionFile f;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_vars = false;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.rfind("vars:", 0) == 0) {
            std::istringstream vs(line.substr(5));
            std::string v;
            f.vars.clear();
            while (vs >> v) f.vars.push_back(v);
            have_vars = true;
        } else if (line.rfind("name:", 0) == 0) {
            auto n = line.substr(5);
            n.erase(0, n.find_first_not_of(' '));
            f.name = n;
        } else {
            f.lines.push_back(line);
        }
    }
    if (!have_vars) {
        std::string all;
        for (const auto& l : f.lines) all += l + "\n";
        f.vars = collect_identifiers(all);
    }
    return f;
}

inline RationalMap parse_map_text(std::string_view text) {
    auto f = read_expression_text(text);
    if (f.lines.empty()) throw ParseError("map text has no components");
    std::vector<RationalFunction> comps;
    for (const auto& l : f.lines) comps.push_back(parse_rational_function(l, f.vars));
    RationalMap m(f.vars.size(), std::move(comps), f.name);
    m.set_variable_names(f.vars);
    return m;
}

/// Parses "vars: ..." plus exactly one polynomial line.
inline std::pair<LaurentPoly, std::vector<std::string>> parse_poly_text(std::string_view text) {
    auto f = read_expression_text(text);
    if (f.lines.size() != 1) throw ParseError("polynomial text must contain exactly one expression");
    return {parse_laurent(f.lines.front(), f.vars), f.vars};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tropcover
