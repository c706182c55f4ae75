#pragma once

/**
 * @file scalar.hpp
 * @brief The coefficient field: fractions of Puiseux polynomials over Q(i).
 *
 * Elements of K = Frac(Q(i)[t^Q]) carry the t-adic valuation
 * v(a) = minexp(num) - minexp(den). Elements not involving t have
 * valuation zero, which realises the trivial valuation as a sub-case.
 *
 * ValuedScalar is kept canonical: numerator and denominator are coprime,
 * the denominator has minimal exponent 0 and lowest coefficient 1. Equal
 * field elements therefore have equal representations.
 */

#include "tropcover/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
    GaussianRational(long r) : re(r) {}                  // NOLINT(implicit)
    GaussianRational(int r) : re(r) {}                   // NOLINT(implicit)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational imag_unit() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    Rational norm() const { return re * re + im * im; }
    GaussianRational conj() const { return {re, -im}; }

    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = norm();
        return {re / n, -im / n};
    }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real()) {
            re *= o.re;
            im *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend auto operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (auto c = a.re <=> b.re; c != 0) return c;
        return a.im <=> b.im;
    }

    std::string str() const {
        if (im.is_zero()) return re.str();
        auto imag = [](const Rational& v) {
            Rational a = abs(v);
            return a == Rational(1) ? std::string("i") : a.str() + "*i";
        };
        if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + imag(im);
        return "(" + re.str() + (im.sign() < 0 ? "-" : "+") + imag(im) + ")";
    }
};

inline GaussianRational pow(GaussianRational base, long e) {
    if (e < 0) {
        base = base.inverse();
        e = -e;
    }
    GaussianRational r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Valuations: Q with an explicit +infinity
// ---------------------------------------------------------------------------

class Valuation {
public:
    Valuation() = default;  // +infinity
    Valuation(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
    static Valuation infinity() { return {}; }

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const {
        if (!value_) throw std::logic_error("Valuation: value of +infinity");
        return *value_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) return {};
        return *a.value_ + *b.value_;
    }
    friend bool operator==(const Valuation& a, const Valuation& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
            return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return *a.value_ <=> *b.value_;
    }

    std::string str() const { return value_ ? value_->str() : std::string("inf"); }

private:
    std::optional<Rational> value_;
};

// ---------------------------------------------------------------------------
// Puiseux polynomials: finite sums c * t^e with e in Q
// ---------------------------------------------------------------------------

class PuiseuxPoly {
public:
    using TermMap = std::map<Rational, GaussianRational>;

    PuiseuxPoly() = default;
    PuiseuxPoly(GaussianRational c) { add_term(Rational(0), std::move(c)); }  // NOLINT(implicit)
    PuiseuxPoly(long c) : PuiseuxPoly(GaussianRational(c)) {}                // NOLINT(implicit)
    PuiseuxPoly(int c) : PuiseuxPoly(GaussianRational(c)) {}                 // NOLINT(implicit)
    PuiseuxPoly(Rational c) : PuiseuxPoly(GaussianRational(std::move(c))) {}  // NOLINT(implicit)

    static PuiseuxPoly monomial(const GaussianRational& c, const Rational& e) {
        PuiseuxPoly p;
        p.add_term(e, c);
        return p;
    }
    /// t^e
    static PuiseuxPoly t_power(const Rational& e) { return monomial(GaussianRational(1), e); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero()); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of t^0 (zero when absent).
    GaussianRational constant_coefficient() const {
        auto it = terms_.find(Rational(0));
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    Valuation valuation() const {
        if (terms_.empty()) return Valuation::infinity();
        return terms_.begin()->first;
    }
    const Rational& min_exponent() const {
        if (terms_.empty()) throw std::domain_error("PuiseuxPoly: min_exponent of zero");
        return terms_.begin()->first;
    }
    const Rational& max_exponent() const {
        if (terms_.empty()) throw std::domain_error("PuiseuxPoly: max_exponent of zero");
        return terms_.rbegin()->first;
    }
    std::pair<Rational, GaussianRational> leading_term() const {
        if (terms_.empty()) throw std::domain_error("PuiseuxPoly: leading_term of zero");
        return *terms_.begin();
    }

    void add_term(const Rational& e, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PuiseuxPoly operator-() const {
        PuiseuxPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
        return r;
    }
    PuiseuxPoly& operator+=(const PuiseuxPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PuiseuxPoly& operator-=(const PuiseuxPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
    friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
        PuiseuxPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    PuiseuxPoly& operator*=(const PuiseuxPoly& o) { return *this = *this * o; }

    PuiseuxPoly scaled(const GaussianRational& c, const Rational& shift) const {
        PuiseuxPoly r;
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + shift, k * c);
        return r;
    }

    /// Exact division by a monomial c * t^e.
    PuiseuxPoly divided_by_monomial(const GaussianRational& c, const Rational& e) const {
        return scaled(c.inverse(), -e);
    }

    /// Keeps only terms with exponent strictly below `bound`.
    PuiseuxPoly truncated_below(const Rational& bound) const {
        PuiseuxPoly r;
        for (const auto& [e, c] : terms_) {
            if (!(e < bound)) break;
            r.terms_.emplace_hint(r.terms_.end(), e, c);
        }
        return r;
    }
    /// Keeps the first `k` terms in increasing exponent order.
    PuiseuxPoly first_terms(std::size_t k) const {
        PuiseuxPoly r;
        for (const auto& [e, c] : terms_) {
            if (r.terms_.size() >= k) break;
            r.terms_.emplace_hint(r.terms_.end(), e, c);
        }
        return r;
    }

    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }
    friend auto operator<=>(const PuiseuxPoly& a, const PuiseuxPoly& b) {
        return std::lexicographical_compare_three_way(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                                      b.terms_.end());
    }

    std::string str() const;

private:
    TermMap terms_;
};

inline std::string t_power_string(const Rational& e) {
    if (e.is_zero()) return "";
    if (e == Rational(1)) return "t";
    if (e.is_integer() && e.sign() > 0) return "t^" + e.str();
    return "t^(" + e.str() + ")";
}

inline std::string term_string(const GaussianRational& c, const Rational& e) {
    std::string tp = t_power_string(e);
    if (tp.empty()) return c.str();
    if (c == GaussianRational(1)) return tp;
    if (c == GaussianRational(-1)) return "-" + tp;
    return c.str() + "*" + tp;
}

/// Joins signed term strings as "a + b - c".
inline std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string s = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (!t.empty() && t.front() == '-')
            s += " - " + t.substr(1);
        else
            s += " + " + t;
    }
    return s;
}

inline std::string PuiseuxPoly::str() const {
    std::vector<std::string> parts;
    parts.reserve(terms_.size());
    for (const auto& [e, c] : terms_) parts.push_back(term_string(c, e));
    return join_terms(parts);
}

namespace detail {

/// Dense univariate polynomial over Q(i); index = degree.
using UPoly = std::vector<GaussianRational>;

inline void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Polynomial long division; returns (quotient, remainder).
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    trim(a);
    if (b.empty()) throw std::domain_error("divmod: division by zero polynomial");
    if (a.size() < b.size()) return {UPoly{}, a};
    UPoly q(a.size() - b.size() + 1);
    GaussianRational inv_lead = b.back().inverse();
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k > db;) {
        --k;
        GaussianRational coef = a[k] * inv_lead;
        std::size_t shift = k - db;
        q[shift] = coef;
        if (!coef.is_zero())
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        GaussianRational inv = a.back().inverse();
        for (auto& c : a) c *= inv;
    }
    return a;
}

/// Common exponent lattice of a set of Puiseux polynomials: exponents e map
/// to integers (e - base) * L.
struct Lattice {
    Rational base;
    mpz_class scale = 1;
};

inline Lattice lattice_of(const std::vector<const PuiseuxPoly*>& ps) {
    Lattice lat;
    bool first = true;
    for (const auto* p : ps) {
        for (const auto& [e, c] : p->terms()) {
            lat.scale = lcm(lat.scale, e.den());
            if (first || e < lat.base) lat.base = e;
            first = false;
        }
    }
    return lat;
}

inline UPoly to_upoly(const PuiseuxPoly& p, const Lattice& lat) {
    UPoly out;
    for (const auto& [e, c] : p.terms()) {
        Rational k = (e - lat.base) * Rational(lat.scale);
        if (!k.is_integer() || k.sign() < 0) throw std::logic_error("to_upoly: exponent off lattice");
        auto idx = static_cast<std::size_t>(k.num().get_ui());
        if (out.size() <= idx) out.resize(idx + 1);
        out[idx] = c;
    }
    return out;
}

inline PuiseuxPoly from_upoly(const UPoly& u, const Lattice& lat, const Rational& base) {
    PuiseuxPoly p;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (!u[k].is_zero()) p.add_term(base + Rational(static_cast<long>(k)) / Rational(lat.scale), u[k]);
    return p;
}

}  // namespace detail

/// Greatest common divisor in Q(i)[t^Q], normalised to minimal exponent 0
/// and lowest coefficient 1.
inline PuiseuxPoly gcd(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    auto lat = detail::lattice_of({&a, &b});
    // shift each to its own minimal exponent so monomial content is dropped
    auto shifted = [&](const PuiseuxPoly& p) {
        if (p.is_zero()) return detail::UPoly{};
        detail::Lattice l = lat;
        l.base = p.min_exponent();
        return detail::to_upoly(p, l);
    };
    auto g = detail::gcd(shifted(a), shifted(b));
    auto out = detail::from_upoly(g, lat, Rational(0));
    if (!out.is_zero()) {
        auto [e, c] = out.leading_term();
        out = out.divided_by_monomial(c, e);
    }
    return out;
}

/// Exact quotient a / b; throws if b does not divide a in Q(i)[t^Q].
inline PuiseuxPoly exact_divide(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (b.is_zero()) throw std::domain_error("exact_divide: division by zero");
    if (a.is_zero()) return {};
    if (b.is_monomial()) {
        auto [e, c] = b.leading_term();
        return a.divided_by_monomial(c, e);
    }
    auto lat = detail::lattice_of({&a, &b});
    detail::Lattice la = lat, lb = lat;
    la.base = a.min_exponent();
    lb.base = b.min_exponent();
    auto [q, r] = detail::divmod(detail::to_upoly(a, la), detail::to_upoly(b, lb));
    if (!r.empty()) throw std::domain_error("exact_divide: not divisible");
    return detail::from_upoly(q, lat, a.min_exponent() - b.min_exponent());
}

// ---------------------------------------------------------------------------
// ValuedScalar: the field K
// ---------------------------------------------------------------------------

class ValuedScalar {
public:
    ValuedScalar() : den_(1) {}
    ValuedScalar(PuiseuxPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(implicit)
    ValuedScalar(GaussianRational c) : ValuedScalar(PuiseuxPoly(std::move(c))) {}  // NOLINT(implicit)
    ValuedScalar(Rational c) : ValuedScalar(PuiseuxPoly(std::move(c))) {}          // NOLINT(implicit)
    ValuedScalar(long c) : ValuedScalar(PuiseuxPoly(c)) {}                         // NOLINT(implicit)
    ValuedScalar(int c) : ValuedScalar(PuiseuxPoly(c)) {}                          // NOLINT(implicit)
    ValuedScalar(PuiseuxPoly num, PuiseuxPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("ValuedScalar: zero denominator");
        normalise();
    }

    static ValuedScalar t_power(const Rational& e) { return PuiseuxPoly::t_power(e); }
    static ValuedScalar imag_unit() { return GaussianRational::imag_unit(); }

    const PuiseuxPoly& num() const { return num_; }
    const PuiseuxPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == PuiseuxPoly(1); }
    /// True when the element lies in Q(i) (no t involved).
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_monomial() const { return num_.is_monomial() && den_.is_constant(); }

    /// v(a) = minexp(num) - minexp(den); +infinity for zero.
    Valuation valuation() const {
        if (num_.is_zero()) return Valuation::infinity();
        return num_.min_exponent() - den_.min_exponent();
    }

    /// Lowest-order term; requires a monomial denominator (always the case
    /// after normalisation when den == 1).
    std::pair<Rational, GaussianRational> leading_term() const {
        if (is_zero()) throw std::domain_error("ValuedScalar::leading_term: zero element");
        if (!den_.is_monomial())
            throw std::domain_error("ValuedScalar::leading_term: denominator is not a monomial");
        auto [e, c] = num_.leading_term();
        auto [de, dc] = den_.leading_term();
        return {e - de, c / dc};
    }

    /// Leading coefficient of the Laurent expansion in t (the residue of
    /// a * t^{-v(a)}); defined for every nonzero element.
    GaussianRational initial_coefficient() const {
        if (is_zero()) throw std::domain_error("ValuedScalar::initial_coefficient: zero element");
        return num_.leading_term().second / den_.leading_term().second;
    }

    ValuedScalar operator-() const { return ValuedScalar(-num_, den_, raw_tag{}); }
    friend ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b) {
        if (a.den_ == b.den_) return ValuedScalar(a.num_ + b.num_, a.den_);
        return ValuedScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b) { return a + (-b); }
    friend ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_ == PuiseuxPoly(1) && b.den_ == PuiseuxPoly(1))
            return ValuedScalar(a.num_ * b.num_, PuiseuxPoly(1), raw_tag{});
        return ValuedScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b) {
        if (b.is_zero()) throw std::domain_error("ValuedScalar: division by zero");
        return ValuedScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    ValuedScalar& operator+=(const ValuedScalar& o) { return *this = *this + o; }
    ValuedScalar& operator-=(const ValuedScalar& o) { return *this = *this - o; }
    ValuedScalar& operator*=(const ValuedScalar& o) { return *this = *this * o; }
    ValuedScalar& operator/=(const ValuedScalar& o) { return *this = *this / o; }

    ValuedScalar inverse() const { return ValuedScalar(1) / *this; }

    friend bool operator==(const ValuedScalar& a, const ValuedScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend auto operator<=>(const ValuedScalar& a, const ValuedScalar& b) {
        if (auto c = a.num_ <=> b.num_; c != 0) return c;
        return a.den_ <=> b.den_;
    }

    std::string str() const {
        if (den_ == PuiseuxPoly(1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    struct raw_tag {};
    ValuedScalar(PuiseuxPoly num, PuiseuxPoly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalise() {
        if (num_.is_zero()) {
            den_ = PuiseuxPoly(1);
            return;
        }
        if (!den_.is_monomial()) {
            PuiseuxPoly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = exact_divide(num_, g);
                den_ = exact_divide(den_, g);
            }
        }
        auto [e, c] = den_.leading_term();
        if (!(e.is_zero() && c == GaussianRational(1))) {
            num_ = num_.divided_by_monomial(c, e);
            den_ = den_.divided_by_monomial(c, e);
        }
    }

    PuiseuxPoly num_;
    PuiseuxPoly den_;
};

inline ValuedScalar pow(const ValuedScalar& base, long e) {
    if (e < 0) return pow(base.inverse(), -e);
    ValuedScalar r(1), b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

enum class ArithOp { add, sub, mul, div };

/// Field operation dispatch; division by zero raises std::domain_error.
inline ValuedScalar scalar_arith(const ValuedScalar& a, const ValuedScalar& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw std::logic_error("scalar_arith: unknown op");
}

inline Valuation valuation(const ValuedScalar& a) { return a.valuation(); }

inline std::pair<Rational, GaussianRational> leading_term(const ValuedScalar& a) { return a.leading_term(); }

}  // namespace tropcover
