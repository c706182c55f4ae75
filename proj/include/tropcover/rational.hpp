#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers backed by GMP.
 *
 * A thin value wrapper around mpq_class. Every operator returns a fully
 * evaluated Rational, so `auto` is always safe (gmpxx expression templates
 * are never leaked to callers). Values are kept in canonical form: reduced,
 * denominator positive, zero is 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropcover {

class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}                        // NOLINT(implicit)
    Rational(int v) : q_(static_cast<long>(v)) {}      // NOLINT(implicit)
    Rational(long long v) : q_(static_cast<long>(v)) {}// NOLINT(implicit)
    Rational(const mpz_class& n) : q_(n) {}            // NOLINT(implicit)
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }
    Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view s) {
        std::string str(s);
        if (str.empty()) throw std::invalid_argument("Rational::parse: empty string");
        auto slash = str.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(strip_plus(str)));
            mpz_class n(strip_plus(str.substr(0, slash)));
            mpz_class d(strip_plus(str.substr(slash + 1)));
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational::parse: malformed '" + str + "'");
        }
    }

    const mpq_class& get() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    double to_double() const { return q_.get_d(); }

    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_), raw_tag{}); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const {
        std::size_t h1 = std::hash<std::string>{}(q_.get_num().get_str(16));
        std::size_t h2 = std::hash<std::string>{}(q_.get_den().get_str(16));
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }

private:
    struct raw_tag {};
    Rational(mpq_class q, raw_tag) : q_(std::move(q)) {}
    static std::string strip_plus(std::string s) {
        if (!s.empty() && s.front() == '+') s.erase(s.begin());
        return s;
    }

    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Largest integer <= r.
inline mpz_class floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get().get_num_mpz_t(), r.get().get_den_mpz_t());
    return q;
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

inline Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

inline bool is_zero_vector(const QVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Scales v by a positive rational so that its entries are coprime integers.
inline QVector primitive(const QVector& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v)
        if (!x.is_zero()) l = lcm(l, x.den());
    for (const auto& x : v)
        if (!x.is_zero()) g = gcd(g, mpz_class(x.num() * (l / x.den())));
    if (g == 0) return v;
    QVector out;
    out.reserve(v.size());
    Rational scale(l, g);
    for (const auto& x : v) out.push_back(x * scale);
    return out;
}

inline std::string to_string(const QVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace tropcover

template <>
struct std::hash<tropcover::Rational> {
    std::size_t operator()(const tropcover::Rational& r) const noexcept { return r.hash(); }
};
