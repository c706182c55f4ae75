#pragma once

/**
 * @file laurent.hpp
 * @brief Multivariate Laurent polynomials, rational functions and rational
 *        maps between tori over the valued field K.
 *
 * Composition, homogenisation and de-homogenisation live here; they are
 * the symbolic layer underneath the tropical constructions.
 */

#include "tropcover/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

using ExponentVec = std::vector<long>;

inline long total_degree(const ExponentVec& a) { return std::accumulate(a.begin(), a.end(), 0L); }

inline ExponentVec add_exponents(const ExponentVec& a, const ExponentVec& b) {
    ExponentVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline std::string to_string(const ExponentVec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// LaurentPoly
// ---------------------------------------------------------------------------

class LaurentPoly {
public:
    using TermMap = std::map<ExponentVec, ValuedScalar>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static LaurentPoly constant(std::size_t num_vars, const ValuedScalar& c) {
        LaurentPoly p(num_vars);
        p.add_term(ExponentVec(num_vars, 0), c);
        return p;
    }
    static LaurentPoly monomial(const ExponentVec& a, const ValuedScalar& c = ValuedScalar(1)) {
        LaurentPoly p(a.size());
        p.add_term(a, c);
        return p;
    }
    static LaurentPoly variable(std::size_t num_vars, std::size_t index) {
        ExponentVec a(num_vars, 0);
        a.at(index) = 1;
        return monomial(a);
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                  [](long e) { return e == 0; }));
    }
    bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_one(); }

    void add_term(const ExponentVec& a, const ValuedScalar& c) {
        if (a.size() != num_vars_) throw std::invalid_argument("LaurentPoly: exponent length mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Maximal total degree over the support; requires nonzero.
    long degree() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly::degree of zero");
        long d = total_degree(terms_.begin()->first);
        for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
        return d;
    }
    long min_degree() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly::min_degree of zero");
        long d = total_degree(terms_.begin()->first);
        for (const auto& [a, c] : terms_) d = std::min(d, total_degree(a));
        return d;
    }
    /// Maximal exponent of variable i.
    long degree_in(std::size_t i) const {
        long d = 0;
        bool first = true;
        for (const auto& [a, c] : terms_) {
            d = first ? a[i] : std::max(d, a[i]);
            first = false;
        }
        return d;
    }
    long min_degree_in(std::size_t i) const {
        long d = 0;
        bool first = true;
        for (const auto& [a, c] : terms_) {
            d = first ? a[i] : std::min(d, a[i]);
            first = false;
        }
        return d;
    }
    /// Componentwise minimum exponent vector (the monomial content).
    ExponentVec min_exponents() const {
        ExponentVec m(num_vars_, 0);
        bool first = true;
        for (const auto& [a, c] : terms_) {
            for (std::size_t i = 0; i < num_vars_; ++i) m[i] = first ? a[i] : std::min(m[i], a[i]);
            first = false;
        }
        return m;
    }
    bool is_homogeneous(long d) const {
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
    }

    LaurentPoly operator-() const {
        LaurentPoly r(num_vars_);
        for (const auto& [a, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, -c);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_same(o);
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_same(o);
        for (const auto& [a, c] : o.terms_) add_term(a, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_same(b);
        LaurentPoly r(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const ValuedScalar& c) const {
        LaurentPoly r(num_vars_);
        if (c.is_zero()) return r;
        for (const auto& [a, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, k * c);
        return r;
    }
    /// Multiplies by the Laurent monomial x^shift.
    LaurentPoly shifted(const ExponentVec& shift) const {
        LaurentPoly r(num_vars_);
        for (const auto& [a, k] : terms_) r.terms_.emplace(add_exponents(a, shift), k);
        return r;
    }

    /// Non-negative integer power (negative powers exist only for monomials).
    LaurentPoly pow(long e) const {
        if (e < 0) {
            if (!is_monomial()) throw std::domain_error("LaurentPoly::pow: negative power of a non-monomial");
            const auto& [a, c] = *terms_.begin();
            ExponentVec b(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[i] * e;
            return monomial(b, tropcover::pow(c, e));
        }
        LaurentPoly r = constant(num_vars_, ValuedScalar(1)), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    /// Evaluates at a point of K^n (nonzero entries where negative powers occur).
    ValuedScalar evaluate(const std::vector<ValuedScalar>& point) const {
        if (point.size() != num_vars_) throw std::invalid_argument("LaurentPoly::evaluate: dimension mismatch");
        ValuedScalar s;
        for (const auto& [a, c] : terms_) {
            ValuedScalar term = c;
            for (std::size_t i = 0; i < num_vars_; ++i)
                if (a[i] != 0) term *= tropcover::pow(point[i], a[i]);
            s += term;
        }
        return s;
    }

    /// Writes this polynomial as sum_k coeff_k * x_i^k; the returned
    /// coefficients do not involve x_i.
    std::map<long, LaurentPoly> coefficients_in(std::size_t i) const {
        std::map<long, LaurentPoly> out;
        for (const auto& [a, c] : terms_) {
            ExponentVec b = a;
            b[i] = 0;
            auto [it, ins] = out.try_emplace(a[i], LaurentPoly(num_vars_));
            it->second.add_term(b, c);
        }
        return out;
    }

    /// Re-embeds into a ring with `new_num_vars` variables; variable k goes
    /// to index positions[k].
    LaurentPoly embedded(std::size_t new_num_vars, const std::vector<std::size_t>& positions) const {
        LaurentPoly r(new_num_vars);
        for (const auto& [a, c] : terms_) {
            ExponentVec b(new_num_vars, 0);
            for (std::size_t k = 0; k < num_vars_; ++k) b.at(positions.at(k)) += a[k];
            r.add_term(b, c);
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    void check_same(const LaurentPoly& o) const {
        if (o.num_vars_ != num_vars_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
    }

    std::size_t num_vars_ = 0;
    TermMap terms_;
};

inline std::vector<std::string> default_variable_names(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

inline std::string LaurentPoly::str(const std::vector<std::string>& names_in) const {
    auto names = names_in.size() == num_vars_ ? names_in : default_variable_names(num_vars_);
    std::vector<std::string> parts;
    // highest total degree first reads more naturally
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* x, auto* y) { return total_degree(x->first) > total_degree(y->first); });
    for (const auto* t : order) {
        std::string mono;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            long e = t->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e != 1) mono += e < 0 ? "^(" + std::to_string(e) + ")" : "^" + std::to_string(e);
        }
        std::string coef = t->second.str();
        bool compound = !(t->second.is_constant() || t->second.is_monomial()) ||
                        coef.find(" + ") != std::string::npos || coef.find(" - ") != std::string::npos;
        if (compound) coef = "(" + coef + ")";
        if (mono.empty())
            parts.push_back(coef);
        else if (t->second.is_one())
            parts.push_back(mono);
        else if (t->second == ValuedScalar(-1))
            parts.push_back("-" + mono);
        else
            parts.push_back(coef + "*" + mono);
    }
    return join_terms(parts);
}

enum class PolyOp { add, sub, mul };

inline LaurentPoly poly_arith(const LaurentPoly& f, const LaurentPoly& g, PolyOp op) {
    if (f.num_vars() != g.num_vars()) throw std::invalid_argument("poly_arith: dimension mismatch");
    switch (op) {
        case PolyOp::add: return f + g;
        case PolyOp::sub: return f - g;
        case PolyOp::mul: return f * g;
    }
    throw std::logic_error("poly_arith: unknown op");
}

/// The support of f (exponent vectors with nonzero coefficient).
inline std::set<ExponentVec> newton_support(const LaurentPoly& f) {
    if (f.is_zero()) throw std::domain_error("newton_support: zero polynomial");
    std::set<ExponentVec> s;
    for (const auto& [a, c] : f.terms()) s.insert(a);
    return s;
}

// ---------------------------------------------------------------------------
// RationalFunction
// ---------------------------------------------------------------------------

class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(LaurentPoly num)
        : num_(std::move(num)), den_(LaurentPoly::constant(num_.num_vars(), ValuedScalar(1))) {
        normalise();
    }
    RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.num_vars() != den_.num_vars())
            throw std::invalid_argument("RationalFunction: variable count mismatch");
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        normalise();
    }

    std::size_t num_vars() const { return num_.num_vars(); }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw std::domain_error("RationalFunction::pow: zero to a negative power");
            return RationalFunction(den_.pow(-e), num_.pow(-e));
        }
        return RationalFunction(num_.pow(e), den_.pow(e));
    }

    ValuedScalar evaluate(const std::vector<ValuedScalar>& point) const {
        ValuedScalar d = den_.evaluate(point);
        if (d.is_zero()) throw std::domain_error("RationalFunction::evaluate: pole");
        return num_.evaluate(point) / d;
    }

    /// Equality as elements of the function field (cross-multiplication).
    bool equals(const RationalFunction& o) const {
        return num_.num_vars() == o.num_vars() && num_ * o.den_ == o.num_ * den_;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (is_polynomial()) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    // Canonical up to common polynomial factors: denominator has zero
    // monomial content and first coefficient 1; monomial denominators are
    // folded into the numerator.
    void normalise() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(num_.num_vars(), ValuedScalar(1));
            return;
        }
        if (den_.is_monomial()) {
            const auto& [a, c] = *den_.terms().begin();
            ExponentVec neg(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
            num_ = num_.shifted(neg).scaled(c.inverse());
            den_ = LaurentPoly::constant(num_.num_vars(), ValuedScalar(1));
            return;
        }
        ExponentVec m = den_.min_exponents();
        if (std::any_of(m.begin(), m.end(), [](long e) { return e != 0; })) {
            for (auto& e : m) e = -e;
            num_ = num_.shifted(m);
            den_ = den_.shifted(m);
        }
        const ValuedScalar& lead = den_.terms().begin()->second;
        if (!lead.is_one()) {
            ValuedScalar inv = lead.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
        if (num_ == den_) {
            num_ = LaurentPoly::constant(num_.num_vars(), ValuedScalar(1));
            den_ = num_;
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

// ---------------------------------------------------------------------------
// RationalMap
// ---------------------------------------------------------------------------

class RationalMap {
public:
    RationalMap() = default;
    RationalMap(std::size_t domain_dim, std::vector<RationalFunction> components, std::string name = {})
        : domain_dim_(domain_dim), components_(std::move(components)), name_(std::move(name)) {
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (components_[i].num_vars() != domain_dim_)
                throw std::invalid_argument("RationalMap: component " + std::to_string(i) +
                                            " has the wrong number of variables");
            if (components_[i].is_zero())
                throw std::invalid_argument("RationalMap: component " + std::to_string(i) +
                                            " is identically zero (maps must land in the torus)");
        }
    }
    static RationalMap from_polys(std::size_t domain_dim, const std::vector<LaurentPoly>& polys,
                                  std::string name = {}) {
        std::vector<RationalFunction> comps;
        for (const auto& p : polys) comps.emplace_back(p);
        return RationalMap(domain_dim, std::move(comps), std::move(name));
    }
    static RationalMap identity(std::size_t n) {
        std::vector<RationalFunction> comps;
        for (std::size_t i = 0; i < n; ++i) comps.emplace_back(LaurentPoly::variable(n, i));
        return RationalMap(n, std::move(comps), "id");
    }
    /// The monomial map x -> (x^{M_k})_k for an integer matrix with rows M_k.
    static RationalMap monomial(const std::vector<ExponentVec>& rows, std::size_t domain_dim) {
        std::vector<RationalFunction> comps;
        for (const auto& r : rows) {
            if (r.size() != domain_dim) throw std::invalid_argument("RationalMap::monomial: row length");
            comps.emplace_back(LaurentPoly::monomial(r));
        }
        return RationalMap(domain_dim, std::move(comps));
    }

    std::size_t domain_dim() const { return domain_dim_; }
    std::size_t codomain_dim() const { return components_.size(); }
    const std::vector<RationalFunction>& components() const { return components_; }
    const RationalFunction& operator[](std::size_t i) const { return components_.at(i); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<std::string>& variable_names() const { return var_names_; }
    void set_variable_names(std::vector<std::string> v) {
        if (!v.empty() && v.size() != domain_dim_)
            throw std::invalid_argument("RationalMap: variable name count mismatch");
        var_names_ = std::move(v);
    }

    std::vector<ValuedScalar> evaluate(const std::vector<ValuedScalar>& point) const {
        std::vector<ValuedScalar> out;
        for (const auto& c : components_) out.push_back(c.evaluate(point));
        return out;
    }

    /// Componentwise equality in the function field.
    bool equals(const RationalMap& o) const {
        if (domain_dim_ != o.domain_dim_ || components_.size() != o.components_.size()) return false;
        for (std::size_t i = 0; i < components_.size(); ++i)
            if (!components_[i].equals(o.components_[i])) return false;
        return true;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i) s += ", ";
            s += components_[i].str(var_names_);
        }
        return s + ")";
    }

private:
    std::size_t domain_dim_ = 0;
    std::vector<RationalFunction> components_;
    std::string name_;
    std::vector<std::string> var_names_;
};

// ---------------------------------------------------------------------------
// Substitution and composition
// ---------------------------------------------------------------------------

namespace detail {

/// Caches non-negative powers of a polynomial.
class PowerCache {
public:
    explicit PowerCache(LaurentPoly base) : powers_{LaurentPoly::constant(base.num_vars(), ValuedScalar(1))} {
        powers_.push_back(std::move(base));
    }
    const LaurentPoly& operator()(long e) {
        if (e < 0) throw std::logic_error("PowerCache: negative exponent");
        while (static_cast<long>(powers_.size()) <= e) powers_.push_back(powers_.back() * powers_[1]);
        return powers_[static_cast<std::size_t>(e)];
    }

private:
    std::vector<LaurentPoly> powers_;
};

/// Exponent window [lo, hi] per variable, with lo <= 0 <= hi.
using ExponentWindow = std::vector<std::pair<long, long>>;

inline void widen(ExponentWindow& w, const LaurentPoly& f) {
    for (const auto& [a, c] : f.terms())
        for (std::size_t j = 0; j < a.size(); ++j) {
            w[j].first = std::min(w[j].first, a[j]);
            w[j].second = std::max(w[j].second, a[j]);
        }
}

/// Substitutes alpha into f using a fixed exponent window so that several
/// polynomials share the same denominator. Returns the numerator; the
/// denominator is prod_j p_j^{-lo_j} q_j^{hi_j}.
inline LaurentPoly substitute_numerator(const LaurentPoly& f, const std::vector<RationalFunction>& comps,
                                        const ExponentWindow& w, std::vector<PowerCache>& pnum,
                                        std::vector<PowerCache>& pden, std::size_t out_vars) {
    LaurentPoly out(out_vars);
    for (const auto& [a, c] : f.terms()) {
        LaurentPoly term = LaurentPoly::constant(out_vars, c);
        for (std::size_t j = 0; j < a.size(); ++j) {
            long pe = a[j] - w[j].first;
            long qe = w[j].second - a[j];
            if (pe > 0) term *= pnum[j](pe);
            if (qe > 0 && !comps[j].is_polynomial()) term *= pden[j](qe);
        }
        out += term;
    }
    return out;
}

inline LaurentPoly substitute_denominator(const std::vector<RationalFunction>& comps, const ExponentWindow& w,
                                          std::vector<PowerCache>& pnum, std::vector<PowerCache>& pden,
                                          std::size_t out_vars) {
    LaurentPoly d = LaurentPoly::constant(out_vars, ValuedScalar(1));
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (w[j].first < 0) d *= pnum[j](-w[j].first);
        if (w[j].second > 0 && !comps[j].is_polynomial()) d *= pden[j](w[j].second);
    }
    return d;
}

struct SubstitutionContext {
    std::vector<PowerCache> pnum, pden;
    explicit SubstitutionContext(const RationalMap& alpha) {
        for (const auto& c : alpha.components()) {
            pnum.emplace_back(c.num());
            pden.emplace_back(c.den());
        }
    }
};

}  // namespace detail

/// f(alpha(x)) as a single quotient.
inline RationalFunction substitute(const LaurentPoly& f, const RationalMap& alpha) {
    if (f.num_vars() != alpha.codomain_dim()) throw std::invalid_argument("substitute: dimension mismatch");
    detail::ExponentWindow w(f.num_vars(), {0, 0});
    detail::widen(w, f);
    detail::SubstitutionContext ctx(alpha);
    auto num = detail::substitute_numerator(f, alpha.components(), w, ctx.pnum, ctx.pden, alpha.domain_dim());
    auto den = detail::substitute_denominator(alpha.components(), w, ctx.pnum, ctx.pden, alpha.domain_dim());
    return RationalFunction(std::move(num), std::move(den));
}

/// phi o alpha, componentwise, normalised to one quotient per component.
inline RationalMap compose_maps(const RationalMap& phi, const RationalMap& alpha) {
    if (alpha.codomain_dim() != phi.domain_dim()) throw std::invalid_argument("compose_maps: dimension mismatch");
    detail::SubstitutionContext ctx(alpha);
    std::vector<RationalFunction> comps;
    for (const auto& c : phi.components()) {
        detail::ExponentWindow w(phi.domain_dim(), {0, 0});
        detail::widen(w, c.num());
        detail::widen(w, c.den());
        // shared window: the substituted denominators cancel
        auto n = detail::substitute_numerator(c.num(), alpha.components(), w, ctx.pnum, ctx.pden,
                                              alpha.domain_dim());
        auto d = detail::substitute_numerator(c.den(), alpha.components(), w, ctx.pnum, ctx.pden,
                                              alpha.domain_dim());
        if (n.is_zero()) throw std::domain_error("compose_maps: composite component vanishes identically");
        if (d.is_zero()) throw std::domain_error("compose_maps: composite denominator vanishes identically");
        comps.emplace_back(std::move(n), std::move(d));
    }
    RationalMap out(alpha.domain_dim(), std::move(comps));
    if (!phi.name().empty() || !alpha.name().empty()) out.set_name(phi.name() + "∘" + alpha.name());
    out.set_variable_names(alpha.variable_names());
    return out;
}

// ---------------------------------------------------------------------------
// Common denominators and homogenisation
// ---------------------------------------------------------------------------

struct CommonDenominatorForm {
    LaurentPoly g;
    std::vector<LaurentPoly> f;

    long max_degree() const {
        long d = g.degree();
        for (const auto& p : f) d = std::max(d, p.degree());
        return d;
    }
};

/// phi_i = f_i / g with g, f_i polynomials (no negative exponents), the
/// common monomial content removed and g's first coefficient equal to 1.
inline CommonDenominatorForm common_denominator_form(const RationalMap& phi) {
    const std::size_t m = phi.domain_dim();
    std::vector<LaurentPoly> dens;
    for (const auto& c : phi.components())
        if (std::find(dens.begin(), dens.end(), c.den()) == dens.end()) dens.push_back(c.den());

    CommonDenominatorForm out;
    out.g = LaurentPoly::constant(m, ValuedScalar(1));
    for (const auto& d : dens) out.g *= d;
    for (const auto& c : phi.components()) {
        LaurentPoly fi = c.num();
        for (const auto& d : dens)
            if (!(d == c.den())) fi *= d;
        out.f.push_back(std::move(fi));
    }
    // clear the Laurent part and the common monomial content
    ExponentVec lo = out.g.min_exponents();
    for (const auto& fi : out.f) {
        ExponentVec l = fi.min_exponents();
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], l[i]);
    }
    for (auto& e : lo) e = -e;
    out.g = out.g.shifted(lo);
    for (auto& fi : out.f) fi = fi.shifted(lo);
    ValuedScalar lead = out.g.terms().begin()->second;
    if (!lead.is_one()) {
        ValuedScalar inv = lead.inverse();
        out.g = out.g.scaled(inv);
        for (auto& fi : out.f) fi = fi.scaled(inv);
    }
    return out;
}

/// x0^d * p(x1/x0, ..., xm/x0) in m+1 variables (x0 prepended).
inline LaurentPoly homogenize_poly(const LaurentPoly& p, long d) {
    LaurentPoly out(p.num_vars() + 1);
    for (const auto& [a, c] : p.terms()) {
        ExponentVec b(a.size() + 1);
        b[0] = d - total_degree(a);
        std::copy(a.begin(), a.end(), b.begin() + 1);
        out.add_term(b, c);
    }
    return out;
}

/// Degree-d homogenisation (g~, f~_1, ..., f~_n): T^{m+1} -> T^{n+1}.
inline RationalMap homogenize_map(const RationalMap& phi, long d) {
    auto form = common_denominator_form(phi);
    auto check = [d](const LaurentPoly& p, const std::string& what) {
        if (p.degree() > d)
            throw std::invalid_argument("homogenize_map: degree " + std::to_string(d) + " is below deg(" + what +
                                        ") = " + std::to_string(p.degree()));
    };
    check(form.g, "g");
    for (std::size_t i = 0; i < form.f.size(); ++i) check(form.f[i], "f_" + std::to_string(i + 1));
    if (d <= 0) throw std::invalid_argument("homogenize_map: degree must be positive");

    std::vector<LaurentPoly> polys{homogenize_poly(form.g, d)};
    for (const auto& fi : form.f) polys.push_back(homogenize_poly(fi, d));
    auto out = RationalMap::from_polys(phi.domain_dim() + 1, polys, phi.name().empty() ? "" : phi.name() + "~");
    if (!phi.variable_names().empty()) {
        std::vector<std::string> names{"x0"};
        for (const auto& n : phi.variable_names()) names.push_back(n == "x0" ? "x0'" : n);
        out.set_variable_names(names);
    }
    return out;
}

/// Minimal admissible homogenisation degree (at least 1).
inline long minimal_homogenization_degree(const RationalMap& phi) {
    return std::max(1L, common_denominator_form(phi).max_degree());
}

/// Sets the first variable to 1 and divides components 1.. by component 0.
inline RationalMap dehomogenize_map(const RationalMap& tilde) {
    if (tilde.codomain_dim() < 2) throw std::invalid_argument("dehomogenize_map: need at least two components");
    if (tilde.domain_dim() < 1) throw std::invalid_argument("dehomogenize_map: need at least one variable");
    const std::size_t m = tilde.domain_dim() - 1;
    // x0 -> 1, x_k -> x_{k-1}
    std::vector<RationalFunction> sub;
    sub.emplace_back(LaurentPoly::constant(m, ValuedScalar(1)));
    for (std::size_t k = 0; k < m; ++k) sub.emplace_back(LaurentPoly::variable(m, k));
    RationalMap setter(m, std::move(sub));
    std::vector<RationalFunction> comps;
    for (const auto& c : tilde.components())
        comps.push_back(substitute(c.num(), setter) / substitute(c.den(), setter));
    if (comps[0].is_zero()) throw std::domain_error("dehomogenize_map: component 0 vanishes");
    std::vector<RationalFunction> out;
    for (std::size_t i = 1; i < comps.size(); ++i) out.push_back(comps[i] / comps[0]);
    RationalMap r(m, std::move(out));
    if (tilde.variable_names().size() == tilde.domain_dim())
        r.set_variable_names({tilde.variable_names().begin() + 1, tilde.variable_names().end()});
    return r;
}

}  // namespace tropcover
