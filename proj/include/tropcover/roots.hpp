#pragma once

/**
 * @file roots.hpp
 * @brief Root finding: exact roots in Q(i) of univariate polynomials and
 *        truncated Puiseux expansions of roots over Q(i)(t^Q) via the
 *        Newton-polygon iteration.
 */

#include "tropcover/scalar.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

struct RootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct GaussInt {
    mpz_class re, im;
};

inline mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Every Gaussian integer (all four associates) dividing z != 0.
inline std::vector<GaussInt> gaussian_divisors(const GaussInt& z) {
    const mpz_class n = z.re * z.re + z.im * z.im;
    if (n == 0) throw std::domain_error("gaussian_divisors: zero");
    if (n > mpz_class("100000000000000")) throw RootError("coefficients too large for the exact root search");
    std::vector<mpz_class> norms;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            norms.push_back(d);
            if (d * d != n) norms.push_back(n / d);
        }
    std::vector<GaussInt> out;
    for (const auto& d : norms) {
        mpz_class amax = isqrt(d);
        for (mpz_class a = 0; a <= amax; ++a) {
            mpz_class b2 = d - a * a;
            mpz_class b = isqrt(b2);
            if (b * b != b2) continue;
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    if ((a == 0 && sa < 0) || (b == 0 && sb < 0)) continue;
                    GaussInt w{a * sa, b * sb};
                    // z * conj(w) / d must be integral
                    mpz_class re = z.re * w.re + z.im * w.im, im = z.im * w.re - z.re * w.im;
                    if (re % d == 0 && im % d == 0) out.push_back(w);
                }
        }
    }
    return out;
}

inline GaussianRational horner(const UPoly& p, const GaussianRational& x) {
    GaussianRational acc;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

/// p / (x - r) for a root r.
inline UPoly deflate(const UPoly& p, const GaussianRational& r) {
    UPoly q(p.size() - 1);
    GaussianRational carry;
    for (std::size_t k = p.size(); k-- > 1;) {
        carry = carry * r + p[k];
        q[k - 1] = carry;
    }
    return q;
}

inline GaussianRational to_gaussian(const GaussInt& g) { return {Rational(g.re), Rational(g.im)}; }

}  // namespace detail

struct GaussianRootResult {
    std::vector<std::pair<GaussianRational, int>> roots;  // distinct roots with multiplicity
    detail::UPoly rest;                                     // factor without roots in Q(i)
};

/// All roots in Q(i) of a nonzero polynomial (coefficients by degree).
inline GaussianRootResult gaussian_roots(detail::UPoly p) {
    detail::trim(p);
    if (p.empty()) throw std::domain_error("gaussian_roots: zero polynomial");
    GaussianRootResult res;
    auto record = [&](const GaussianRational& r) {
        for (auto& [x, m] : res.roots)
            if (x == r) {
                ++m;
                return;
            }
        res.roots.emplace_back(r, 1);
    };
    while (p.size() > 1 && p.front().is_zero()) {
        p.erase(p.begin());
        record(GaussianRational());
    }
    for (;;) {
        if (p.size() <= 1) break;
        if (p.size() == 2) {
            GaussianRational r = -(p[0] / p[1]);
            p = {p[1]};
            record(r);
            break;
        }
        mpz_class l = 1;
        for (const auto& c : p) l = lcm(lcm(l, c.re.den()), c.im.den());
        auto gi = [&](const GaussianRational& c) {
            return detail::GaussInt{mpz_class(c.re.num() * (l / c.re.den())), mpz_class(c.im.num() * (l / c.im.den()))};
        };
        auto num_divs = detail::gaussian_divisors(gi(p.front()));
        auto den_divs = detail::gaussian_divisors(gi(p.back()));
        std::optional<GaussianRational> found;
        for (const auto& q : den_divs) {
            if (!(q.re > 0 && q.im >= 0)) continue;  // one associate per class
            GaussianRational qi = detail::to_gaussian(q).inverse();
            for (const auto& a : num_divs) {
                GaussianRational r = detail::to_gaussian(a) * qi;
                if (detail::horner(p, r).is_zero()) {
                    found = r;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) break;
        p = detail::deflate(p, *found);
        record(*found);
    }
    std::sort(res.roots.begin(), res.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    res.rest = std::move(p);
    return res;
}

// ---------------------------------------------------------------------------
// Puiseux expansions
// ---------------------------------------------------------------------------

/// Polynomial in S with Puiseux-polynomial coefficients, index = degree.
using PuiseuxUPoly = std::vector<PuiseuxPoly>;

struct PuiseuxRoot {
    PuiseuxPoly series;  // leading terms of the root
    bool exact = false;  // the root equals `series`
};

inline PuiseuxPoly evaluate(const PuiseuxUPoly& p, const PuiseuxPoly& s) {
    PuiseuxPoly acc;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * s + p[k];
    return acc;
}

/// Coefficients of P(s + S).
inline PuiseuxUPoly taylor_shift(const PuiseuxUPoly& p, const PuiseuxPoly& s) {
    const std::size_t n = p.size();
    PuiseuxUPoly out(n);
    std::vector<PuiseuxPoly> spow{PuiseuxPoly(1)};
    for (std::size_t k = 1; k < n; ++k) spow.push_back(spow.back() * s);
    // binomial coefficients row by row
    std::vector<mpz_class> binom(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = l; j > 0; --j) binom[j] += binom[j - 1];
        binom[0] = 1;
        if (p[l].is_zero()) continue;
        for (std::size_t j = 0; j <= l; ++j) {
            if (spow[l - j].is_zero()) continue;
            out[j] += (p[l] * spow[l - j]).scaled(GaussianRational(Rational(binom[j])), Rational(0));
        }
    }
    return out;
}

namespace detail {

struct NewtonSegment {
    std::size_t i0, i1;
    Rational slope_val;  // root valuation q
};

/// Lower hull of the points (i, v(a_i)) as segments of increasing i.
inline std::vector<NewtonSegment> newton_segments(const PuiseuxUPoly& p) {
    std::vector<std::pair<std::size_t, Rational>> pts;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) pts.emplace_back(i, p[i].valuation().value());
    std::vector<std::pair<std::size_t, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b if it lies on or above segment a-pt
            Rational lhs = (b.second - a.second) * Rational(static_cast<long>(pt.first - a.first));
            Rational rhs = (pt.second - a.second) * Rational(static_cast<long>(b.first - a.first));
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<NewtonSegment> out;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& a = hull[k];
        const auto& b = hull[k + 1];
        out.push_back({a.first, b.first, (a.second - b.second) / Rational(static_cast<long>(b.first - a.first))});
    }
    return out;
}

inline void newton_step(PuiseuxUPoly p, const PuiseuxPoly& prefix, const std::optional<Rational>& lower,
                        std::size_t count, const Rational& bound, std::vector<PuiseuxRoot>& out) {
    std::size_t zeros = 0;
    while (zeros < p.size() && p[zeros].is_zero()) ++zeros;
    zeros = std::min(zeros, count);
    for (std::size_t k = 0; k < zeros; ++k) out.push_back({prefix, true});
    count -= zeros;
    if (count == 0) return;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));

    std::size_t processed = 0;
    for (const auto& seg : newton_segments(p)) {
        const Rational& q = seg.slope_val;
        if (lower && !(q > *lower)) continue;
        if (q > bound) continue;
        const Rational base = p[seg.i0].valuation().value() + q * Rational(static_cast<long>(seg.i0));
        UPoly residual(seg.i1 - seg.i0 + 1);
        for (std::size_t l = seg.i0; l <= seg.i1; ++l) {
            if (p[l].is_zero()) continue;
            auto [e, c] = p[l].leading_term();
            if (e + q * Rational(static_cast<long>(l)) == base) residual[l - seg.i0] = c;
        }
        auto rr = gaussian_roots(residual);
        std::size_t found = 0;
        for (const auto& r : rr.roots) found += static_cast<std::size_t>(r.second);
        if (found < seg.i1 - seg.i0) throw RootError("root leaves Q(i)(t^Q) coefficient tower");
        for (const auto& [c, mult] : rr.roots) {
            PuiseuxPoly term = PuiseuxPoly::monomial(c, q);
            newton_step(taylor_shift(p, term), prefix + term, q, static_cast<std::size_t>(mult), bound, out);
        }
        processed += seg.i1 - seg.i0;
    }
    for (std::size_t k = processed; k < count; ++k) out.push_back({prefix, false});
}

}  // namespace detail

/// Roots of sum_k coeffs[k] S^k, each to its first k terms (exact roots
/// may have fewer), listed with multiplicity. The leading coefficient must
/// be a unit (a monomial) of Q(i)[t^Q].
inline std::vector<PuiseuxRoot> puiseux_roots(PuiseuxUPoly coeffs, std::size_t k) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) throw std::domain_error("puiseux_roots: zero polynomial");
    const std::size_t d = coeffs.size() - 1;
    if (d == 0) return {};
    if (!coeffs.back().is_monomial()) throw std::domain_error("puiseux_roots: leading coefficient is not a unit");
    if (k == 0) throw std::invalid_argument("puiseux_roots: k must be positive");

    // depress: S = U + shift with shift = -a_{d-1} / (d a_d)
    auto [le, lc] = coeffs.back().leading_term();
    PuiseuxPoly shift = -coeffs[d - 1].divided_by_monomial(lc * GaussianRational(static_cast<long>(d)), le);
    PuiseuxUPoly depressed = taylor_shift(coeffs, shift);

    for (Rational bound(1); bound < Rational(1L << 20); bound = bound * Rational(2)) {
        std::vector<PuiseuxRoot> u;
        detail::newton_step(depressed, PuiseuxPoly(), std::nullopt, d, bound, u);
        bool enough = true;
        std::vector<PuiseuxRoot> out;
        for (const auto& r : u) {
            PuiseuxPoly s = shift + r.series;
            if (!r.exact) s = s.truncated_below(bound);
            if (!r.exact && s.size() < k) enough = false;
            out.push_back({s.first_terms(k), r.exact && s.size() <= k});
        }
        if (!enough) continue;
        std::sort(out.begin(), out.end(), [](const PuiseuxRoot& a, const PuiseuxRoot& b) { return a.series < b.series; });
        return out;
    }
    throw RootError("puiseux_roots: expansion did not stabilise");
}

}  // namespace tropcover
