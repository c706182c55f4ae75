#pragma once

/**
 * @file constructions.hpp
 * @brief Constructive toolkit for tropically surjective parameterisations:
 *        toric pushforwards and cones, named parameterisations, the
 *        combination of two reparameterisations, birational coordinate
 *        projections with horizontality reports, and the local linearity
 *        verifier.
 */

#include "tropcover/roots.hpp"
#include "tropcover/tropical.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

using MonomialMap = std::vector<ExponentVec>;  // rows: exponent vectors
using TorusPoint = std::vector<ValuedScalar>;

inline std::vector<Rational> valuations(const TorusPoint& u) {
    std::vector<Rational> out;
    for (const auto& x : u) {
        if (x.is_zero()) throw std::invalid_argument("TorusPoint: zero entry");
        out.push_back(x.valuation().value());
    }
    return out;
}

inline QMatrix to_qmatrix(const MonomialMap& m) {
    QMatrix out;
    for (const auto& r : m) {
        QVector row;
        for (long e : r) row.push_back(Rational(e));
        out.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Toric pushforward and cones
// ---------------------------------------------------------------------------

/// L_u o pi o phi: x -> (u_k prod_j phi_j(x)^{pi_kj})_k.
inline RationalMap toric_pushforward(const RationalMap& phi, const MonomialMap& pi, const TorusPoint& u) {
    if (pi.size() != u.size()) throw std::invalid_argument("toric_pushforward: |u| differs from the number of rows of pi");
    const std::size_t m = phi.domain_dim();
    std::vector<RationalFunction> comps;
    for (std::size_t k = 0; k < pi.size(); ++k) {
        if (pi[k].size() != phi.codomain_dim())
            throw std::invalid_argument("toric_pushforward: row " + std::to_string(k) + " has the wrong length");
        if (u[k].is_zero()) throw std::invalid_argument("toric_pushforward: u has a zero entry");
        RationalFunction f(LaurentPoly::constant(m, u[k]));
        for (std::size_t j = 0; j < pi[k].size(); ++j)
            if (pi[k][j] != 0) f = f * phi[j].pow(pi[k][j]);
        comps.push_back(std::move(f));
    }
    RationalMap out(m, std::move(comps));
    out.set_variable_names(phi.variable_names());
    return out;
}

/// (w, x) -> (w, w * phi(x)): the cone over the image.
inline RationalMap cone_over_map(const RationalMap& phi) {
    const std::size_t m = phi.domain_dim();
    std::vector<std::size_t> pos(m);
    for (std::size_t k = 0; k < m; ++k) pos[k] = k + 1;
    RationalFunction w(LaurentPoly::variable(m + 1, 0));
    std::vector<RationalFunction> comps{w};
    for (const auto& c : phi.components())
        comps.push_back(w * RationalFunction(c.num().embedded(m + 1, pos), c.den().embedded(m + 1, pos)));
    RationalMap out(m + 1, std::move(comps));
    if (!phi.variable_names().empty()) {
        std::vector<std::string> names{"w"};
        for (const auto& n : phi.variable_names()) names.push_back(n);
        out.set_variable_names(names);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear spaces
// ---------------------------------------------------------------------------

inline ValuedScalar to_scalar(const Rational& x) { return ValuedScalar(x); }
inline ValuedScalar to_scalar(const ValuedScalar& x) { return x; }

/// lambda -> A lambda where the columns of A are the circuits of V (the
/// rows of `basis` span V).
template <class F>
RationalMap yu_yuster_param(const Matrix<F>& basis, std::size_t n) {
    if (rank(basis) == 0) throw std::invalid_argument("yu_yuster_param: V = 0");
    auto cs = circuits(basis, n);
    const std::size_t p = cs.vectors.size();
    std::vector<LaurentPoly> comps;
    for (std::size_t j = 0; j < n; ++j) {
        LaurentPoly f(p);
        for (std::size_t k = 0; k < p; ++k)
            if (!cs.vectors[k][j].is_zero()) f.add_term(LaurentPoly::variable(p, k).terms().begin()->first, to_scalar(cs.vectors[k][j]));
        if (f.is_zero())
            throw std::invalid_argument("yu_yuster_param: V lies in the coordinate hyperplane x" + std::to_string(j) + " = 0");
        comps.push_back(std::move(f));
    }
    auto out = RationalMap::from_polys(p, comps, "yu-yuster");
    std::vector<std::string> names;
    for (std::size_t k = 0; k < p; ++k) names.push_back("l" + std::to_string(k + 1));
    out.set_variable_names(names);
    return out;
}

/// Rows spanning the annihilator {y : y . v = 0 for v in V}.
template <class F>
Matrix<F> equations_of_span(const Matrix<F>& basis, std::size_t n) {
    return null_space(basis, n);
}

// ---------------------------------------------------------------------------
// Rational curves
// ---------------------------------------------------------------------------

struct CurveFactorization {
    std::vector<GaussianRational> points;  // S
    RationalMap affine;                    // x -> (x - s)_{s in S}
    MonomialMap exponents;                 // e_{is}
    TorusPoint scalars;                    // c_i
};

namespace detail {

inline UPoly to_dense_univariate(const LaurentPoly& p, long& low) {
    if (p.num_vars() != 1) throw std::invalid_argument("curve_factorization: expected univariate functions");
    low = p.min_degree_in(0);
    UPoly out;
    for (const auto& [a, c] : p.terms()) {
        if (!c.is_constant()) throw std::invalid_argument("curve_factorization: coefficients must lie in Q(i)");
        auto idx = static_cast<std::size_t>(a[0] - low);
        if (out.size() <= idx) out.resize(idx + 1);
        out[idx] = c.initial_coefficient();
    }
    return out;
}

}  // namespace detail

/// f_i(x) = c_i prod_{s in S} (x - s)^{e_is}, with S the union of all roots
/// and poles in Q(i).
inline CurveFactorization curve_factorization(const std::vector<RationalFunction>& fs) {
    struct Split {
        GaussianRational lead;
        std::vector<std::pair<GaussianRational, long>> roots;
    };
    auto split = [](const LaurentPoly& p) {
        long low = 0;
        auto u = detail::to_dense_univariate(p, low);
        auto rr = gaussian_roots(u);
        if (rr.rest.size() > 1) throw RootError("irreducible nonlinear factor over Q(i): extend S manually");
        Split s{rr.rest.empty() ? GaussianRational(1) : rr.rest.back(), {}};
        for (const auto& [r, m] : rr.roots) s.roots.emplace_back(r, m);
        if (low != 0) s.roots.emplace_back(GaussianRational(), low);
        return s;
    };
    std::vector<std::vector<std::pair<GaussianRational, long>>> exps;
    CurveFactorization out;
    for (const auto& f : fs) {
        Split num = split(f.num()), den = split(f.den());
        std::vector<std::pair<GaussianRational, long>> e;
        auto accumulate = [&](const std::vector<std::pair<GaussianRational, long>>& rs, long sign) {
            for (const auto& [r, m] : rs) {
                auto it = std::find_if(e.begin(), e.end(), [&](const auto& x) { return x.first == r; });
                if (it == e.end())
                    e.emplace_back(r, sign * m);
                else
                    it->second += sign * m;
            }
        };
        accumulate(num.roots, 1);
        accumulate(den.roots, -1);
        for (const auto& [r, m] : e)
            if (m != 0 && std::find(out.points.begin(), out.points.end(), r) == out.points.end()) out.points.push_back(r);
        out.scalars.push_back(ValuedScalar(num.lead / den.lead));
        exps.push_back(std::move(e));
    }
    std::sort(out.points.begin(), out.points.end());
    for (const auto& e : exps) {
        ExponentVec row(out.points.size(), 0);
        for (const auto& [r, m] : e) {
            auto it = std::find(out.points.begin(), out.points.end(), r);
            if (it != out.points.end()) row[static_cast<std::size_t>(it - out.points.begin())] = m;
        }
        out.exponents.push_back(std::move(row));
    }
    std::vector<LaurentPoly> lin;
    for (const auto& s : out.points) {
        LaurentPoly p = LaurentPoly::variable(1, 0);
        p.add_term(ExponentVec{0}, ValuedScalar(GaussianRational(-s.re, -s.im)));
        lin.push_back(std::move(p));
    }
    if (lin.empty()) lin.push_back(LaurentPoly::variable(1, 0));  // constant curve: keep a valid map
    out.affine = RationalMap::from_polys(1, lin, "x-s");
    return out;
}

// ---------------------------------------------------------------------------
// Named parameterisations
// ---------------------------------------------------------------------------

/// (u, x, v, y) -> (u_i v_j (x_i + y_j))_{i,j}, row-major.
inline RationalMap rank2_param(std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) throw std::invalid_argument("rank2_param: need m, n >= 2");
    const std::size_t dim = 2 * m + 2 * n;
    auto var = [&](std::size_t k) { return LaurentPoly::variable(dim, k); };
    std::vector<LaurentPoly> comps;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            comps.push_back(var(i) * var(2 * m + j) * (var(m + i) + var(2 * m + n + j)));
    auto out = RationalMap::from_polys(dim, comps, "rank2");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("u" + std::to_string(i + 1));
    for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j) names.push_back("v" + std::to_string(j + 1));
    for (std::size_t j = 0; j < n; ++j) names.push_back("y" + std::to_string(j + 1));
    out.set_variable_names(names);
    return out;
}

/// (u, x) -> (u_i u_j (x_i - x_j))_{i<j} in lexicographic order of (i, j).
inline RationalMap grassmannian2_param(std::size_t n) {
    if (n < 4) throw std::invalid_argument("grassmannian2_param: need n >= 4");
    const std::size_t dim = 2 * n;
    auto var = [&](std::size_t k) { return LaurentPoly::variable(dim, k); };
    std::vector<LaurentPoly> comps;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) comps.push_back(var(i) * var(j) * (var(n + i) - var(n + j)));
    auto out = RationalMap::from_polys(dim, comps, "gr2");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    out.set_variable_names(names);
    return out;
}

/// Integer basis of ker A (columns of the returned N x (N-d) matrix).
inline std::vector<std::vector<long>> integer_kernel(const std::vector<std::vector<long>>& a, std::size_t n) {
    QMatrix q;
    for (const auto& r : a) {
        QVector row;
        for (long x : r) row.push_back(Rational(x));
        q.push_back(std::move(row));
    }
    std::vector<std::vector<long>> cols;
    for (const auto& v : null_space(q, n)) {
        std::vector<long> c;
        for (const auto& x : primitive(v)) c.push_back(x.num().get_si());
        cols.push_back(std::move(c));
    }
    return cols;
}

/// Horn uniformisation (lambda, w) -> ((B lambda)_j * w^{a_j})_j for a d x N
/// integer matrix A of rank d with (1, ..., 1) in its row space.
inline RationalMap horn_param(const std::vector<std::vector<long>>& a) {
    if (a.empty()) throw std::invalid_argument("horn_param: empty matrix");
    const std::size_t d = a.size(), n = a.front().size();
    QMatrix q;
    for (const auto& r : a) {
        if (r.size() != n) throw std::invalid_argument("horn_param: ragged matrix");
        QVector row;
        for (long x : r) row.push_back(Rational(x));
        q.push_back(std::move(row));
    }
    if (rank(q) != d) throw std::invalid_argument("horn_param: A is rank-deficient");
    QMatrix with_ones = q;
    with_ones.push_back(QVector(n, Rational(1)));
    if (rank(with_ones) != d) throw std::invalid_argument("horn_param: (1,...,1) is not in the row space of A");
    auto kernel = integer_kernel(a, n);
    if (kernel.empty()) throw std::invalid_argument("horn_param: ker A = 0, the discriminant parameterisation is constant");
    const std::size_t k = kernel.size(), dim = k + d;
    std::vector<LaurentPoly> comps;
    for (std::size_t j = 0; j < n; ++j) {
        LaurentPoly lin(dim);
        for (std::size_t c = 0; c < k; ++c)
            if (kernel[c][j] != 0) lin += LaurentPoly::variable(dim, c).scaled(ValuedScalar(kernel[c][j]));
        if (lin.is_zero())
            throw std::invalid_argument("horn_param: column " + std::to_string(j) + " of the kernel basis is zero");
        ExponentVec mono(dim, 0);
        for (std::size_t r = 0; r < d; ++r) mono[k + r] = a[r][j];
        comps.push_back(lin * LaurentPoly::monomial(mono));
    }
    auto out = RationalMap::from_polys(dim, comps, "horn");
    std::vector<std::string> names;
    for (std::size_t c = 0; c < k; ++c) names.push_back("l" + std::to_string(c + 1));
    for (std::size_t r = 0; r < d; ++r) names.push_back("w" + std::to_string(r + 1));
    out.set_variable_names(names);
    return out;
}

// ---------------------------------------------------------------------------
// Combination of reparameterisations
// ---------------------------------------------------------------------------

struct Combination {
    RationalMap alpha;             // T^{p1+p2+1} -> T^m
    long d = 0;                    // homogenisation degree of phi
    long e = 0;                    // homogenisation degree of the alpha_i
    RationalMap phi_tilde;
    RationalMap alpha1_tilde, alpha2_tilde;
};

/// alpha = dehomogenisation of alpha~_1(u~) + alpha~_2(v~).
inline Combination combine_reparams(const RationalMap& phi, const RationalMap& a1, const RationalMap& a2) {
    if (a1.codomain_dim() != phi.domain_dim() || a2.codomain_dim() != phi.domain_dim())
        throw std::invalid_argument("combine_reparams: the alpha_i must map into the domain of phi");
    Combination c;
    c.d = minimal_homogenization_degree(phi);
    c.e = std::max(minimal_homogenization_degree(a1), minimal_homogenization_degree(a2));
    c.phi_tilde = homogenize_map(phi, c.d);
    c.alpha1_tilde = homogenize_map(a1, c.e);
    c.alpha2_tilde = homogenize_map(a2, c.e);
    const std::size_t p1 = a1.domain_dim() + 1, p2 = a2.domain_dim() + 1, dim = p1 + p2;
    std::vector<std::size_t> pos1(p1), pos2(p2);
    for (std::size_t k = 0; k < p1; ++k) pos1[k] = k;
    for (std::size_t k = 0; k < p2; ++k) pos2[k] = p1 + k;
    std::vector<LaurentPoly> sum;
    for (std::size_t i = 0; i < c.alpha1_tilde.codomain_dim(); ++i) {
        LaurentPoly s = c.alpha1_tilde[i].num().embedded(dim, pos1) + c.alpha2_tilde[i].num().embedded(dim, pos2);
        if (s.is_zero()) throw std::domain_error("combine_reparams: summed component " + std::to_string(i) + " vanishes");
        sum.push_back(std::move(s));
    }
    c.alpha = dehomogenize_map(RationalMap::from_polys(dim, sum));
    c.alpha.set_name("combined");
    return c;
}

// ---------------------------------------------------------------------------
// Birational coordinate projections
// ---------------------------------------------------------------------------

struct ProjectionSpec {
    std::string name;
    std::size_t ambient_dim = 0;
    std::vector<std::size_t> kept;  // coordinate set I
    RationalMap inverse;            // T^I -> X

    AffineMapQ projection() const { return AffineMapQ::projection(ambient_dim, kept); }
};

namespace detail {

/// Removes variable i (which must not occur) from p.
inline LaurentPoly drop_variable(const LaurentPoly& p, std::size_t i) {
    LaurentPoly out(p.num_vars() - 1);
    for (const auto& [a, c] : p.terms()) {
        if (a[i] != 0) throw std::logic_error("drop_variable: variable occurs");
        ExponentVec b;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (k != i) b.push_back(a[k]);
        out.add_term(b, c);
    }
    return out;
}

}  // namespace detail

/// Solves F = F1 x_i + F0 = 0 for x_i; the inverse of the projection that
/// forgets coordinate i.
inline ProjectionSpec projection_inverse_linear(const LaurentPoly& f, std::size_t i,
                                                const std::vector<std::string>& names = {}) {
    const std::size_t n = f.num_vars();
    if (i >= n) throw std::invalid_argument("projection_inverse_linear: variable index out of range");
    if (f.degree_in(i) != 1 || f.min_degree_in(i) < 0)
        throw std::invalid_argument("projection_inverse_linear: F is not linear in variable " + std::to_string(i));
    auto parts = f.coefficients_in(i);
    LaurentPoly f1 = detail::drop_variable(parts.at(1), i);
    auto it0 = parts.find(0);
    if (it0 == parts.end() || it0->second.is_zero())
        throw std::invalid_argument("projection_inverse_linear: F = F1 x_i leaves x_i = 0 outside the torus");
    LaurentPoly f0 = detail::drop_variable(it0->second, i);
    std::vector<RationalFunction> comps;
    ProjectionSpec spec;
    spec.ambient_dim = n;
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            comps.emplace_back(-f0, f1);
        } else {
            comps.emplace_back(LaurentPoly::variable(n - 1, k++));
            spec.kept.push_back(j);
        }
    }
    spec.inverse = RationalMap(n - 1, std::move(comps));
    std::string var = i < names.size() ? names[i] : "x" + std::to_string(i);
    spec.name = "drop " + var;
    if (names.size() == n) {
        std::vector<std::string> kept_names;
        for (auto j : spec.kept) kept_names.push_back(names[j]);
        spec.inverse.set_variable_names(kept_names);
    }
    spec.inverse.set_name(spec.name);
    return spec;
}

inline ValuedScalar random_scalar(std::mt19937_64& rng, long lo = -9, long hi = 9) {
    std::uniform_int_distribution<long> d(lo, hi), den(1, 5);
    long v = 0;
    while (v == 0) v = d(rng);
    return ValuedScalar(Rational(v, den(rng)));
}

/// Checks pi(inverse(y)) = y and F(inverse(y)) = 0 at random points; throws
/// naming the spec on failure.
inline void verify_projection_spec(const ProjectionSpec& spec, const LaurentPoly& f, std::mt19937_64& rng,
                                   int samples = 5) {
    for (int s = 0; s < samples; ++s) {
        std::vector<ValuedScalar> y;
        for (std::size_t k = 0; k < spec.kept.size(); ++k) y.push_back(random_scalar(rng));
        bool denominators_ok = true;
        for (const auto& c : spec.inverse.components())
            if (c.den().evaluate(y).is_zero()) denominators_ok = false;
        if (!denominators_ok) {
            --s;
            continue;
        }
        auto x = spec.inverse.evaluate(y);
        for (std::size_t k = 0; k < spec.kept.size(); ++k)
            if (!(x.at(spec.kept[k]) == y[k]))
                throw std::runtime_error("projection spec '" + spec.name + "': pi(inverse(y)) != y");
        if (!f.evaluate(x).is_zero())
            throw std::runtime_error("projection spec '" + spec.name + "': inverse(y) is not on X");
    }
}

struct HorizontalCellEntry {
    std::size_t cell = 0;
    std::string label;
    std::vector<std::size_t> horizontal_for;  // spec indices
    std::vector<std::size_t> confirmed_by;    // horizontal specs whose image covers the cell
};

struct HorizontalCoverReport {
    std::vector<HorizontalCellEntry> cells;
    std::vector<std::size_t> uncovered;            // cells horizontal for no spec
    std::vector<PolyhedralComplex> inverse_images;  // im Trop(inverse) per spec
    bool confirmations_hold = true;                 // every horizontal pair confirmed

    PolyhedralComplex horizontal_union(const PolyhedralComplex& x, std::size_t spec) const {
        PolyhedralComplex out(x.ambient_dim);
        for (const auto& e : cells)
            if (std::find(e.horizontal_for.begin(), e.horizontal_for.end(), spec) != e.horizontal_for.end())
                out.add(x.cells[e.cell], x.labels[e.cell]);
        return out;
    }
};

inline HorizontalCoverReport horizontal_cover_report(const PolyhedralComplex& x, const std::vector<ProjectionSpec>& specs) {
    HorizontalCoverReport rep;
    for (const auto& s : specs) rep.inverse_images.push_back(tropical_image(s.inverse));
    for (std::size_t c = 0; c < x.cells.size(); ++c) {
        HorizontalCellEntry e{c, x.labels[c], {}, {}};
        PolyhedralComplex single(x.ambient_dim);
        single.add(x.cells[c]);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            if (!is_horizontal(x.cells[c], specs[s].projection())) continue;
            e.horizontal_for.push_back(s);
            if (covers(single, rep.inverse_images[s]).covered)
                e.confirmed_by.push_back(s);
            else
                rep.confirmations_hold = false;
        }
        if (e.horizontal_for.empty()) rep.uncovered.push_back(c);
        rep.cells.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Local linearity certificates
// ---------------------------------------------------------------------------

struct LocalLinearityCertificate {
    QVector base;            // sigma
    QMatrix directions;      // infinitesimal perturbation directions
    QMatrix differential;    // b_ij, one row per component
    QVector offset;          // constant part of the affine map
    std::size_t rank = 0;
    QPoint image_point;      // Trop(phi o alpha)(sigma)
    bool unique = true;      // unique minimiser after perturbation
    bool unique_at_base = true;
    bool valid = false;
    std::vector<std::string> ties;
    Polyhedron region;       // closed cone where the chosen terms stay minimal

    AffineMapQ affine_map() const { return AffineMapQ(differential, offset, base.size()); }
};

namespace detail {

struct TermChoice {
    ExponentVec exponent;
    Rational value;
    bool unique = true;
    bool unique_at_base = true;
    std::vector<ExponentVec> tied;
};

inline TermChoice lex_minimiser(const TropPoly& f, const QVector& base, const QMatrix& dirs) {
    auto key = [&](const ExponentVec& a, const Rational& v) {
        std::vector<Rational> k{TropPoly::term_value(a, v, base)};
        for (const auto& d : dirs) {
            Rational s;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a[j] != 0) s += Rational(a[j]) * d[j];
            k.push_back(s);
        }
        return k;
    };
    TermChoice out;
    std::vector<Rational> best;
    bool first = true;
    for (const auto& [a, v] : f.terms()) {
        auto k = key(a, v);
        if (first || k < best) {
            best = k;
            out.exponent = a;
            out.value = v;
            out.tied.clear();
            first = false;
        } else if (k == best) {
            out.tied.push_back(a);
        }
    }
    out.unique = out.tied.empty();
    std::size_t at_base = 0;
    for (const auto& [a, v] : f.terms())
        if (TropPoly::term_value(a, v, base) == best.front()) ++at_base;
    out.unique_at_base = at_base == 1;
    return out;
}

}  // namespace detail

/// Certifies that Trop(phi o alpha) is affine-linear near the weight
/// sigma + (lexicographically infinitesimal) directions, and records the
/// differential and its rank.
inline LocalLinearityCertificate local_linearity_check(const RationalMap& phi, const RationalMap& alpha,
                                                       const QVector& sigma, QMatrix directions = {}) {
    const std::size_t d = alpha.domain_dim();
    if (sigma.size() != d) throw std::invalid_argument("local_linearity_check: weight has the wrong length");
    if (directions.empty())
        for (std::size_t k = 0; k < d; ++k) {
            QVector e(d, Rational(0));
            e[k] = 1;
            directions.push_back(std::move(e));
        }
    RationalMap comp = compose_maps(phi, alpha);
    auto trop = tropicalize_map(comp);
    LocalLinearityCertificate cert;
    cert.base = sigma;
    cert.directions = directions;
    cert.region = Polyhedron(d);
    for (std::size_t i = 0; i < trop.size(); ++i) {
        auto pn = detail::lex_minimiser(trop[i].plus, sigma, directions);
        auto pd = detail::lex_minimiser(trop[i].minus, sigma, directions);
        for (const auto* ch : {&pn, &pd}) {
            if (!ch->unique) {
                cert.unique = false;
                std::string s = "component " + std::to_string(i) + (ch == &pn ? " numerator" : " denominator") +
                                ": " + to_string(ch->exponent);
                for (const auto& t : ch->tied) s += " ~ " + to_string(t);
                cert.ties.push_back(s);
            }
            if (!ch->unique_at_base) cert.unique_at_base = false;
        }
        cert.region.add_all(trop[i].plus.region_constraints(pn.exponent));
        cert.region.add_all(trop[i].minus.region_constraints(pd.exponent));
        QVector row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = Rational(pn.exponent[j] - pd.exponent[j]);
        cert.differential.push_back(std::move(row));
        cert.offset.push_back(pn.value - pd.value);
    }
    cert.rank = rank(cert.differential);
    cert.image_point = cert.affine_map().apply(sigma);
    cert.valid = cert.unique && cert.rank == d;
    return cert;
}

/// sigma + eps d_1 + eps^2 d_2 + ... (a concrete point of the perturbation cone).
inline QVector perturbed_weight(const LocalLinearityCertificate& c, const Rational& eps) {
    QVector x = c.base;
    Rational f = eps;
    for (const auto& dir : c.directions) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += f * dir[j];
        f = f * eps;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Dominance screen
// ---------------------------------------------------------------------------

inline LaurentPoly derivative(const LaurentPoly& p, std::size_t i) {
    LaurentPoly out(p.num_vars());
    for (const auto& [a, c] : p.terms()) {
        if (a[i] == 0) continue;
        ExponentVec b = a;
        b[i] -= 1;
        out.add_term(b, c * ValuedScalar(a[i]));
    }
    return out;
}

inline RationalFunction derivative(const RationalFunction& f, std::size_t i) {
    LaurentPoly n = derivative(f.num(), i) * f.den() - f.num() * derivative(f.den(), i);
    if (n.is_zero()) return RationalFunction(LaurentPoly::constant(f.num_vars(), ValuedScalar(0)));
    return RationalFunction(n, f.den() * f.den());
}

/// Rank of the Jacobian at a random rational point (a lower bound for the
/// dimension of the image closure, exact with high probability).
inline std::size_t jacobian_rank(const RationalMap& phi, std::mt19937_64& rng) {
    const std::size_t m = phi.domain_dim();
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<ValuedScalar> x;
        for (std::size_t k = 0; k < m; ++k) x.push_back(random_scalar(rng, -20, 20));
        bool ok = true;
        for (const auto& c : phi.components())
            if (c.den().evaluate(x).is_zero()) ok = false;
        if (!ok) continue;
        Matrix<ValuedScalar> jac;
        for (const auto& c : phi.components()) {
            std::vector<ValuedScalar> row;
            for (std::size_t k = 0; k < m; ++k) {
                auto dk = derivative(c, k);
                row.push_back(dk.is_zero() ? ValuedScalar(0) : dk.evaluate(x));
            }
            jac.push_back(std::move(row));
        }
        return rank(jac);
    }
    throw std::runtime_error("jacobian_rank: could not find a regular point");
}

}  // namespace tropcover
