#pragma once

/**
 * @file tropical.hpp
 * @brief Tropicalisation: min-plus polynomials, the piecewise-linear map
 *        Trop(phi) with its linearity cells and image, tropical
 *        hypersurfaces and tropical linear spaces cut out by circuits.
 *
 * Convention: Trop(f)(xi) = min over terms of v(c_a) + a . xi.
 */

#include "tropcover/laurent.hpp"
#include "tropcover/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

struct TropEval {
    Rational value;
    std::vector<ExponentVec> minimizers;
};

class TropPoly {
public:
    using TermMap = std::map<ExponentVec, Rational>;

    TropPoly() = default;
    explicit TropPoly(std::size_t num_vars) : num_vars_(num_vars) {}
    TropPoly(std::size_t num_vars, TermMap terms) : num_vars_(num_vars), terms_(std::move(terms)) {
        for (const auto& [a, v] : terms_)
            if (a.size() != num_vars_) throw std::invalid_argument("TropPoly: exponent length mismatch");
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Adds a term; a repeated exponent keeps the smaller value.
    void add_term(const ExponentVec& a, const Rational& v) {
        if (a.size() != num_vars_) throw std::invalid_argument("TropPoly::add_term: exponent length mismatch");
        auto [it, fresh] = terms_.emplace(a, v);
        if (!fresh && v < it->second) it->second = v;
        vertices_.reset();
    }

    static Rational term_value(const ExponentVec& a, const Rational& v, const QPoint& xi) {
        Rational s = v;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] != 0) s += Rational(a[k]) * xi[k];
        return s;
    }

    TropEval eval(const QPoint& xi) const {
        if (xi.size() != num_vars_) throw std::invalid_argument("TropPoly::eval: dimension mismatch");
        if (terms_.empty()) throw std::domain_error("TropPoly::eval: empty tropical polynomial");
        TropEval out;
        bool first = true;
        for (const auto& [a, v] : terms_) {
            Rational s = term_value(a, v, xi);
            if (first || s < out.value) {
                out.value = s;
                out.minimizers.assign(1, a);
                first = false;
            } else if (s == out.value) {
                out.minimizers.push_back(a);
            }
        }
        return out;
    }
    Rational value(const QPoint& xi) const { return eval(xi).value; }

    /// Region where term a attains the minimum: (a - g).xi <= v_g - v_a.
    Polyhedron region(const ExponentVec& a) const {
        Polyhedron p(num_vars_);
        p.add_all(region_constraints(a));
        return p;
    }
    /// Constraints of region(a); comparing against the vertex terms suffices
    /// because the minimum over all terms equals the minimum over vertices.
    std::vector<LinConstraint> region_constraints(const ExponentVec& a) const {
        return region_constraints(a, vertex_terms());
    }
    std::vector<LinConstraint> region_constraints(const ExponentVec& a, const std::vector<ExponentVec>& among) const {
        const Rational& va = terms_.at(a);
        std::vector<LinConstraint> out;
        for (const auto& g : among) {
            if (g == a) continue;
            QVector n(num_vars_);
            for (std::size_t k = 0; k < num_vars_; ++k) n[k] = Rational(a[k] - g[k]);
            out.push_back(LinConstraint::le(std::move(n), terms_.at(g) - va));
        }
        return out;
    }

    /// Terms whose minimising region is full-dimensional (vertices of the
    /// lower hull of the lifted support), in exponent order.
    const std::vector<ExponentVec>& vertex_terms() const {
        if (!vertices_) vertices_ = std::make_shared<const std::vector<ExponentVec>>(compute_vertices());
        return *vertices_;
    }

    /// Directions along which every term changes by the same amount.
    QMatrix lineality_space() const {
        QMatrix diffs;
        if (!terms_.empty()) {
            const auto& a0 = terms_.begin()->first;
            for (const auto& [a, v] : terms_) {
                QVector d(num_vars_);
                for (std::size_t k = 0; k < num_vars_; ++k) d[k] = Rational(a[k] - a0[k]);
                if (!is_zero_vector(d)) diffs.push_back(std::move(d));
            }
        }
        return null_space(diffs, num_vars_);
    }

    friend bool operator==(const TropPoly& a, const TropPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        std::string s = "min(";
        bool first = true;
        for (const auto& [a, v] : terms_) {
            if (!first) s += ", ";
            first = false;
            std::string lin;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[k] == 0) continue;
                std::string nm = k < names.size() ? names[k] : "x" + std::to_string(k);
                if (!lin.empty()) lin += a[k] < 0 ? " - " : " + ";
                else if (a[k] < 0) lin += "-";
                long m = a[k] < 0 ? -a[k] : a[k];
                lin += (m == 1 ? "" : std::to_string(m) + "*") + nm;
            }
            if (lin.empty()) {
                s += v.str();
            } else if (v.is_zero()) {
                s += lin;
            } else {
                s += v.str() + (lin[0] == '-' ? " - " + lin.substr(1) : " + " + lin);
            }
        }
        return s + ")";
    }

private:
    ExponentVec generic_minimiser(const QPoint& xi, const std::vector<long>& r) const {
        const ExponentVec* best = nullptr;
        Rational bv;
        long br = 0;
        for (const auto& [a, v] : terms_) {
            Rational s = term_value(a, v, xi);
            long rs = 0;
            for (std::size_t k = 0; k < a.size(); ++k) rs += r[k] * a[k];
            if (!best || s < bv || (s == bv && rs < br)) {
                best = &a;
                bv = s;
                br = rs;
            }
        }
        return *best;
    }

    // Sampling finds most vertices cheaply; every other term is then either
    // refuted by an LP against the known vertices or yields a new vertex.
    std::vector<ExponentVec> compute_vertices() const {
        std::vector<ExponentVec> all;
        for (const auto& [a, v] : terms_) all.push_back(a);
        if (all.size() <= 1) return all;
        std::mt19937_64 rng(0x7c0fe5);
        std::uniform_int_distribution<long> dir(-100000, 100000), coord(-20, 20);
        std::vector<long> r(num_vars_);
        for (auto& x : r) x = dir(rng);
        std::set<ExponentVec> found;
        for (std::size_t s = 0; s < 2 * num_vars_ + 8; ++s) {
            QPoint xi(num_vars_);
            for (auto& x : xi) x = Rational(coord(rng));
            found.insert(generic_minimiser(xi, r));
        }
        for (const auto& a : all) {
            while (!found.count(a)) {
                std::vector<ExponentVec> known(found.begin(), found.end());
                auto x = interior_point(Polyhedron(num_vars_, region_constraints(a, known)));
                if (!x) break;
                found.insert(generic_minimiser(*x, r));
            }
        }
        return {found.begin(), found.end()};
    }

    std::size_t num_vars_ = 0;
    TermMap terms_;
    mutable std::shared_ptr<const std::vector<ExponentVec>> vertices_;
};

inline TropPoly tropicalize_poly(const LaurentPoly& f) {
    if (f.is_zero()) throw std::domain_error("tropicalize_poly: zero polynomial");
    TropPoly out(f.num_vars());
    for (const auto& [a, c] : f.terms()) out.add_term(a, c.valuation().value());
    return out;
}

inline TropEval trop_eval(const TropPoly& f, const QPoint& xi) { return f.eval(xi); }

/// Trop(f/g) = Trop(f) - Trop(g).
struct TropRational {
    TropPoly plus;
    TropPoly minus;

    Rational value(const QPoint& xi) const { return plus.value(xi) - minus.value(xi); }
    std::string str(const std::vector<std::string>& names = {}) const {
        if (minus.size() == 1 && minus.terms().begin()->first == ExponentVec(minus.num_vars(), 0) &&
            minus.terms().begin()->second.is_zero())
            return plus.str(names);
        return plus.str(names) + " - " + minus.str(names);
    }
};

inline std::vector<TropRational> tropicalize_map(const RationalMap& phi) {
    std::vector<TropRational> out;
    for (const auto& c : phi.components()) out.push_back({tropicalize_poly(c.num()), tropicalize_poly(c.den())});
    return out;
}

inline QPoint trop_eval_map(const std::vector<TropRational>& t, const QPoint& xi) {
    QPoint out;
    out.reserve(t.size());
    for (const auto& c : t) out.push_back(c.value(xi));
    return out;
}

/// Trop(phi)(xi).
inline QPoint trop_eval_map(const RationalMap& phi, const QPoint& xi) { return trop_eval_map(tropicalize_map(phi), xi); }

// ---------------------------------------------------------------------------
// Piecewise-linear structure
// ---------------------------------------------------------------------------

struct PLCell {
    Polyhedron domain;
    AffineMapQ map;
};

struct PLMap {
    std::size_t domain_dim = 0;
    std::size_t codomain_dim = 0;
    std::vector<PLCell> cells;

    /// Value via the first cell containing xi.
    QPoint evaluate(const QPoint& xi) const {
        for (const auto& c : cells)
            if (c.domain.contains(xi)) return c.map.apply(xi);
        throw std::domain_error("PLMap::evaluate: point lies in no cell");
    }
};

namespace detail {

struct LinearityEnumerator {
    std::size_t m = 0;
    std::vector<TropPoly> polys;                           // distinct tropical polynomials
    std::vector<std::vector<ExponentVec>> candidates;      // per poly
    std::vector<std::vector<std::vector<LinConstraint>>> regions;
    std::vector<std::size_t> order;
    std::vector<std::size_t> choice;                       // candidate index per poly
    std::vector<std::pair<Polyhedron, std::vector<std::size_t>>> leaves;

    void dfs(std::size_t depth, const Polyhedron& cur) {
        if (depth == order.size()) {
            leaves.emplace_back(cur, choice);
            return;
        }
        const std::size_t p = order[depth];
        for (std::size_t k = 0; k < candidates[p].size(); ++k) {
            Polyhedron next = cur;
            next.add_all(regions[p][k]);
            if (candidates[p].size() > 1 && !is_full_dimensional(next)) continue;
            choice[p] = k;
            dfs(depth + 1, next);
        }
    }
};

inline std::size_t intern(std::vector<TropPoly>& polys, const TropPoly& f) {
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (polys[i] == f) return i;
    polys.push_back(f);
    return polys.size() - 1;
}

}  // namespace detail

/// Full-dimensional cells of constant minimising exponents, with the
/// affine map of Trop(phi) on each.
inline PLMap linearity_complex(const std::vector<TropRational>& t, std::size_t domain_dim) {
    detail::LinearityEnumerator en;
    en.m = domain_dim;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (const auto& c : t) {
        if (c.plus.num_vars() != domain_dim || c.minus.num_vars() != domain_dim)
            throw std::invalid_argument("linearity_complex: variable count mismatch");
        slots.emplace_back(detail::intern(en.polys, c.plus), detail::intern(en.polys, c.minus));
    }
    for (const auto& f : en.polys) {
        auto cand = f.vertex_terms();
        std::vector<std::vector<LinConstraint>> regs;
        for (const auto& a : cand) regs.push_back(cand.size() > 1 ? f.region_constraints(a) : std::vector<LinConstraint>{});
        en.candidates.push_back(std::move(cand));
        en.regions.push_back(std::move(regs));
    }
    en.order.resize(en.polys.size());
    for (std::size_t i = 0; i < en.order.size(); ++i) en.order[i] = i;
    std::stable_sort(en.order.begin(), en.order.end(),
                     [&](std::size_t a, std::size_t b) { return en.candidates[a].size() < en.candidates[b].size(); });
    en.choice.assign(en.polys.size(), 0);
    en.dfs(0, Polyhedron(domain_dim));

    PLMap out;
    out.domain_dim = domain_dim;
    out.codomain_dim = t.size();
    for (auto& [poly, ch] : en.leaves) {
        QMatrix a;
        QVector b;
        for (const auto& [pi, mi] : slots) {
            const ExponentVec& ea = en.candidates[pi][ch[pi]];
            const ExponentVec& eb = en.candidates[mi][ch[mi]];
            QVector row(domain_dim);
            for (std::size_t k = 0; k < domain_dim; ++k) row[k] = Rational(ea[k] - eb[k]);
            a.push_back(std::move(row));
            b.push_back(en.polys[pi].terms().at(ea) - en.polys[mi].terms().at(eb));
        }
        out.cells.push_back({remove_redundant(poly), AffineMapQ(std::move(a), std::move(b), domain_dim)});
    }
    return out;
}

inline PLMap linearity_complex(const RationalMap& phi) { return linearity_complex(tropicalize_map(phi), phi.domain_dim()); }

namespace detail {

inline std::vector<LinConstraint> sorted_constraints(const Polyhedron& p) {
    auto cs = p.constraints();
    std::sort(cs.begin(), cs.end(), [](const LinConstraint& a, const LinConstraint& b) {
        if (a.rel != b.rel) return a.rel < b.rel;
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    });
    return cs;
}

/// Drops cells contained in another cell (keeps the first of equal cells).
inline PolyhedralComplex drop_contained(const PolyhedralComplex& c) {
    const std::size_t n = c.cells.size();
    std::vector<int> dims(n);
    for (std::size_t i = 0; i < n; ++i) dims[i] = dimension(c.cells[i]);
    std::vector<bool> keep(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        if (dims[i] < 0) {
            keep[i] = false;
            continue;
        }
        for (std::size_t j = 0; j < n && keep[i]; ++j) {
            if (i == j || !keep[j] || dims[j] < dims[i]) continue;
            if (!contains(c.cells[j], c.cells[i])) continue;
            // equal cells: keep the lower index
            if (dims[j] == dims[i] && j > i && contains(c.cells[i], c.cells[j])) continue;
            keep[i] = false;
        }
    }
    PolyhedralComplex out(c.ambient_dim);
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) out.add(c.cells[i], c.labels[i]);
    return out;
}

}  // namespace detail

/// im Trop(phi) as the union of the images of the linearity cells.
inline PolyhedralComplex pl_image(const PLMap& m) {
    PolyhedralComplex out(m.codomain_dim);
    std::set<std::vector<LinConstraint>, bool (*)(const std::vector<LinConstraint>&, const std::vector<LinConstraint>&)>
        seen([](const std::vector<LinConstraint>& a, const std::vector<LinConstraint>& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                [](const LinConstraint& x, const LinConstraint& y) {
                                                    if (x.rel != y.rel) return x.rel < y.rel;
                                                    if (x.normal != y.normal) return x.normal < y.normal;
                                                    return x.offset < y.offset;
                                                });
        });
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
        Polyhedron img = linear_image(m.cells[i].domain, m.cells[i].map);
        if (!seen.insert(detail::sorted_constraints(img)).second) continue;
        out.add(std::move(img), "cell " + std::to_string(i));
    }
    return out;
}

inline PolyhedralComplex tropical_image(const RationalMap& phi) { return pl_image(linearity_complex(phi)); }

// ---------------------------------------------------------------------------
// Tropical hypersurfaces
// ---------------------------------------------------------------------------

struct TropHypersurface {
    PolyhedralComplex complex;
    std::vector<std::pair<ExponentVec, ExponentVec>> pair_labels;
    std::vector<std::string> warnings;
};

/// Corner locus of F as its maximal cells, one per Newton-polytope edge of
/// the lifted lower hull.
inline TropHypersurface trop_hypersurface(const TropPoly& f) {
    TropHypersurface out;
    out.complex = PolyhedralComplex(f.num_vars());
    if (f.size() < 2) {
        out.warnings.push_back("single-term tropical polynomial has an empty corner locus");
        return out;
    }
    const auto verts = f.vertex_terms();
    const int target = static_cast<int>(f.num_vars()) - 1;
    std::vector<Polyhedron> cells;
    std::vector<std::pair<ExponentVec, ExponentVec>> labels;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto ri = f.region_constraints(verts[i]);
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            Polyhedron p(f.num_vars());
            p.add_all(ri);
            const auto& a = verts[i];
            const auto& b = verts[j];
            QVector n(f.num_vars());
            for (std::size_t k = 0; k < n.size(); ++k) n[k] = Rational(a[k] - b[k]);
            p.add(LinConstraint::eq(std::move(n), f.terms().at(b) - f.terms().at(a)));
            if (dimension(p) != target) continue;
            p = remove_redundant(p);
            bool dup = false;
            for (const auto& q : cells)
                if (same_set(p, q)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            cells.push_back(std::move(p));
            labels.emplace_back(a, b);
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        out.complex.add(cells[i], to_string(labels[i].first) + "|" + to_string(labels[i].second));
    out.pair_labels = std::move(labels);
    return out;
}

inline TropHypersurface trop_hypersurface(const LaurentPoly& f) { return trop_hypersurface(tropicalize_poly(f)); }

// ---------------------------------------------------------------------------
// Circuits and tropical linear spaces
// ---------------------------------------------------------------------------

template <class F>
struct CircuitSet {
    std::vector<std::vector<F>> vectors;

    std::vector<std::vector<std::size_t>> supports() const {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& v : vectors) {
            std::vector<std::size_t> s;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!v[j].is_zero()) s.push_back(j);
            out.push_back(std::move(s));
        }
        return out;
    }
};

namespace detail {

inline void normalise_circuit(QVector& v) { v = primitive(v); }

inline void normalise_circuit(std::vector<ValuedScalar>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) {
            ValuedScalar inv = x.inverse();
            for (auto& y : v) y = y * inv;
            return;
        }
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur, const F& fn) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t j = start; j + (k - cur.size()) <= n; ++j) {
        cur.push_back(j);
        for_each_subset(n, k, j + 1, cur, fn);
        cur.pop_back();
    }
}

}  // namespace detail

/// Minimal-support nonzero vectors of the row space of `rows`.
/// For a row basis B of rank r and an (r-1)-subset T of columns, the vector
/// j -> det[B_T | B_j] lies in the row space; the nonzero ones are exactly
/// the circuits.
template <class F>
CircuitSet<F> circuits(const Matrix<F>& rows, std::size_t n) {
    CircuitSet<F> out;
    Matrix<F> b = row_basis(rows);
    const std::size_t r = b.size();
    if (r == 0) return out;
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> cur;
    detail::for_each_subset(n, r - 1, 0, cur, [&](const std::vector<std::size_t>& tset) {
        std::vector<F> v(n, F(0));
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::find(tset.begin(), tset.end(), j) != tset.end()) continue;
            Matrix<F> sq(r, std::vector<F>(r, F(0)));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t c = 0; c < tset.size(); ++c) sq[i][c] = b[i][tset[c]];
                sq[i][r - 1] = b[i][j];
            }
            v[j] = determinant(sq);
            nonzero = nonzero || !v[j].is_zero();
        }
        if (!nonzero) return;
        std::vector<std::size_t> supp;
        for (std::size_t j = 0; j < n; ++j)
            if (!v[j].is_zero()) supp.push_back(j);
        if (!seen.insert(supp).second) return;
        detail::normalise_circuit(v);
        out.vectors.push_back(std::move(v));
    });
    return out;
}

/// Valuation of an exact scalar (Rational has the trivial valuation).
inline Rational coefficient_valuation(const Rational&) { return Rational(0); }
inline Rational coefficient_valuation(const ValuedScalar& c) { return c.valuation().value(); }

/// Trop of V = {x : E x = 0}: points where, for every circuit c of the row
/// space of E, min_{j in supp c} v(c_j) + xi_j is attained at least twice.
template <class F>
PolyhedralComplex trop_linear_space(const Matrix<F>& equations, std::size_t n) {
    PolyhedralComplex out(n);
    auto cs = circuits(equations, n);
    const int target = static_cast<int>(n) - static_cast<int>(rank(equations));
    if (cs.vectors.empty()) {
        out.add(Polyhedron(n), "all");
        return out;
    }
    struct Form {
        std::vector<std::size_t> supp;
        std::vector<Rational> val;
    };
    std::vector<Form> forms;
    for (const auto& v : cs.vectors) {
        Form f;
        for (std::size_t j = 0; j < n; ++j)
            if (!v[j].is_zero()) {
                f.supp.push_back(j);
                f.val.push_back(coefficient_valuation(v[j]));
            }
        forms.push_back(std::move(f));
    }
    std::stable_sort(forms.begin(), forms.end(), [](const Form& a, const Form& b) { return a.supp.size() < b.supp.size(); });

    // level-wise over the circuits; branches that reach the same polyhedron
    // through different tie pairs are merged
    std::vector<Polyhedron> cells{Polyhedron(n)};
    std::vector<std::string> labels{""};
    for (const Form& f : forms) {
        std::vector<Polyhedron> next_cells;
        std::vector<std::string> next_labels;
        const std::size_t s = f.supp.size();
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = a + 1; b < s; ++b) {
                    Polyhedron next = cells[c];
                    // xi_a + v_a = xi_b + v_b <= xi_l + v_l
                    QVector eq(n);
                    eq[f.supp[a]] = 1;
                    eq[f.supp[b]] = -1;
                    next.add(LinConstraint::eq(std::move(eq), f.val[b] - f.val[a]));
                    for (std::size_t l = 0; l < s; ++l) {
                        if (l == a || l == b) continue;
                        QVector le(n);
                        le[f.supp[a]] = 1;
                        le[f.supp[l]] = -1;
                        next.add(LinConstraint::le(std::move(le), f.val[l] - f.val[a]));
                    }
                    if (dimension(next) < target) continue;
                    next = remove_redundant(next);
                    bool seen = false;
                    for (const auto& q : next_cells)
                        if (same_set(q, next)) {
                            seen = true;
                            break;
                        }
                    if (seen) continue;
                    next_cells.push_back(std::move(next));
                    next_labels.push_back(labels[c] + (labels[c].empty() ? "" : ",") + std::to_string(f.supp[a]) + "=" +
                                          std::to_string(f.supp[b]));
                }
        cells = std::move(next_cells);
        labels = std::move(next_labels);
    }
    PolyhedralComplex raw(n);
    for (std::size_t i = 0; i < cells.size(); ++i) raw.add(cells[i], labels[i]);
    return detail::drop_contained(raw);
}

}  // namespace tropcover
