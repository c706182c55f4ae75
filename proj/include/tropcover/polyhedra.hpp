#pragma once

/**
 * @file polyhedra.hpp
 * @brief Exact rational polyhedra (H-representation) and finite unions of
 *        them, with the coverage decision used for tropical surjectivity.
 *
 * All geometric questions reduce to exact LPs (lp.hpp):
 *  - analyze() finds implicit equalities, the dimension and a relative
 *    interior point by repeatedly maximising a uniform slack t and moving
 *    inequalities with positive dual multiplier into the equality set;
 *  - linear_image() eliminates the source variables, first through
 *    equalities and then by Fourier-Motzkin with LP redundancy pruning;
 *  - covers() decides target ⊆ ∪ cover cells by splitting each target
 *    cell along facets of cover cells until every piece lies in one cell
 *    or meets no cell in a full-dimensional set.
 */

#include "tropcover/linalg.hpp"
#include "tropcover/lp.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropcover {

using QPoint = QVector;

enum class Relation { le, eq };

struct LinConstraint {
    QVector normal;
    Rational offset;
    Relation rel = Relation::le;

    static LinConstraint le(QVector n, Rational b) { return {std::move(n), std::move(b), Relation::le}; }
    static LinConstraint eq(QVector n, Rational b) { return {std::move(n), std::move(b), Relation::eq}; }
    /// normal . x >= b
    static LinConstraint ge(QVector n, const Rational& b) {
        for (auto& v : n) v = -v;
        return {std::move(n), -b, Relation::le};
    }

    bool satisfied_by(const QPoint& x) const {
        Rational v = dot(normal, x);
        return rel == Relation::le ? v <= offset : v == offset;
    }
    bool strictly_satisfied_by(const QPoint& x) const { return rel == Relation::le && dot(normal, x) < offset; }

    bool has_zero_normal() const { return is_zero_vector(normal); }
    /// A zero-normal constraint that always holds.
    bool is_trivial() const {
        return has_zero_normal() && (rel == Relation::le ? offset.sign() >= 0 : offset.is_zero());
    }
    /// A zero-normal constraint that never holds.
    bool is_contradiction() const { return has_zero_normal() && !is_trivial(); }

    LinConstraint flipped() const {  // the opposite closed halfspace
        QVector n = normal;
        for (auto& v : n) v = -v;
        return {std::move(n), -offset, Relation::le};
    }

    /// Primitive integer normal; equalities get a positive first entry.
    LinConstraint normalized() const {
        if (has_zero_normal()) {
            if (is_trivial()) return *this;
            return {normal, Rational(-1), Relation::le};
        }
        mpz_class l = 1, g = 0;
        for (const auto& x : normal)
            if (!x.is_zero()) l = lcm(l, x.den());
        for (const auto& x : normal)
            if (!x.is_zero()) g = gcd(g, mpz_class(x.num() * (l / x.den())));
        Rational s(l, g);
        if (rel == Relation::eq) {
            for (const auto& x : normal)
                if (!x.is_zero()) {
                    if (x.sign() < 0) s = -s;
                    break;
                }
        }
        LinConstraint out{QVector{}, offset * s, rel};
        out.normal.reserve(normal.size());
        for (const auto& x : normal) out.normal.push_back(x * s);
        return out;
    }

    friend bool operator==(const LinConstraint& a, const LinConstraint& b) {
        return a.rel == b.rel && a.offset == b.offset && a.normal == b.normal;
    }

    std::string str() const {
        std::string s;
        bool first = true;
        for (std::size_t i = 0; i < normal.size(); ++i) {
            if (normal[i].is_zero()) continue;
            Rational c = normal[i];
            if (!first) s += c.sign() < 0 ? " - " : " + ";
            else if (c.sign() < 0) s += "-";
            Rational a = abs(c);
            if (a != Rational(1)) s += a.str() + "*";
            s += "x" + std::to_string(i);
            first = false;
        }
        if (first) s = "0";
        return s + (rel == Relation::le ? " <= " : " = ") + offset.str();
    }
};

class Polyhedron {
public:
    Polyhedron() = default;
    explicit Polyhedron(std::size_t ambient_dim) : dim_(ambient_dim) {}
    Polyhedron(std::size_t ambient_dim, const std::vector<LinConstraint>& cons) : dim_(ambient_dim) {
        for (const auto& c : cons) add(c);
    }

    static Polyhedron universe(std::size_t n) { return Polyhedron(n); }
    static Polyhedron empty_set(std::size_t n) {
        Polyhedron p(n);
        p.add(LinConstraint::le(QVector(n, Rational(0)), Rational(-1)));
        return p;
    }
    static Polyhedron point(const QPoint& x) {
        Polyhedron p(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            QVector e(x.size(), Rational(0));
            e[i] = 1;
            p.add(LinConstraint::eq(e, x[i]));
        }
        return p;
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<LinConstraint>& constraints() const { return cons_; }

    void add(const LinConstraint& c_in) {
        if (c_in.normal.size() != dim_) throw std::invalid_argument("Polyhedron::add: constraint dimension mismatch");
        LinConstraint c = c_in.normalized();
        if (c.is_trivial()) return;
        for (auto& e : cons_) {
            if (e.normal != c.normal || e.rel != c.rel) continue;
            if (c.rel == Relation::le) {
                if (c.offset < e.offset) e.offset = c.offset;
                return;
            }
            if (e.offset == c.offset) return;
            break;  // contradictory equalities: keep both
        }
        cons_.push_back(std::move(c));
    }
    void add_all(const std::vector<LinConstraint>& cs) {
        for (const auto& c : cs) add(c);
    }

    bool contains(const QPoint& x) const {
        if (x.size() != dim_) throw std::invalid_argument("Polyhedron::contains: dimension mismatch");
        return std::all_of(cons_.begin(), cons_.end(), [&](const LinConstraint& c) { return c.satisfied_by(x); });
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < cons_.size(); ++i) s += (i ? ", " : " ") + cons_[i].str();
        return s + " }";
    }

private:
    std::size_t dim_ = 0;
    std::vector<LinConstraint> cons_;
};

// ---------------------------------------------------------------------------
// Analysis: emptiness, implicit equalities, dimension, relative interior
// ---------------------------------------------------------------------------

struct PolyhedronInfo {
    bool empty = true;
    int dimension = -1;
    QPoint relint;                       // relative interior point (if nonempty)
    std::vector<bool> is_equality;       // per constraint: explicit or implicit equality
    QMatrix equality_normals;            // normals of all equalities
};

inline PolyhedronInfo analyze(const Polyhedron& p) {
    const std::size_t n = p.ambient_dim();
    const auto& cons = p.constraints();
    PolyhedronInfo info;
    info.is_equality.assign(cons.size(), false);
    for (std::size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].is_contradiction()) return info;
        info.is_equality[i] = cons[i].rel == Relation::eq;
    }

    for (;;) {
        LPProblem lp;
        lp.num_vars = n + 1;
        std::vector<std::size_t> ineq_rows;
        for (std::size_t i = 0; i < cons.size(); ++i) {
            QVector row = cons[i].normal;
            row.push_back(info.is_equality[i] ? Rational(0) : Rational(1));
            if (info.is_equality[i]) {
                lp.add_eq(std::move(row), cons[i].offset);
            } else {
                lp.add_le(std::move(row), cons[i].offset);
                ineq_rows.push_back(i);
            }
        }
        QVector cap(n + 1, Rational(0));
        cap[n] = 1;
        lp.add_le(cap, Rational(1));
        auto res = lp_maximize(cap, lp);
        if (res.status != LPStatus::optimal || res.value.sign() < 0) return info;
        if (res.value.sign() > 0) {
            info.empty = false;
            info.relint.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n));
            break;
        }
        bool moved = false;
        for (std::size_t k = 0; k < ineq_rows.size(); ++k) {
            if (res.dual_le[k].sign() > 0) {
                info.is_equality[ineq_rows[k]] = true;
                moved = true;
            }
        }
        if (!moved) throw std::logic_error("analyze: zero slack without a positive dual multiplier");
    }
    for (std::size_t i = 0; i < cons.size(); ++i)
        if (info.is_equality[i]) info.equality_normals.push_back(cons[i].normal);
    info.dimension = static_cast<int>(n) - static_cast<int>(rank(info.equality_normals));
    return info;
}

inline int dimension(const Polyhedron& p) { return analyze(p).dimension; }

/// A point strictly inside every inequality when P is full-dimensional.
inline std::optional<QPoint> interior_point(const Polyhedron& p) {
    const std::size_t n = p.ambient_dim();
    LPProblem lp;
    lp.num_vars = n + 1;
    for (const auto& c : p.constraints()) {
        if (c.rel == Relation::eq) return std::nullopt;
        QVector row = c.normal;
        row.push_back(Rational(1));
        lp.add_le(std::move(row), c.offset);
    }
    QVector cap(n + 1, Rational(0));
    cap[n] = 1;
    lp.add_le(cap, Rational(1));
    auto res = lp_maximize(cap, lp);
    if (res.status != LPStatus::optimal || res.value.sign() <= 0) return std::nullopt;
    res.x.pop_back();
    return res.x;
}

/// dim P = ambient dim, decided by a single slack LP.
inline bool is_full_dimensional(const Polyhedron& p) { return interior_point(p).has_value(); }

inline bool is_empty(const Polyhedron& p) { return analyze(p).empty; }

/// A rational point strictly inside every non-implicit inequality.
inline QPoint relative_interior_point(const Polyhedron& p) {
    auto info = analyze(p);
    if (info.empty) throw std::domain_error("relative_interior_point: empty polyhedron");
    return info.relint;
}

inline Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: dimension mismatch");
    Polyhedron r = a;
    r.add_all(b.constraints());
    return r;
}

inline Polyhedron with_constraint(const Polyhedron& a, const LinConstraint& c) {
    Polyhedron r = a;
    r.add(c);
    return r;
}

inline LPProblem to_lp(const Polyhedron& p) {
    LPProblem lp;
    lp.num_vars = p.ambient_dim();
    for (const auto& c : p.constraints()) {
        if (c.rel == Relation::le)
            lp.add_le(c.normal, c.offset);
        else
            lp.add_eq(c.normal, c.offset);
    }
    return lp;
}

/// sup of objective over p; nullopt when unbounded. p must be nonempty.
inline std::optional<Rational> maximize(const Polyhedron& p, const QVector& objective) {
    auto r = lp_maximize(objective, to_lp(p));
    if (r.status == LPStatus::infeasible) throw std::domain_error("maximize: empty polyhedron");
    if (r.status == LPStatus::unbounded) return std::nullopt;
    return r.value;
}

/// True when every point of p satisfies c (vacuously true for empty p).
inline bool implies(const Polyhedron& p, const LinConstraint& c) {
    auto r = lp_maximize(c.normal, to_lp(p));
    if (r.status == LPStatus::infeasible) return true;
    if (r.status == LPStatus::unbounded || r.value > c.offset) return false;
    if (c.rel == Relation::le) return true;
    auto s = lp_minimize(c.normal, to_lp(p));
    return s.status == LPStatus::optimal && s.value == c.offset;
}

/// inner ⊆ outer
inline bool contains(const Polyhedron& outer, const Polyhedron& inner) {
    if (outer.ambient_dim() != inner.ambient_dim()) throw std::invalid_argument("contains: dimension mismatch");
    return std::all_of(outer.constraints().begin(), outer.constraints().end(),
                       [&](const LinConstraint& c) { return implies(inner, c); });
}

inline bool same_set(const Polyhedron& a, const Polyhedron& b) { return contains(a, b) && contains(b, a); }

/// Removes inequalities implied by the remaining constraints.
inline Polyhedron remove_redundant(const Polyhedron& p) {
    std::vector<LinConstraint> cons = p.constraints();
    for (std::size_t i = 0; i < cons.size();) {
        if (cons[i].rel != Relation::le) {
            ++i;
            continue;
        }
        std::vector<LinConstraint> others;
        others.reserve(cons.size() - 1);
        for (std::size_t j = 0; j < cons.size(); ++j)
            if (j != i) others.push_back(cons[j]);
        if (implies(Polyhedron(p.ambient_dim(), others), cons[i]))
            cons.erase(cons.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return Polyhedron(p.ambient_dim(), cons);
}

// ---------------------------------------------------------------------------
// Affine maps and images
// ---------------------------------------------------------------------------

struct AffineMapQ {
    QMatrix matrix;  // rows = output coordinates
    QVector offset;
    std::size_t source_dim = 0;

    AffineMapQ() = default;
    AffineMapQ(QMatrix m, QVector b, std::size_t src) : matrix(std::move(m)), offset(std::move(b)), source_dim(src) {
        if (matrix.size() != offset.size()) throw std::invalid_argument("AffineMapQ: shape mismatch");
        for (const auto& r : matrix)
            if (r.size() != source_dim) throw std::invalid_argument("AffineMapQ: row length mismatch");
    }
    static AffineMapQ linear(QMatrix m, std::size_t src) {
        QVector b(m.size(), Rational(0));
        return AffineMapQ(std::move(m), std::move(b), src);
    }
    /// Coordinate projection keeping the listed coordinates in order.
    static AffineMapQ projection(std::size_t src, const std::vector<std::size_t>& keep) {
        QMatrix m;
        for (auto k : keep) {
            QVector r(src, Rational(0));
            r.at(k) = 1;
            m.push_back(std::move(r));
        }
        return linear(std::move(m), src);
    }
    static AffineMapQ identity(std::size_t n) {
        std::vector<std::size_t> keep(n);
        for (std::size_t i = 0; i < n; ++i) keep[i] = i;
        return projection(n, keep);
    }

    std::size_t target_dim() const { return matrix.size(); }

    QPoint apply(const QPoint& x) const {
        QPoint y = mat_vec(matrix, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
        return y;
    }
    friend bool operator==(const AffineMapQ& a, const AffineMapQ& b) {
        return a.matrix == b.matrix && a.offset == b.offset && a.source_dim == b.source_dim;
    }
};

namespace detail {

inline void eliminate_with(LinConstraint& c, const LinConstraint& pivot, std::size_t var) {
    if (c.normal[var].is_zero()) return;
    Rational f = c.normal[var] / pivot.normal[var];
    for (std::size_t k = 0; k < c.normal.size(); ++k)
        if (!pivot.normal[k].is_zero()) c.normal[k] -= f * pivot.normal[k];
    c.offset -= f * pivot.offset;
}

inline void dedupe(std::vector<LinConstraint>& cs, std::size_t dim) {
    Polyhedron tmp(dim, cs);
    cs = tmp.constraints();
}

}  // namespace detail

/// H-representation of A(P) + b by exact elimination.
inline Polyhedron linear_image(const Polyhedron& p, const AffineMapQ& a) {
    const std::size_t src = p.ambient_dim(), out = a.target_dim();
    if (a.source_dim != src) throw std::invalid_argument("linear_image: shape mismatch");
    auto info = analyze(p);
    if (info.empty) return Polyhedron::empty_set(out);

    const std::size_t total = src + out;  // variables: x (src) then y (out)
    std::vector<LinConstraint> eqs, les;
    for (std::size_t i = 0; i < p.constraints().size(); ++i) {
        const auto& c = p.constraints()[i];
        QVector n = c.normal;
        n.resize(total, Rational(0));
        (info.is_equality[i] ? eqs : les).push_back({std::move(n), c.offset, info.is_equality[i] ? Relation::eq : Relation::le});
    }
    for (std::size_t r = 0; r < out; ++r) {  // y_r - A_r x = b_r
        QVector n(total, Rational(0));
        for (std::size_t k = 0; k < src; ++k) n[k] = -a.matrix[r][k];
        n[src + r] = 1;
        eqs.push_back(LinConstraint::eq(std::move(n), a.offset[r]));
    }
    // eliminate source variables through equalities
    for (std::size_t j = 0; j < src; ++j) {
        auto it = std::find_if(eqs.begin(), eqs.end(), [j](const LinConstraint& c) { return !c.normal[j].is_zero(); });
        if (it == eqs.end()) continue;
        LinConstraint piv = *it;
        eqs.erase(it);
        for (auto& c : eqs) detail::eliminate_with(c, piv, j);
        for (auto& c : les) detail::eliminate_with(c, piv, j);
    }
    // Fourier-Motzkin on what is left
    std::vector<std::size_t> remaining;
    for (std::size_t j = 0; j < src; ++j)
        if (std::any_of(les.begin(), les.end(), [j](const LinConstraint& c) { return !c.normal[j].is_zero(); }))
            remaining.push_back(j);
    while (!remaining.empty()) {
        std::size_t best = 0;
        long best_cost = -1;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            long pos = 0, neg = 0;
            for (const auto& c : les) {
                int s = c.normal[remaining[k]].sign();
                pos += s > 0;
                neg += s < 0;
            }
            long cost = pos * neg - pos - neg;
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost < 0 ? 0 : cost;
                best = k;
                if (cost <= 0) break;
            }
        }
        const std::size_t j = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        std::vector<LinConstraint> pos, neg, next;
        for (auto& c : les) {
            int s = c.normal[j].sign();
            (s > 0 ? pos : (s < 0 ? neg : next)).push_back(std::move(c));
        }
        for (const auto& cp : pos)
            for (const auto& cn : neg) {
                Rational fp = -cn.normal[j], fn = cp.normal[j];  // fp*cp + fn*cn kills var j
                LinConstraint c{QVector(total, Rational(0)), fp * cp.offset + fn * cn.offset, Relation::le};
                for (std::size_t k = 0; k < total; ++k) c.normal[k] = fp * cp.normal[k] + fn * cn.normal[k];
                c.normal[j] = 0;
                next.push_back(std::move(c));
            }
        detail::dedupe(next, total);
        les = std::move(next);
        if (les.size() > 2 * (remaining.size() + out) + 4) {
            std::vector<LinConstraint> all = eqs;
            all.insert(all.end(), les.begin(), les.end());
            auto pruned = remove_redundant(Polyhedron(total, all));
            les.clear();
            for (const auto& c : pruned.constraints())
                if (c.rel == Relation::le) les.push_back(c);
        }
    }
    Polyhedron img(out);
    auto project = [&](const LinConstraint& c) {
        QVector n(c.normal.begin() + static_cast<std::ptrdiff_t>(src), c.normal.end());
        img.add({std::move(n), c.offset, c.rel});
    };
    for (const auto& c : eqs) project(c);
    for (const auto& c : les) project(c);
    return remove_redundant(img);
}

/// dim A(P) computed from the direction space of aff(P).
inline int image_dimension(const Polyhedron& p, const AffineMapQ& a) {
    auto info = analyze(p);
    if (info.empty) return -1;
    QMatrix dirs = null_space(info.equality_normals, p.ambient_dim());
    QMatrix images;
    for (const auto& d : dirs) images.push_back(mat_vec(a.matrix, d));
    return static_cast<int>(rank(images));
}

/// P is A-horizontal when A does not drop its dimension.
inline bool is_horizontal(const Polyhedron& p, const AffineMapQ& a) {
    auto info = analyze(p);
    if (info.empty) return false;
    return image_dimension(p, a) == info.dimension;
}

/// Minkowski sum P + span(directions).
inline Polyhedron add_lineality(const Polyhedron& p, const QMatrix& directions) {
    const std::size_t n = p.ambient_dim(), k = directions.size();
    Polyhedron lifted(n + k);
    for (const auto& c : p.constraints()) {
        QVector v = c.normal;
        v.resize(n + k, Rational(0));
        lifted.add({std::move(v), c.offset, c.rel});
    }
    QMatrix m(n, QVector(n + k, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
        for (std::size_t j = 0; j < k; ++j) m[i][n + j] = directions[j].at(i);
    }
    return linear_image(lifted, AffineMapQ::linear(std::move(m), n + k));
}

/// Cells of the arrangement of `hyperplanes` inside P that are
/// full-dimensional relative to P.
inline std::vector<Polyhedron> arrangement_subdivide(const Polyhedron& p, const std::vector<LinConstraint>& hyperplanes) {
    auto info = analyze(p);
    if (info.empty) return {};
    std::vector<Polyhedron> pieces{p};
    for (const auto& h_in : hyperplanes) {
        LinConstraint h{h_in.normal, h_in.offset, Relation::le};
        std::vector<Polyhedron> next;
        for (const auto& q : pieces) {
            if (implies(q, h) || implies(q, h.flipped())) {
                next.push_back(q);
                continue;
            }
            next.push_back(with_constraint(q, h));
            next.push_back(with_constraint(q, h.flipped()));
        }
        pieces = std::move(next);
    }
    return pieces;
}

// ---------------------------------------------------------------------------
// Complexes and coverage
// ---------------------------------------------------------------------------

struct PolyhedralComplex {
    std::size_t ambient_dim = 0;
    std::vector<Polyhedron> cells;
    std::vector<std::string> labels;

    PolyhedralComplex() = default;
    explicit PolyhedralComplex(std::size_t n) : ambient_dim(n) {}

    void add(Polyhedron p, std::string label = {}) {
        if (p.ambient_dim() != ambient_dim) throw std::invalid_argument("PolyhedralComplex::add: dimension mismatch");
        cells.push_back(std::move(p));
        labels.push_back(std::move(label));
    }
    std::size_t size() const { return cells.size(); }
    const std::string& label(std::size_t i) const { return labels.at(i); }
};

/// True iff x lies in some cell.
inline bool membership(const QPoint& x, const PolyhedralComplex& c) {
    if (x.size() != c.ambient_dim) throw std::invalid_argument("membership: dimension mismatch");
    return std::any_of(c.cells.begin(), c.cells.end(), [&](const Polyhedron& p) { return p.contains(x); });
}

enum class CellCoverage { covered, uncovered, empty };

inline const char* to_string(CellCoverage s) {
    switch (s) {
        case CellCoverage::covered: return "covered";
        case CellCoverage::uncovered: return "uncovered";
        case CellCoverage::empty: return "empty";
    }
    return "?";
}

struct CellCoverageEntry {
    std::size_t cell = 0;
    CellCoverage status = CellCoverage::covered;
    std::size_t pieces = 0;  // pieces examined
};

struct CoverageReport {
    bool covered = true;
    std::vector<CellCoverageEntry> per_cell;
    std::vector<QPoint> witnesses;
};

namespace detail {

/// A point of relint(q) outside every cover cell; q meets no cover cell in
/// a full-dimensional set, so a small generic perturbation always works.
inline QPoint pick_witness(const Polyhedron& q, const PolyhedronInfo& qi, const PolyhedralComplex& cover) {
    auto outside = [&](const QPoint& x) { return !membership(x, cover); };
    if (outside(qi.relint)) return qi.relint;
    QMatrix dirs = null_space(qi.equality_normals, q.ambient_dim());
    for (long scale = 1; scale < (1L << 20); scale *= 2) {
        for (long k = 1; k <= 4; ++k) {
            QPoint x = qi.relint;
            long w = 1;
            for (const auto& d : dirs) {
                Rational step(w * (k % 2 ? 1 : -1), scale);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += step * d[i];
                w = w * 3 + k;
            }
            if (q.contains(x) && outside(x)) return x;
        }
    }
    return qi.relint;
}

}  // namespace detail

/// Decides whether every cell of `target` lies in the union of `cover`.
inline CoverageReport covers(const PolyhedralComplex& target, const PolyhedralComplex& cover) {
    if (target.ambient_dim != cover.ambient_dim) throw std::invalid_argument("covers: dimension mismatch");
    CoverageReport report;
    for (std::size_t idx = 0; idx < target.cells.size(); ++idx) {
        const Polyhedron& cell = target.cells[idx];
        CellCoverageEntry entry{idx, CellCoverage::covered, 0};
        auto info = analyze(cell);
        if (info.empty) {
            entry.status = CellCoverage::empty;
            report.per_cell.push_back(entry);
            continue;
        }
        const int d = info.dimension;
        std::vector<const Polyhedron*> candidates;
        for (const auto& c : cover.cells)
            if (analyze(intersect(cell, c)).dimension == d) candidates.push_back(&c);

        std::vector<Polyhedron> stack{cell};
        while (!stack.empty()) {
            Polyhedron q = std::move(stack.back());
            stack.pop_back();
            auto qi = analyze(q);
            if (qi.empty || qi.dimension < d) continue;
            ++entry.pieces;
            bool done = false;
            for (const auto* c : candidates)
                if (c->contains(qi.relint) && contains(*c, q)) {
                    done = true;
                    break;
                }
            if (done) continue;
            std::optional<LinConstraint> split;
            for (const auto* c : candidates) {
                if (analyze(intersect(q, *c)).dimension != d) continue;
                for (const auto& h : c->constraints()) {
                    if (h.rel == Relation::le && !implies(q, h)) {
                        split = h;
                        break;
                    }
                }
                if (split) break;
            }
            if (!split) {
                entry.status = CellCoverage::uncovered;
                report.covered = false;
                report.witnesses.push_back(detail::pick_witness(q, qi, cover));
                continue;
            }
            stack.push_back(with_constraint(q, split->flipped()));
            stack.push_back(with_constraint(q, *split));
        }
        report.per_cell.push_back(entry);
    }
    return report;
}

inline bool mutually_cover(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    return covers(a, b).covered && covers(b, a).covered;
}

}  // namespace tropcover
