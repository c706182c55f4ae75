#pragma once

/**
 * @file lp.hpp
 * @brief Dense exact-rational simplex (two-phase, Bland's rule).
 *
 *   maximise  c.x   subject to  A_le x <= b_le,  A_eq x = b_eq,  x free.
 *
 * Free variables are split as x = x+ - x-. Dual multipliers of the <= rows
 * are read off the final objective row.
 */

#include "tropcover/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tropcover {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    Rational value;
    QVector x;
    QVector dual_le;  // one multiplier per <= row, >= 0 at optimality
};

struct LPProblem {
    std::size_t num_vars = 0;
    QMatrix a_le;
    QVector b_le;
    QMatrix a_eq;
    QVector b_eq;

    void add_le(QVector a, Rational b) {
        a_le.push_back(std::move(a));
        b_le.push_back(std::move(b));
    }
    void add_eq(QVector a, Rational b) {
        a_eq.push_back(std::move(a));
        b_eq.push_back(std::move(b));
    }
};

namespace detail {

// row -= f * pivot_row, skipping zero entries
inline void row_submul(QVector& row, const Rational& f, const QVector& pivot_row) {
    mpq_class tmp;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (pivot_row[j].is_zero()) continue;
        tmp = f.get() * pivot_row[j].get();
        row[j] -= Rational(tmp);
    }
}

class Tableau {
public:
    Tableau(const LPProblem& lp, const QVector& objective) : n_(lp.num_vars) {
        const std::size_t mle = lp.a_le.size(), meq = lp.a_eq.size();
        m_ = mle + meq;
        slack0_ = 2 * n_;
        art0_ = slack0_ + mle;
        // count artificials
        std::size_t nart = meq;
        for (std::size_t i = 0; i < mle; ++i)
            if (lp.b_le[i].sign() < 0) ++nart;
        cols_ = art0_ + nart;
        rows_.assign(m_, QVector(cols_ + 1));
        basis_.assign(m_, 0);
        std::size_t art = art0_;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool is_le = i < mle;
            const QVector& a = is_le ? lp.a_le[i] : lp.a_eq[i - mle];
            const Rational& b = is_le ? lp.b_le[i] : lp.b_eq[i - mle];
            if (a.size() != n_) throw std::invalid_argument("LP: row length mismatch");
            const bool negate = b.sign() < 0;
            QVector& r = rows_[i];
            for (std::size_t j = 0; j < n_; ++j) {
                if (a[j].is_zero()) continue;
                r[j] = negate ? -a[j] : a[j];
                r[n_ + j] = -r[j];
            }
            if (is_le) r[slack0_ + i] = negate ? Rational(-1) : Rational(1);
            r[cols_] = negate ? -b : b;
            if (is_le && !negate) {
                basis_[i] = slack0_ + i;
            } else {
                r[art] = 1;
                basis_[i] = art++;
            }
        }
        objective_ = objective;
        if (objective_.size() != n_) throw std::invalid_argument("LP: objective length mismatch");
    }

    LPResult solve() {
        LPResult res;
        if (cols_ > art0_) {
            // phase 1: maximise -sum(artificials)
            QVector cost(cols_, Rational(0));
            for (std::size_t j = art0_; j < cols_; ++j) cost[j] = -1;
            set_objective(cost);
            if (run(cols_) != LPStatus::optimal) throw std::logic_error("LP: phase 1 unbounded");
            if (obj_[cols_].sign() != 0) return res;  // infeasible
            drive_out_artificials();
        }
        QVector cost(cols_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) {
            cost[j] = objective_[j];
            cost[n_ + j] = -objective_[j];
        }
        set_objective(cost);
        auto st = run(art0_);
        res.status = st;
        if (st != LPStatus::optimal) return res;
        res.value = obj_[cols_];
        res.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t b = basis_[i];
            if (b < n_)
                res.x[b] += rows_[i][cols_];
            else if (b < 2 * n_)
                res.x[b - n_] -= rows_[i][cols_];
        }
        res.dual_le.assign(art0_ - slack0_, Rational(0));
        for (std::size_t k = 0; k < res.dual_le.size(); ++k) res.dual_le[k] = obj_[slack0_ + k];
        return res;
    }

private:
    // obj_[j] = c_B B^-1 A_j - c_j ; obj_[cols_] = current objective value
    void set_objective(const QVector& cost) {
        obj_.assign(cols_ + 1, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = -cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            Rational f = -cb;
            row_submul(obj_, f, rows_[i]);
        }
    }

    LPStatus run(std::size_t allowed_cols) {
        for (;;) {
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j)
                if (obj_[j].sign() < 0) {
                    enter = j;
                    break;
                }
            if (enter == allowed_cols) return LPStatus::optimal;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][enter];
                if (a.sign() <= 0) continue;
                Rational ratio = rows_[i][cols_] / a;
                if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows_.size()) return LPStatus::unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = Rational(1) / rows_[r][c];
        for (auto& v : rows_[r])
            if (!v.is_zero()) v *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c].is_zero()) continue;
            Rational f = rows_[i][c];
            row_submul(rows_[i], f, rows_[r]);
        }
        if (!obj_[c].is_zero()) {
            Rational f = obj_[c];
            row_submul(obj_, f, rows_[r]);
        }
        basis_[r] = c;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < art0_) {
                ++i;
                continue;
            }
            std::size_t c = art0_;
            for (std::size_t j = 0; j < art0_; ++j)
                if (!rows_[i][j].is_zero()) {
                    c = j;
                    break;
                }
            if (c == art0_) {
                // redundant equality row
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, c);
            ++i;
        }
    }

    std::size_t n_, m_ = 0, slack0_ = 0, art0_ = 0, cols_ = 0;
    std::vector<QVector> rows_;
    std::vector<std::size_t> basis_;
    QVector obj_;
    QVector objective_;
};

}  // namespace detail

inline LPResult lp_maximize(const QVector& objective, const LPProblem& lp) {
    return detail::Tableau(lp, objective).solve();
}

inline LPResult lp_minimize(const QVector& objective, const LPProblem& lp) {
    QVector neg;
    neg.reserve(objective.size());
    for (const auto& c : objective) neg.push_back(-c);
    auto r = lp_maximize(neg, lp);
    if (r.status == LPStatus::optimal) r.value = -r.value;
    return r;
}

}  // namespace tropcover
