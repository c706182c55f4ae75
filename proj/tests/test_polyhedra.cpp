#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace tropcover;
using tropcover::testing::random_qpoint;

namespace {

QVector v(std::initializer_list<long> xs) {
    QVector out;
    for (long x : xs) out.push_back(Rational(x));
    return out;
}

Polyhedron box(std::size_t n, long lo, long hi) {
    Polyhedron p(n);
    for (std::size_t i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        p.add(LinConstraint::le(e, Rational(hi)));
        p.add(LinConstraint::ge(e, Rational(lo)));
    }
    return p;
}

Polyhedron ray(const QVector& dir) {
    // {s * dir : s >= 0}
    const std::size_t n = dir.size();
    QMatrix eqs = null_space(QMatrix{dir}, n);
    Polyhedron p(n);
    for (const auto& e : eqs) p.add(LinConstraint::eq(e, Rational(0)));
    QVector neg = dir;
    for (auto& x : neg) x = -x;
    p.add(LinConstraint::le(neg, Rational(0)));
    return p;
}

Rational polygon_area(const Polyhedron& p) {
    auto pts = detail::clipped_vertices(p, Rational(100));
    Rational a;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& x = pts[i];
        const auto& y = pts[(i + 1) % pts.size()];
        a += x[0] * y[1] - x[1] * y[0];
    }
    return abs(a) / Rational(2);
}

/// Is y = A x for some x in P? Decided by a feasibility LP.
bool in_image_oracle(const Polyhedron& p, const AffineMapQ& a, const QPoint& y) {
    Polyhedron q = p;
    for (std::size_t i = 0; i < a.target_dim(); ++i) q.add(LinConstraint::eq(a.matrix[i], y[i] - a.offset[i]));
    return !is_empty(q);
}

Polyhedron random_polytope(std::mt19937_64& rng, std::size_t n, int extra) {
    std::uniform_int_distribution<long> c(-3, 3), b(0, 4);
    Polyhedron p = box(n, -5, 5);
    for (int k = 0; k < extra; ++k) {
        QVector a(n);
        for (auto& x : a) x = Rational(c(rng));
        p.add(LinConstraint::le(a, Rational(b(rng))));
    }
    return p;
}

AffineMapQ random_affine(std::mt19937_64& rng, std::size_t src, std::size_t dst) {
    std::uniform_int_distribution<long> c(-2, 2);
    QMatrix m(dst, QVector(src));
    QVector off(dst);
    for (auto& row : m)
        for (auto& x : row) x = Rational(c(rng));
    for (auto& x : off) x = Rational(c(rng));
    return AffineMapQ(m, off, src);
}

}  // namespace

TEST(ExactLP, TextbookOptimum) {
    LPProblem lp;
    lp.num_vars = 2;
    lp.add_le(v({1, 2}), Rational(4));
    lp.add_le(v({3, 1}), Rational(6));
    lp.add_le(v({-1, 0}), Rational(0));
    lp.add_le(v({0, -1}), Rational(0));
    auto r = lp_maximize(v({1, 1}), lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, Rational(14, 5));
    EXPECT_EQ(r.x, (QVector{Rational(8, 5), Rational(6, 5)}));
}

TEST(ExactLP, InfeasibleAndUnbounded) {
    LPProblem lp;
    lp.num_vars = 1;
    lp.add_le(v({1}), Rational(-1));
    lp.add_le(v({-1}), Rational(0));
    EXPECT_EQ(lp_maximize(v({1}), lp).status, LPStatus::infeasible);
    LPProblem free;
    free.num_vars = 2;
    free.add_eq(v({1, -1}), Rational(0));
    EXPECT_EQ(lp_maximize(v({1, 1}), free).status, LPStatus::unbounded);
}

TEST(ExactLP, BealeCyclingExampleTerminates) {
    LPProblem lp;
    lp.num_vars = 4;
    lp.add_le({Rational(1, 4), Rational(-8), Rational(-1), Rational(9)}, Rational(0));
    lp.add_le({Rational(1, 2), Rational(-12), Rational(-1, 2), Rational(3)}, Rational(0));
    lp.add_le(v({0, 0, 1, 0}), Rational(1));
    for (std::size_t i = 0; i < 4; ++i) {
        QVector e(4, Rational(0));
        e[i] = -1;
        lp.add_le(e, Rational(0));
    }
    auto r = lp_minimize({Rational(-3, 4), Rational(20), Rational(-1, 2), Rational(6)}, lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, Rational(-5, 4));
}

TEST(Dimension, Halfplane) { EXPECT_EQ(dimension(Polyhedron(2, {LinConstraint::ge(v({1, 0}), Rational(0))})), 2); }

TEST(Dimension, HalfLine) {
    Polyhedron p(2, {LinConstraint::eq(v({1, 0}), Rational(0)), LinConstraint::le(v({0, 1}), Rational(0))});
    EXPECT_EQ(dimension(p), 1);
}

TEST(Dimension, EmptyIsMinusOne) {
    Polyhedron p(1, {LinConstraint::le(v({1}), Rational(-1)), LinConstraint::ge(v({1}), Rational(0))});
    EXPECT_EQ(dimension(p), -1);
    EXPECT_TRUE(is_empty(p));
}

TEST(Dimension, ImplicitEqualityIsDetected) {
    Polyhedron p(2, {LinConstraint::le(v({1, 1}), Rational(1)), LinConstraint::ge(v({1, 1}), Rational(1)),
                     LinConstraint::ge(v({1, 0}), Rational(0))});
    EXPECT_EQ(dimension(p), 1);
}

TEST(Intersect, SelfIntersectionIsSameSet) {
    auto p = box(2, 0, 3);
    EXPECT_TRUE(same_set(intersect(p, p), p));
}

TEST(Intersect, OppositeHalfplanesMeetInALine) {
    Polyhedron a(2, {LinConstraint::ge(v({1, 0}), Rational(0))});
    Polyhedron b(2, {LinConstraint::le(v({1, 0}), Rational(0))});
    EXPECT_TRUE(same_set(intersect(a, b), Polyhedron(2, {LinConstraint::eq(v({1, 0}), Rational(0))})));
}

TEST(Intersect, DisjointHalfplanesAreEmpty) {
    Polyhedron a(2, {LinConstraint::ge(v({1, 0}), Rational(1))});
    Polyhedron b(2, {LinConstraint::le(v({1, 0}), Rational(0))});
    EXPECT_TRUE(is_empty(intersect(a, b)));
    EXPECT_ANY_THROW(intersect(a, Polyhedron(3)));
}

TEST(LinearImage, SquareToSegment) {
    auto img = linear_image(box(2, 0, 1), AffineMapQ::projection(2, {0}));
    EXPECT_TRUE(same_set(img, box(1, 0, 1)));
}

TEST(LinearImage, DiagonalRayToHalfLine) {
    auto img = linear_image(ray(v({1, 1})), AffineMapQ::projection(2, {0}));
    EXPECT_TRUE(same_set(img, Polyhedron(1, {LinConstraint::ge(v({1}), Rational(0))})));
}

TEST(LinearImage, VerticalRayToPoint) {
    auto img = linear_image(ray(v({0, 1})), AffineMapQ::projection(2, {0}));
    EXPECT_TRUE(same_set(img, Polyhedron::point({Rational(0)})));
}

TEST(RelativeInterior, Segment) {
    auto x = relative_interior_point(box(1, 0, 1));
    EXPECT_GT(x[0], Rational(0));
    EXPECT_LT(x[0], Rational(1));
}

TEST(RelativeInterior, HalfLine) {
    Polyhedron p(2, {LinConstraint::eq(v({1, 0}), Rational(0)), LinConstraint::ge(v({0, 1}), Rational(0))});
    auto x = relative_interior_point(p);
    EXPECT_EQ(x[0], Rational(0));
    EXPECT_GT(x[1], Rational(0));
}

TEST(RelativeInterior, Plane) {
    auto x = relative_interior_point(Polyhedron(2));
    EXPECT_EQ(x.size(), 2u);
    EXPECT_ANY_THROW(relative_interior_point(Polyhedron::empty_set(2)));
}

TEST(Horizontal, RayProjections) {
    auto pr = AffineMapQ::projection(2, {0});
    EXPECT_TRUE(is_horizontal(ray(v({1, 1})), pr));
    EXPECT_FALSE(is_horizontal(ray(v({0, 1})), pr));
}

TEST(Subdivide, SquareByDiagonal) {
    auto pieces = arrangement_subdivide(box(2, 0, 1), {LinConstraint::eq(v({1, -1}), Rational(0))});
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(polygon_area(pieces[0]) + polygon_area(pieces[1]), Rational(1));
    EXPECT_EQ(polygon_area(pieces[0]), Rational(1, 2));
}

TEST(Subdivide, MissingHyperplaneKeepsCell) {
    auto pieces = arrangement_subdivide(box(2, 0, 1), {LinConstraint::eq(v({1, 0}), Rational(5))});
    ASSERT_EQ(pieces.size(), 1u);
}

TEST(Subdivide, AxesGiveQuadrants) {
    auto pieces = arrangement_subdivide(Polyhedron(2), {LinConstraint::eq(v({1, 0}), Rational(0)),
                                                        LinConstraint::eq(v({0, 1}), Rational(0))});
    EXPECT_EQ(pieces.size(), 4u);
    for (const auto& q : pieces) EXPECT_EQ(dimension(q), 2);
}

TEST(Covers, TargetCoversItself) {
    PolyhedralComplex c(2);
    c.add(box(2, 0, 1));
    c.add(ray(v({-1, 2})));
    EXPECT_TRUE(covers(c, c).covered);
}

TEST(Covers, SplitSquare) {
    PolyhedralComplex target(2), halves(2), one_half(2);
    target.add(box(2, 0, 2));
    halves.add(with_constraint(box(2, 0, 2), LinConstraint::le(v({1, 1}), Rational(2))));
    halves.add(with_constraint(box(2, 0, 2), LinConstraint::ge(v({1, 1}), Rational(2))));
    one_half.add(halves.cells[0]);
    EXPECT_TRUE(covers(target, halves).covered);
    auto r = covers(target, one_half);
    EXPECT_FALSE(r.covered);
    ASSERT_FALSE(r.witnesses.empty());
    EXPECT_TRUE(target.cells[0].contains(r.witnesses[0]));
    EXPECT_FALSE(membership(r.witnesses[0], one_half));
}

TEST(Covers, LowerDimensionalTargetInsideFullCover) {
    PolyhedralComplex target(3), cover(3);
    target.add(Polyhedron(3, {LinConstraint::eq(v({1, 1, 1}), Rational(0)), LinConstraint::ge(v({1, 0, 0}), Rational(0))}));
    cover.add(Polyhedron(3, {LinConstraint::ge(v({1, 0, 0}), Rational(0)), LinConstraint::le(v({0, 1, 0}), Rational(0))}));
    cover.add(Polyhedron(3, {LinConstraint::ge(v({0, 1, 0}), Rational(0))}));
    EXPECT_TRUE(covers(target, cover).covered);
}

// Properties over seeded random polytopes and maps.

class PolyhedraProperties : public ::testing::TestWithParam<int> {};

TEST_P(PolyhedraProperties, ImageDimensionNeverGrows) {
    std::mt19937_64 rng(GetParam());
    for (int k = 0; k < 6; ++k) {
        auto p = random_polytope(rng, 3, 3);
        auto a = random_affine(rng, 3, 2);
        auto img = linear_image(p, a);
        EXPECT_LE(dimension(img), dimension(p));
        EXPECT_EQ(dimension(img), image_dimension(p, a));
    }
}

TEST_P(PolyhedraProperties, ImageAgreesWithFeasibilityOracle) {
    std::mt19937_64 rng(GetParam() + 10);
    auto p = random_polytope(rng, 3, 2);
    if (is_empty(p)) GTEST_SKIP();
    auto a = random_affine(rng, 3, 2);
    auto img = linear_image(p, a);
    for (int s = 0; s < 30; ++s) {
        auto y = random_qpoint(rng, 2, 12);
        EXPECT_EQ(img.contains(y), in_image_oracle(p, a, y)) << to_string(y);
    }
    EXPECT_TRUE(img.contains(a.apply(relative_interior_point(p))));
}

TEST_P(PolyhedraProperties, RelativeInteriorPointIsStrict) {
    std::mt19937_64 rng(GetParam() + 20);
    auto p = random_polytope(rng, 3, 3);
    p.add(LinConstraint::eq(v({1, -1, 0}), Rational(1)));
    auto info = analyze(p);
    if (info.empty) GTEST_SKIP();
    auto x = relative_interior_point(p);
    const auto& cs = p.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        EXPECT_TRUE(cs[i].satisfied_by(x));
        if (!info.is_equality[i]) {
            EXPECT_TRUE(cs[i].strictly_satisfied_by(x)) << cs[i].str();
        }
    }
}

TEST_P(PolyhedraProperties, CoveredTargetsPassSampling) {
    std::mt19937_64 rng(GetParam() + 30);
    PolyhedralComplex target(2), cover(2);
    target.add(random_polytope(rng, 2, 2));
    for (int k = 0; k < 4; ++k) cover.add(random_polytope(rng, 2, 2));
    auto r = covers(target, cover);
    // sample rational points of the target; each must be in the cover when covered
    const auto& t = target.cells[0];
    if (is_empty(t)) GTEST_SKIP();
    int outside = 0;
    for (int s = 0; s < 200; ++s) {
        auto x = random_qpoint(rng, 2, 5);
        if (t.contains(x) && !membership(x, cover)) ++outside;
    }
    if (r.covered) {
        EXPECT_EQ(outside, 0);
    } else {
        ASSERT_FALSE(r.witnesses.empty());
        EXPECT_FALSE(membership(r.witnesses[0], cover));
    }
}

TEST_P(PolyhedraProperties, EnlargingTheCoverIsMonotone) {
    std::mt19937_64 rng(GetParam() + 40);
    PolyhedralComplex target(2), cover(2);
    target.add(random_polytope(rng, 2, 1));
    cover.add(box(2, -5, 5));
    ASSERT_TRUE(covers(target, cover).covered);
    for (int k = 0; k < 3; ++k) {
        cover.add(random_polytope(rng, 2, 3));
        EXPECT_TRUE(covers(target, cover).covered);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolyhedraProperties, ::testing::Range(1, 11));
