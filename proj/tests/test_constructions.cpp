#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace tropcover;
using tropcover::testing::random_qpoint;
using tropcover::testing::sv;

namespace {

LaurentPoly poly(const std::string& text) { return parse_poly_text(text).first; }
RationalMap map(const std::string& text) { return parse_map_text(text); }

QPoint q(std::initializer_list<long> xs) {
    QPoint out;
    for (long x : xs) out.push_back(Rational(x));
    return out;
}

std::vector<LaurentPoly> components(const RationalMap& phi) {
    std::vector<LaurentPoly> out;
    for (const auto& c : phi.components()) {
        EXPECT_TRUE(c.is_polynomial());
        out.push_back(c.num());
    }
    return out;
}

LaurentPoly det3(const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d,
                 const LaurentPoly& e, const LaurentPoly& f, const LaurentPoly& g, const LaurentPoly& h,
                 const LaurentPoly& i) {
    return a * e * i + b * f * g + c * d * h - c * e * g - b * d * i - a * f * h;
}

/// Trop(V) membership from its definition: for every circuit c of the
/// orthogonal complement, min_j (xi_j + v(c_j)) over supp(c) is attained twice.
/// Circuits are found by scanning supports.
bool in_trop_linear_space(const QMatrix& eqs, const QPoint& xi) {
    const std::size_t n = xi.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> supp;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) supp.push_back(j);
        // vectors in rowspace(eqs) vanishing off supp
        QMatrix cond;
        for (std::size_t j = 0; j < n; ++j)
            if (!(mask & (1u << j))) {
                QVector col;
                for (const auto& r : eqs) col.push_back(r[j]);
                cond.push_back(col);
            }
        QMatrix lambdas;
        if (cond.empty()) {
            lambdas.assign(eqs.size(), QVector(eqs.size(), Rational(0)));
            for (std::size_t i = 0; i < eqs.size(); ++i) lambdas[i][i] = Rational(1);
        } else {
            lambdas = null_space(cond, eqs.size());
        }
        QMatrix vs;
        for (const auto& l : lambdas) {
            QVector x(n, Rational(0));
            for (std::size_t i = 0; i < eqs.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) x[j] += l[i] * eqs[i][j];
            vs.push_back(x);
        }
        if (rank(vs) != 1) continue;
        QVector c;
        for (const auto& w : vs)
            if (!is_zero_vector(w)) c = w;
        bool full = true;
        for (auto j : supp) full = full && !c[j].is_zero();
        if (!full) continue;
        Rational best;
        int count = 0;
        for (auto j : supp) {
            if (count == 0 || xi[j] < best) {
                best = xi[j];
                count = 1;
            } else if (xi[j] == best) {
                ++count;
            }
        }
        if (count < 2) return false;
    }
    return true;
}

PuiseuxPoly series(const std::string& s) { return sv(s).num(); }

PuiseuxUPoly upoly(const std::string& text) { return puiseux_coefficients(poly(text)); }

/// binom(1/2, k)
Rational half_binomial(long k) {
    Rational out(1);
    for (long j = 0; j < k; ++j) out = out * (Rational(1, 2) - Rational(j)) / Rational(j + 1);
    return out;
}

long catalan(long k) {
    long c = 1;
    for (long j = 0; j < k; ++j) c = c * 2 * (2 * j + 1) / (j + 2);
    return c;
}

}  // namespace

// Toric pushforward and cones.

TEST(ToricPushforward, IdentityIsNeutral) {
    auto phi = map("vars: s u\n(1 + s)/(u - s)\n(1 + u)/(u - s)");
    auto out = toric_pushforward(phi, {{1, 0}, {0, 1}}, {ValuedScalar(1), ValuedScalar(1)});
    EXPECT_TRUE(out.equals(phi));
}

TEST(ToricPushforward, TranslatesTheImage) {
    auto phi = line_phi();
    auto out = toric_pushforward(phi, {{1, 0}, {0, 1}}, {sv("t"), ValuedScalar(1)});
    auto shifted = tropical_image(out);
    EXPECT_TRUE(membership(q({6, 0}), shifted));
    EXPECT_TRUE(membership(q({-4, -5}), shifted));
    EXPECT_FALSE(membership(q({5, 0}), shifted) && membership(q({-5, -5}), shifted));
}

TEST(ToricPushforward, ShapeErrors) {
    EXPECT_THROW(toric_pushforward(line_phi(), {{1, 0}}, {ValuedScalar(1), ValuedScalar(1)}), std::invalid_argument);
    EXPECT_THROW(toric_pushforward(line_phi(), {{1, 0, 1}}, {ValuedScalar(1)}), std::invalid_argument);
    EXPECT_THROW(toric_pushforward(line_phi(), {{1, 0}}, {ValuedScalar(0)}), std::invalid_argument);
}

TEST(ConeOverMap, ConstantMapGivesTheDiagonal) {
    auto phi = RationalMap(1, {RationalFunction(LaurentPoly::constant(1, ValuedScalar(1)))});
    auto c = cone_over_map(phi);
    EXPECT_TRUE(c.equals(map("vars: w x\nw\nw")));
}

TEST(ConeOverMap, ImageIsTheCylinder) {
    auto c = cone_over_map(line_phi());
    auto img = tropical_image(c);
    auto cyl = detail::homogenised_cylinder(tropical_image(line_phi()));
    EXPECT_TRUE(mutually_cover(img, cyl));
    // the corner locus of the homogenised line equation
    auto h = trop_hypersurface(poly("vars: w x y\nx - y + w"));
    EXPECT_TRUE(covers(img, h.complex).covered);
}

TEST(ConeOverMap, PushforwardRecoversTheMap) {
    auto phi = map("vars: a b\na + t*b\n(a - b)/(1 + a)");
    auto back = toric_pushforward(cone_over_map(phi), {{-1, 1, 0}, {-1, 0, 1}}, {ValuedScalar(1), ValuedScalar(1)});
    std::mt19937_64 rng(5);
    for (int k = 0; k < 5; ++k) {
        std::vector<ValuedScalar> x{random_scalar(rng), random_scalar(rng), random_scalar(rng)};
        std::vector<ValuedScalar> y{x[1], x[2]};
        try {
            EXPECT_EQ(back.evaluate(x), phi.evaluate(y));
        } catch (const std::domain_error&) {
        }
    }
}

// Linear spaces.

TEST(YuYuster, Line) {
    QMatrix basis{{1, 1, 1}};
    auto yy = yu_yuster_param(basis, 3);
    EXPECT_EQ(yy.domain_dim(), 1u);
    EXPECT_TRUE(mutually_cover(tropical_image(yy), trop_linear_space(equations_of_span(basis, 3), 3)));
}

TEST(YuYuster, PlaneHasThreeColumns) {
    auto basis = null_space(QMatrix{{1, 1, 1}}, 3);
    auto yy = yu_yuster_param(basis, 3);
    EXPECT_EQ(yy.domain_dim(), 3u);
    auto img = tropical_image(yy);
    EXPECT_TRUE(mutually_cover(img, trop_hypersurface(poly("vars: x y z\nx + y + z")).complex));
}

TEST(YuYuster, WholeSpaceUsesCoordinateVectors) {
    QMatrix basis{{1, 0}, {0, 1}};
    auto yy = yu_yuster_param(basis, 2);
    EXPECT_EQ(yy.domain_dim(), 2u);
    auto img = tropical_image(yy);
    ASSERT_EQ(img.size(), 1u);
    EXPECT_EQ(dimension(img.cells[0]), 2);
    EXPECT_THROW(yu_yuster_param(QMatrix{{0, 0}}, 2), std::invalid_argument);
}

TEST(YuYuster, PuiseuxCoefficients) {
    Matrix<ValuedScalar> basis{{sv("1"), sv("t"), sv("1 + t^2")}};
    auto yy = yu_yuster_param(basis, 3);
    auto img = tropical_image(yy);
    auto tv = trop_linear_space(equations_of_span(basis, 3), 3);
    EXPECT_TRUE(mutually_cover(img, tv));
    EXPECT_TRUE(membership(q({0, 1, 0}), img));
    EXPECT_FALSE(membership(q({0, 0, 0}), img));
}

// Rational curves.

TEST(CurveFactorization, LineExample) {
    std::vector<RationalFunction> fs{RationalFunction(poly("vars: t\nt")), RationalFunction(poly("vars: t\nt + 1"))};
    auto f = curve_factorization(fs);
    EXPECT_EQ(f.points, (std::vector<GaussianRational>{GaussianRational(Rational(-1)), GaussianRational(Rational(0))}));
    EXPECT_EQ(f.exponents, (MonomialMap{{0, 1}, {1, 0}}));
    EXPECT_EQ(f.scalars, (TorusPoint{ValuedScalar(1), ValuedScalar(1)}));
}

TEST(CurveFactorization, MultipleRootAndPole) {
    auto f = curve_factorization({RationalFunction(poly("vars: t\nt^3 - t^2"))});
    EXPECT_EQ(f.points.size(), 2u);
    EXPECT_EQ(f.exponents, (MonomialMap{{2, 1}}));
    auto g = curve_factorization({RationalFunction(poly("vars: t\n1"), poly("vars: t\nt - 1"))});
    EXPECT_EQ(g.exponents, (MonomialMap{{-1}}));
}

TEST(CurveFactorization, RecompositionGivesTheInput) {
    std::vector<RationalFunction> fs{RationalFunction(poly("vars: t\n3*t^2 - 3"), poly("vars: t\nt^2 + 1")),
                                     RationalFunction(poly("vars: t\n2*t^3 + 4*t^2")),
                                     RationalFunction(poly("vars: t\nt - i"), poly("vars: t\n5*t"))};
    auto f = curve_factorization(fs);
    EXPECT_EQ(f.points.size(), 6u);  // -2, -1, 0, 1, i, -i
    auto back = toric_pushforward(f.affine, f.exponents, f.scalars);
    EXPECT_TRUE(back.equals(RationalMap(1, fs)));
}

TEST(CurveFactorization, IrreducibleFactorIsRejected) {
    EXPECT_THROW(curve_factorization({RationalFunction(poly("vars: t\nt^2 - 2"))}), RootError);
}

// Named parameterisations.

TEST(Rank2, EntryFormula) {
    auto phi = rank2_param(3, 4);
    EXPECT_EQ(phi.domain_dim(), 14u);
    EXPECT_EQ(phi.codomain_dim(), 12u);
    // entry (1, 2) in row-major order is u2 v3 (x2 + y3)
    const auto& names = phi.variable_names();
    EXPECT_EQ(phi[1 * 4 + 2].str(names), poly("vars: u1 u2 u3 x1 x2 x3 v1 v2 v3 v4 y1 y2 y3 y4\nu2*v3*x2 + u2*v3*y3").str(names));
}

TEST(Rank2, ThreeByThreeDeterminantVanishes) {
    auto e = components(rank2_param(3, 3));
    EXPECT_TRUE(det3(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8]).is_zero());
    EXPECT_TRUE(detail::determinant({{e[0], e[1], e[2]}, {e[3], e[4], e[5]}, {e[6], e[7], e[8]}}).is_zero());
}

TEST(Rank2, TwoByTwoImageIsDense) {
    std::mt19937_64 rng(1);
    EXPECT_EQ(jacobian_rank(rank2_param(2, 2), rng), 4u);
    // rank <= 2 matrices in 3 x 3 form a hypersurface
    EXPECT_EQ(jacobian_rank(rank2_param(3, 3), rng), 8u);
    EXPECT_THROW(rank2_param(1, 3), std::invalid_argument);
}

TEST(Grassmannian, PluckerRelations) {
    for (std::size_t n : {4u, 5u}) {
        auto p = components(grassmannian2_param(n));
        std::map<std::pair<std::size_t, std::size_t>, LaurentPoly> pij;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pij.emplace(std::make_pair(i, j), p[k++]);
        auto at = [&](std::size_t i, std::size_t j) { return pij.at({i, j}); };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k2 = j + 1; k2 < n; ++k2)
                    for (std::size_t l = k2 + 1; l < n; ++l)
                        EXPECT_TRUE((at(i, j) * at(k2, l) - at(i, k2) * at(j, l) + at(i, l) * at(j, k2)).is_zero());
    }
    EXPECT_THROW(grassmannian2_param(3), std::invalid_argument);
}

TEST(Grassmannian, NumericPoint) {
    auto phi = grassmannian2_param(4);
    std::vector<ValuedScalar> x{ValuedScalar(1), ValuedScalar(1), ValuedScalar(1), ValuedScalar(1),
                                ValuedScalar(0), ValuedScalar(1), ValuedScalar(2), ValuedScalar(3)};
    // x contains zeros, so evaluate the polynomial components directly
    auto p = components(phi);
    std::vector<ValuedScalar> v;
    for (const auto& c : p) v.push_back(c.evaluate(x));
    EXPECT_EQ(v, (std::vector<ValuedScalar>{ValuedScalar(-1), ValuedScalar(-2), ValuedScalar(-3), ValuedScalar(-1),
                                            ValuedScalar(-2), ValuedScalar(-1)}));
    EXPECT_EQ(v[0] * v[5] - v[1] * v[4] + v[2] * v[3], ValuedScalar(0));
}

TEST(Horn, QuadraticDiscriminant) {
    std::vector<std::vector<long>> a{{1, 1, 1}, {0, 1, 2}};
    auto kernel = integer_kernel(a, 3);
    ASSERT_EQ(kernel.size(), 1u);
    EXPECT_TRUE(kernel[0] == (std::vector<long>{1, -2, 1}) || kernel[0] == (std::vector<long>{-1, 2, -1}));
    auto e = components(horn_param(a));
    EXPECT_TRUE((e[1] * e[1] - e[0] * e[2].scaled(ValuedScalar(4))).is_zero());
}

TEST(Horn, ImageLiesInTheTropicalDiscriminant) {
    auto phi = horn_param({{1, 1, 1}, {0, 1, 2}});
    auto disc = trop_hypersurface(poly("vars: a b c\nb^2 - 4*a*c")).complex;
    auto t = tropicalize_map(phi);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) EXPECT_TRUE(membership(trop_eval_map(t, random_qpoint(rng, phi.domain_dim())), disc));
}

TEST(Horn, DegenerateInputs) {
    EXPECT_THROW(horn_param({{1, 1}, {0, 1}}), std::invalid_argument);           // kernel 0
    EXPECT_THROW(horn_param({{1, 1, 1}, {2, 2, 2}}), std::invalid_argument);     // rank-deficient
    EXPECT_THROW(horn_param({{0, 1, 2}}), std::invalid_argument);                // ones not in the row space
}

// Combination of reparameterisations.

TEST(Combine, LineContainsBothImages) {
    auto phi = line_phi();
    auto a1 = RationalMap::identity(1), a2 = map("vars: u\n-1/u");
    auto c = combine_reparams(phi, a1, a2);
    EXPECT_EQ(c.alpha.codomain_dim(), 1u);
    EXPECT_EQ(c.alpha.domain_dim(), 3u);
    auto img = tropical_image(compose_maps(phi, c.alpha));
    EXPECT_TRUE(covers(tropical_image(compose_maps(phi, a1)), img).covered);
    EXPECT_TRUE(covers(tropical_image(compose_maps(phi, a2)), img).covered);
}

TEST(Combine, IdenticalReparameterisations) {
    auto phi = line_phi();
    auto id = RationalMap::identity(1);
    auto c = combine_reparams(phi, id, id);
    auto img = tropical_image(compose_maps(phi, c.alpha));
    EXPECT_TRUE(covers(tropical_image(phi), img).covered);
}

TEST(Combine, HomogeneityBookkeeping) {
    auto phi = map("vars: x y\nx^2 + y\nx/(1 + y)");
    auto a1 = map("vars: s\ns\ns^3 - 1"), a2 = map("vars: a b\na*b\n1/(a + b)");
    auto c = combine_reparams(phi, a1, a2);
    for (const auto* at : {&c.alpha1_tilde, &c.alpha2_tilde}) {
        auto comp = compose_maps(c.phi_tilde, *at);
        for (const auto& f : comp.components()) {
            long dn = 0, dd = 0;
            ASSERT_TRUE(detail::is_homogeneous(f.num(), dn));
            ASSERT_TRUE(detail::is_homogeneous(f.den(), dd));
            EXPECT_EQ(dn - dd, c.d * c.e) << f.str();
        }
    }
    EXPECT_TRUE(dehomogenize_map(compose_maps(c.phi_tilde, c.alpha1_tilde)).equals(compose_maps(phi, a1)));
    EXPECT_THROW(combine_reparams(phi, map("vars: s\ns"), a2), std::invalid_argument);
}

// Projections.

TEST(Projection, TwoByTwoDropLast) {
    auto [det, names] = detail::generic_determinant(2);
    auto spec = projection_inverse_linear(det, 3, names);
    EXPECT_EQ(spec.kept, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_TRUE(spec.inverse[3].equals(RationalFunction(poly("vars: a b c\nb*c"), poly("vars: a b c\na"))));
    std::mt19937_64 rng(2);
    EXPECT_NO_THROW(verify_projection_spec(spec, det, rng));
}

TEST(Projection, HankelDropFirst) {
    auto [h, names] = hankel_determinant();
    auto spec = projection_inverse_linear(h, 0, names);
    auto expected = RationalFunction(poly("vars: z1 z2 z3 z4\n2*z1*z2*z3 - z1^2*z4 - z2^3"), poly("vars: z1 z2 z3 z4\nz3^2 - z2*z4"));
    EXPECT_TRUE(spec.inverse[0].equals(expected)) << spec.inverse[0].str();
    std::mt19937_64 rng(3);
    EXPECT_NO_THROW(verify_projection_spec(spec, h, rng));
}

TEST(Projection, ThreeByThreeCofactorQuotient) {
    auto [det, names] = detail::generic_determinant(3);
    auto spec = projection_inverse_linear(det, 0, names);
    auto v = [](std::size_t k) { return LaurentPoly::variable(8, k); };
    // kept order: m12 m13 m21 m22 m23 m31 m32 m33
    LaurentPoly minor11 = v(3) * v(7) - v(4) * v(6);
    LaurentPoly rest = -(v(0) * (v(2) * v(7) - v(4) * v(5))) + v(1) * (v(2) * v(6) - v(3) * v(5));
    EXPECT_TRUE(spec.inverse[0].equals(RationalFunction(-rest, minor11)));
    std::mt19937_64 rng(4);
    EXPECT_NO_THROW(verify_projection_spec(spec, det, rng));
}

TEST(Projection, NonlinearVariableIsRejected) {
    EXPECT_THROW(projection_inverse_linear(poly("vars: x y\nx^2 + y"), 0), std::invalid_argument);
    EXPECT_THROW(projection_inverse_linear(poly("vars: x y\nx*y"), 0), std::invalid_argument);
}

TEST(Projection, BrokenInverseIsReported) {
    auto [det, names] = detail::generic_determinant(2);
    auto spec = projection_inverse_linear(det, 3, names);
    spec.inverse = map("vars: a b c\na\nb\nc\nb*c");
    spec.name = "bogus";
    std::mt19937_64 rng(5);
    try {
        verify_projection_spec(spec, det, rng);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    }
}

TEST(HorizontalCover, TwoByTwoSingleSpec) {
    auto [det, names] = detail::generic_determinant(2);
    auto x = trop_hypersurface(det).complex;
    std::vector<ProjectionSpec> specs{projection_inverse_linear(det, 3, names)};
    auto rep = horizontal_cover_report(x, specs);
    EXPECT_TRUE(rep.uncovered.empty());
    EXPECT_TRUE(rep.confirmations_hold);
    EXPECT_TRUE(mutually_cover(rep.inverse_images[0], rep.horizontal_union(x, 0)));
}

TEST(HorizontalCover, HankelLeavesOneCone) {
    auto [h, names] = hankel_determinant();
    auto x = trop_hypersurface(h).complex;
    std::vector<ProjectionSpec> specs{projection_inverse_linear(h, 0, names), projection_inverse_linear(h, 4, names)};
    auto rep = horizontal_cover_report(x, specs);
    ASSERT_EQ(rep.uncovered.size(), 1u);
    EXPECT_TRUE(rep.confirmations_hold);
    // the uncovered cone is where z1 z2 z3 and z2^3 tie: xi1 + xi3 = 2 xi2
    const auto& cell = x.cells[rep.uncovered[0]];
    auto p = relative_interior_point(cell);
    EXPECT_EQ(p[1] + p[3], Rational(2) * p[2]);
}

TEST(HorizontalCover, NoSpecsCoverNothing) {
    auto x = trop_hypersurface(line_equation()).complex;
    auto rep = horizontal_cover_report(x, {});
    EXPECT_EQ(rep.uncovered.size(), x.size());
}

// Local linearity.

TEST(LocalLinearity, LinePositiveWeight) {
    auto cert = local_linearity_check(line_phi(), RationalMap::identity(1), {Rational(1)});
    EXPECT_TRUE(cert.valid);
    EXPECT_EQ(cert.differential, (QMatrix{{Rational(1)}, {Rational(0)}}));
    EXPECT_EQ(cert.rank, 1u);
    EXPECT_EQ(cert.image_point, q({1, 0}));
}

TEST(LocalLinearity, LineNegativeWeight) {
    auto cert = local_linearity_check(line_phi(), RationalMap::identity(1), {Rational(-2)});
    EXPECT_TRUE(cert.valid);
    EXPECT_EQ(cert.differential, (QMatrix{{Rational(1)}, {Rational(1)}}));
    EXPECT_EQ(cert.image_point, q({-2, -2}));
}

TEST(LocalLinearity, PersistentTieInvalidates) {
    // x + y ties at the origin and along the single direction (1, 1)
    auto cert = local_linearity_check(map("vars: x y\nx + y\nx*y"), RationalMap::identity(2), {Rational(0), Rational(0)},
                                      {{Rational(1), Rational(1)}});
    EXPECT_FALSE(cert.valid);
    EXPECT_FALSE(cert.ties.empty());
}

TEST(LocalLinearity, RankDeficiencyInvalidates) {
    auto cert = local_linearity_check(map("vars: x y\nx*y\nx^2*y^2"), RationalMap::identity(2), {Rational(1), Rational(1)});
    EXPECT_TRUE(cert.unique);
    EXPECT_EQ(cert.rank, 1u);
    EXPECT_FALSE(cert.valid);
}

TEST(LocalLinearity, AffineMapMatchesDirectEvaluation) {
    const std::vector<std::pair<RationalMap, RationalMap>> cases{
        {line_phi(), RationalMap::identity(1)},
        {line_phi(), map("vars: s u\n(1 + s)/(u - s)")},
        {hankel_phi(), hankel_psi()},
        {hankel_phi(), compose_maps(hankel_psi(), hankel_iota())}};
    std::mt19937_64 rng(9);
    for (const auto& [phi, alpha] : cases) {
        auto comp = tropicalize_map(compose_maps(phi, alpha));
        for (int s = 0; s < 5; ++s) {
            auto sigma = random_qpoint(rng, alpha.domain_dim(), 5);
            auto cert = local_linearity_check(phi, alpha, sigma);
            if (!cert.unique) continue;
            auto aff = cert.affine_map();
            for (long k : {1000L, 2000L, 3000L, 4000L, 5000L}) {
                auto w = perturbed_weight(cert, Rational(1, k));
                EXPECT_EQ(aff.apply(w), trop_eval_map(comp, w)) << phi.str() << " o " << alpha.str();
            }
        }
    }
}

// Puiseux roots.

TEST(PuiseuxRoots, SquareRootOfT) {
    auto r = puiseux_roots(upoly("vars: S\nS^2 - t"), 3);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].series, series("-t^(1/2)"));
    EXPECT_EQ(r[1].series, series("t^(1/2)"));
    EXPECT_TRUE(r[0].exact && r[1].exact);
}

TEST(PuiseuxRoots, CatalanExpansion) {
    // roots of S^2 + S + t: -sum C_k t^(k+1) and -1 + sum C_k t^(k+1)
    const std::size_t k = 4;
    auto r = puiseux_roots(upoly("vars: S\nS^2 + S + t"), k);
    ASSERT_EQ(r.size(), 2u);
    PuiseuxPoly small, big = PuiseuxPoly::monomial(GaussianRational(Rational(-1)), Rational(0));
    for (std::size_t j = 0; j < k; ++j)
        small += PuiseuxPoly::monomial(GaussianRational(Rational(-catalan(static_cast<long>(j)))), Rational(static_cast<long>(j) + 1));
    for (std::size_t j = 0; j + 1 < k; ++j)
        big += PuiseuxPoly::monomial(GaussianRational(Rational(catalan(static_cast<long>(j)))), Rational(static_cast<long>(j) + 1));
    std::set<PuiseuxPoly> got{r[0].series, r[1].series};
    EXPECT_EQ(got, (std::set<PuiseuxPoly>{small, big}));
    auto two = puiseux_roots(upoly("vars: S\nS^2 + S + t"), 2);
    EXPECT_EQ((std::set<PuiseuxPoly>{two[0].series, two[1].series}), (std::set<PuiseuxPoly>{series("-t - t^2"), series("-1 + t")}));
}

TEST(PuiseuxRoots, BinomialSeries) {
    const std::size_t k = 5;
    auto r = puiseux_roots(upoly("vars: S\nS^2 - 1 - t"), k);
    ASSERT_EQ(r.size(), 2u);
    PuiseuxPoly root;
    for (std::size_t j = 0; j < k; ++j) root += PuiseuxPoly::monomial(GaussianRational(half_binomial(static_cast<long>(j))), Rational(static_cast<long>(j)));
    EXPECT_EQ((std::set<PuiseuxPoly>{r[0].series, r[1].series}), (std::set<PuiseuxPoly>{root, -root}));
    auto three = puiseux_roots(upoly("vars: S\nS^2 - 1 - t"), 3);
    EXPECT_EQ((std::set<PuiseuxPoly>{three[0].series, three[1].series}),
              (std::set<PuiseuxPoly>{series("1 + 1/2*t - 1/8*t^2"), series("-1 - 1/2*t + 1/8*t^2")}));
}

TEST(PuiseuxRoots, GaussianLeadingCoefficient) {
    auto r = puiseux_roots(upoly("vars: S\nS^2 + t^2"), 2);
    EXPECT_EQ((std::set<PuiseuxPoly>{r[0].series, r[1].series}), (std::set<PuiseuxPoly>{series("i*t"), series("-i*t")}));
}

TEST(PuiseuxRoots, ResidualsImproveAndProductMatches) {
    for (const std::string text : {"vars: S\nS^2 - t", "vars: S\nS^2 + S + t", "vars: S\nS^2 - 1 - t",
                                   "vars: S\nS^3 - t*S + t^3", "vars: S\nS^2 - 2*t^(1/3)*S + t"}) {
        auto p = upoly(text);
        std::vector<std::vector<Valuation>> by_k;
        for (std::size_t k = 1; k <= 4; ++k) by_k.push_back(residual_valuations(p, puiseux_roots(p, k)));
        for (std::size_t i = 0; i < by_k[0].size(); ++i)
            for (std::size_t k = 1; k < by_k.size(); ++k) {
                if (by_k[k - 1][i].is_infinite()) continue;
                EXPECT_LT(by_k[k - 1][i], by_k[k][i]) << text << " root " << i << " k " << k;
            }
        // product of the roots against (-1)^d a_0 / a_d, with a_d = 1
        auto roots = puiseux_roots(p, 4);
        PuiseuxPoly prod = PuiseuxPoly::monomial(GaussianRational(Rational(1)), Rational(0));
        for (const auto& rt : roots) prod = prod * rt.series;
        PuiseuxPoly target = (p.size() - 1) % 2 ? -p[0] : p[0];
        EXPECT_GT((ValuedScalar(prod) - ValuedScalar(target)).valuation(), ValuedScalar(target).valuation()) << text;
    }
}

TEST(PuiseuxRoots, Errors) {
    EXPECT_THROW(puiseux_roots(upoly("vars: S\n(1 + t)*S^2 - t"), 2), std::domain_error);
    EXPECT_THROW(puiseux_roots(upoly("vars: S\nS^2 - t"), 0), std::invalid_argument);
    EXPECT_THROW(puiseux_roots(upoly("vars: S\nS^2 - 2"), 2), RootError);
}

// Dominance screen.

TEST(JacobianRank, KnownDimensions) {
    std::mt19937_64 rng(7);
    EXPECT_EQ(jacobian_rank(line_phi(), rng), 1u);
    EXPECT_EQ(jacobian_rank(line_psi(), rng), 1u);
    EXPECT_EQ(jacobian_rank(grassmannian2_param(4), rng), 5u);
    EXPECT_EQ(jacobian_rank(hankel_phi(), rng), 4u);
    EXPECT_EQ(jacobian_rank(hankel_phi_literal(), rng), 4u);
}

// Properties.

class ConstructionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ConstructionProperties, PushforwardSoundness) {
    std::mt19937_64 rng(GetParam());
    std::uniform_int_distribution<long> e(-2, 2);
    auto phi = map("vars: a b\na + t*b + 1\n(a - b)/(1 + a*b)\na*b^2 - t^(-1)");
    MonomialMap pi(2, ExponentVec(3));
    for (auto& r : pi)
        for (auto& x : r) x = e(rng);
    TorusPoint u{random_scalar(rng) * sv("t^(1/2)"), random_scalar(rng) * sv("t^(-3)")};
    auto push = tropicalize_map(toric_pushforward(phi, pi, u));
    auto base = tropicalize_map(phi);
    auto vu = valuations(u);
    auto m = to_qmatrix(pi);
    for (int s = 0; s < 20; ++s) {
        auto xi = random_qpoint(rng, 2);
        auto y = trop_eval_map(base, xi);
        QPoint expected = vu;
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t j = 0; j < 3; ++j) expected[k] += m[k][j] * y[j];
        EXPECT_EQ(trop_eval_map(push, xi), expected);
    }
}

TEST_P(ConstructionProperties, YuYusterMatchesCircuitMembership) {
    std::mt19937_64 rng(GetParam() + 40);
    std::uniform_int_distribution<long> c(-3, 3);
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    const std::size_t n = 4, k = dim(rng);
    QMatrix basis(k, QVector(n));
    for (;;) {
        for (auto& r : basis)
            for (auto& x : r) x = Rational(c(rng));
        bool zero_col = false;
        for (std::size_t j = 0; j < n; ++j) {
            bool z = true;
            for (const auto& r : basis) z = z && r[j].is_zero();
            zero_col = zero_col || z;
        }
        if (rank(basis) == k && !zero_col) break;
    }
    auto eqs = equations_of_span(basis, n);
    auto yy = yu_yuster_param(basis, n);
    auto img = tropical_image(yy);
    auto t = tropicalize_map(yy);
    for (int s = 0; s < 20; ++s) EXPECT_TRUE(in_trop_linear_space(eqs, trop_eval_map(t, random_qpoint(rng, yy.domain_dim()))));
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long d = -2; d <= 2; ++d) {
                QPoint x{Rational(0), Rational(a), Rational(b), Rational(d)};
                EXPECT_EQ(membership(x, img), in_trop_linear_space(eqs, x)) << to_string(x);
            }
}

TEST_P(ConstructionProperties, ProjectionSectionIsTheIdentity) {
    std::mt19937_64 rng(GetParam() + 80);
    auto [h, names] = hankel_determinant();
    for (std::size_t i : {0u, 4u}) {
        auto spec = projection_inverse_linear(h, i, names);
        auto t = tropicalize_map(spec.inverse);
        auto x = trop_hypersurface(h).complex;
        for (int s = 0; s < 10; ++s) {
            auto eta = random_qpoint(rng, 4);
            auto xi = trop_eval_map(t, eta);
            EXPECT_EQ(spec.projection().apply(xi), eta);
            EXPECT_TRUE(membership(xi, x));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ConstructionProperties, ::testing::Range(0, 5));
