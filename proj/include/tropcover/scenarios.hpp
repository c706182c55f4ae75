#pragma once

/**
 * @file scenarios.hpp
 * @brief Worked examples as reproducible scenarios. Each scenario builds
 *        its maps and varieties, runs the checks with expected verdicts,
 *        and assembles a schema-versioned report.
 */

#include "tropcover/serialize.hpp"
#include "tropcover/svg.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tropcover {

using ScenarioParams = std::map<std::string, std::string>;

struct Check {
    std::string name;
    bool expected = true;
    bool observed = false;
    std::string detail;

    bool met() const { return expected == observed; }
};

struct Report {
    std::string scenario;
    ScenarioParams params;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::string> discrepancies;
    json data = json::object();
    std::string svg;

    Check& check(std::string name, bool expected, bool observed, std::string detail = {}) {
        checks.push_back({std::move(name), expected, observed, std::move(detail)});
        return checks.back();
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.met(); });
    }

    json to_json() const {
        json cs = json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"met", c.met()},
                          {"detail", c.detail}});
        return {{"schema", kSchema},
                {"scenario", scenario},
                {"params", params},
                {"seed", seed},
                {"verdict", ok() ? "ok" : "mismatch"},
                {"checks", std::move(cs)},
                {"discrepancies", discrepancies},
                {"data", data}};
    }
};

struct UnknownScenario : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline long param_long(const ScenarioParams& p, const std::string& key, long def) {
    auto it = p.find(key);
    if (it == p.end()) return def;
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter " + key + " must be an integer, got '" + it->second + "'");
    }
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline QPoint random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 3);
    QPoint x;
    for (std::size_t k = 0; k < n; ++k) x.push_back(Rational(num(rng), den(rng)));
    return x;
}

inline bool in_corner_locus(const TropPoly& f, const QPoint& x) { return f.eval(x).minimizers.size() >= 2; }

/// Samples Trop(phi) at random points and tests membership in Trop(X).
inline Check containment_check(const std::string& label, const RationalMap& phi,
                               const std::function<bool(const QPoint&)>& in_x, std::mt19937_64& rng,
                               int samples = 50) {
    auto trop = tropicalize_map(phi);
    int failures = 0;
    std::string first;
    for (int s = 0; s < samples; ++s) {
        QPoint xi = random_point(rng, phi.domain_dim());
        QPoint y = trop_eval_map(trop, xi);
        if (!in_x(y)) {
            if (failures++ == 0) first = "Trop(" + label + ")" + to_string(xi) + " = " + to_string(y) + " is outside Trop(X)";
        }
    }
    return {"fundamental containment: " + label, true, failures == 0,
            std::to_string(samples - failures) + "/" + std::to_string(samples) + " sampled images in Trop(X)" +
                (first.empty() ? "" : "; " + first)};
}

/// {0} x P + R(1, ..., 1) for every cell P.
inline PolyhedralComplex homogenised_cylinder(const PolyhedralComplex& c) {
    const std::size_t n = c.ambient_dim + 1;
    PolyhedralComplex out(n);
    QMatrix ones{QVector(n, Rational(1))};
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        Polyhedron p(n);
        QVector e0(n, Rational(0));
        e0[0] = 1;
        p.add(LinConstraint::eq(e0, Rational(0)));
        for (const auto& con : c.cells[i].constraints()) {
            QVector nn{Rational(0)};
            nn.insert(nn.end(), con.normal.begin(), con.normal.end());
            p.add(con.rel == Relation::le ? LinConstraint::le(nn, con.offset) : LinConstraint::eq(nn, con.offset));
        }
        out.add(add_lineality(p, ones), c.labels[i]);
    }
    return out;
}

/// Mutual coverage of im Trop(phi~) and the cylinder over im Trop(phi).
inline Check homogenisation_check(const std::string& label, const RationalMap& phi, json* data = nullptr) {
    const long d = minimal_homogenization_degree(phi);
    auto tilde = homogenize_map(phi, d);
    auto img = tropical_image(tilde);
    auto cyl = homogenised_cylinder(tropical_image(phi));
    auto ab = covers(img, cyl), ba = covers(cyl, img);
    if (data) (*data)["homogenisation"][label] = {{"degree", d}, {"map", tilde.str()}, {"image_cells", img.size()}};
    return {"homogenisation law: " + label, true, ab.covered && ba.covered,
            "d = " + std::to_string(d) + ", im Trop(phi~) has " + std::to_string(img.size()) +
                " cells; image in cylinder: " + bool_str(ab.covered) + ", cylinder in image: " + bool_str(ba.covered)};
}

inline bool is_homogeneous(const LaurentPoly& p, long& deg) {
    if (p.is_zero()) return false;
    deg = total_degree(p.terms().begin()->first);
    for (const auto& [a, c] : p.terms())
        if (total_degree(a) != deg) return false;
    return true;
}

/// Affine map as a tuple of linear forms in the given variable names.
inline std::string affine_label(const AffineMapQ& a, const std::vector<std::string>& names) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.matrix.size(); ++i) {
        std::string t;
        for (std::size_t j = 0; j < a.source_dim; ++j) {
            const Rational& c = a.matrix[i][j];
            if (c.is_zero()) continue;
            std::string nm = j < names.size() ? names[j] : "x" + std::to_string(j);
            if (!t.empty()) t += c.sign() < 0 ? "-" : "+";
            else if (c.sign() < 0) t += "-";
            Rational m = abs(c);
            t += (m == Rational(1) ? "" : m.str()) + nm;
        }
        if (!a.offset[i].is_zero()) t += (t.empty() || a.offset[i].sign() < 0 ? "" : "+") + a.offset[i].str();
        s += (i ? "," : "") + (t.empty() ? std::string("0") : t);
    }
    return s + ")";
}

inline PolyhedralComplex domain_complex(const PLMap& m, const std::vector<std::string>& names) {
    PolyhedralComplex out(m.domain_dim);
    for (const auto& c : m.cells) out.add(c.domain, affine_label(c.map, names));
    return out;
}

/// Leibniz determinant of a square matrix of polynomials.
inline LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    LaurentPoly out(m.at(0).at(0).num_vars());
    do {
        long inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        LaurentPoly t = LaurentPoly::constant(out.num_vars(), ValuedScalar(inversions % 2 ? -1 : 1));
        for (std::size_t i = 0; i < n; ++i) t *= m[i][perm[i]];
        out += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Generic n x n determinant in variables m11, m12, ... (row-major).
inline std::pair<LaurentPoly, std::vector<std::string>> generic_determinant(std::size_t n) {
    std::vector<std::vector<LaurentPoly>> m(n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m[i].push_back(LaurentPoly::variable(n * n, i * n + j));
            names.push_back("m" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    return {determinant(m), names};
}

/// Polynomial components of a map, which must have trivial denominators.
inline std::vector<LaurentPoly> polynomial_components(const RationalMap& phi) {
    std::vector<LaurentPoly> out;
    for (const auto& c : phi.components()) {
        if (!c.is_polynomial()) throw std::logic_error("expected polynomial components");
        out.push_back(c.num());
    }
    return out;
}

inline PolyhedralComplex union_of(const std::vector<PolyhedralComplex>& cs, std::size_t n) {
    PolyhedralComplex out(n);
    for (const auto& c : cs)
        for (std::size_t i = 0; i < c.cells.size(); ++i) out.add(c.cells[i], c.labels[i]);
    return out;
}

/// Trop(pi) o Trop(inverse) = id at sampled points.
inline Check section_identity_check(const ProjectionSpec& spec, std::mt19937_64& rng, int samples = 20) {
    auto trop = tropicalize_map(spec.inverse);
    auto proj = spec.projection();
    int bad = 0;
    std::string first;
    for (int s = 0; s < samples; ++s) {
        QPoint eta = random_point(rng, spec.kept.size());
        QPoint back = proj.apply(trop_eval_map(trop, eta));
        if (back != eta && bad++ == 0) first = "; first failure at " + to_string(eta);
    }
    return {"Trop(pi) o Trop(inverse) = id: " + spec.name, true, bad == 0,
            std::to_string(samples - bad) + "/" + std::to_string(samples) + " sampled points" + first};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The line and the tripod
// ---------------------------------------------------------------------------

inline RationalMap line_phi() {
    auto m = parse_map_text("vars: t\nt\nt + 1");
    m.set_name("phi");
    return m;
}

inline RationalMap line_psi() {
    auto m = parse_map_text("vars: s u\n(1 + s)/(u - s)\n(1 + u)/(u - s)");
    m.set_name("psi");
    return m;
}

inline LaurentPoly line_equation() { return parse_poly_text("vars: x y\nx - y + 1").first; }

inline Report run_line(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "line";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);

    auto f = line_equation();
    auto tf = tropicalize_poly(f);
    auto tripod = trop_hypersurface(tf);
    bool rays = tripod.complex.size() == 3;
    for (const auto& c : tripod.complex.cells) rays = rays && dimension(c) == 1;
    r.check("tripod has three maximal rays", true, rays, std::to_string(tripod.complex.size()) + " maximal cells");

    auto phi = line_phi(), psi = line_psi();
    auto lphi = linearity_complex(phi), lpsi = linearity_complex(psi);
    auto iphi = pl_image(lphi), ipsi = pl_image(lpsi);
    auto cphi = covers(tripod.complex, iphi);
    auto cpsi = covers(tripod.complex, ipsi);
    std::string wdesc = cphi.witnesses.empty() ? "none" : to_string(cphi.witnesses.front());
    r.check("im Trop(phi) covers the tripod", false, cphi.covered, "witness " + wdesc);
    bool north = !cphi.witnesses.empty() && cphi.witnesses.front()[0].is_zero() && cphi.witnesses.front()[1].sign() > 0;
    r.check("uncovered witness lies on the north arm", true, north, wdesc);
    r.check("im Trop(psi) covers the tripod", true, cpsi.covered,
            std::to_string(lpsi.cells.size()) + " linearity cells, " + std::to_string(ipsi.size()) + " image cells");
    r.check("im Trop(psi) lies in the tripod", true, covers(ipsi, tripod.complex).covered);

    auto in_x = [&](const QPoint& x) { return detail::in_corner_locus(tf, x); };
    r.checks.push_back(detail::containment_check("phi", phi, in_x, rng));
    r.checks.push_back(detail::containment_check("psi", psi, in_x, rng));
    r.checks.push_back(detail::homogenisation_check("phi", phi, &r.data));
    r.checks.push_back(detail::homogenisation_check("psi", psi, &r.data));

    r.data["tripod"] = to_json(tripod);
    r.data["phi"] = {{"map", to_json(phi)}, {"linearity", to_json(lphi)}, {"image", to_json(iphi)}, {"coverage", to_json(cphi)}};
    r.data["psi"] = {{"map", to_json(psi)}, {"linearity", to_json(lpsi)}, {"image", to_json(ipsi)}, {"coverage", to_json(cpsi)}};

    SvgPanel dom{"Trop(psi) on its linearity domains", {}, Rational(4)};
    SvgLayer dl;
    dl.complex = detail::domain_complex(lpsi, {"s", "u"});
    dl.fills = {"#f5b041", "#85c1e9", "#82e0aa", "#d7bde2", "#f1948a", "#f9e79f"};
    dom.layers.push_back(dl);
    SvgPanel img{"tripod (grey) and im Trop(phi) (red)", {}, Rational(4)};
    SvgLayer tl;
    tl.complex = tripod.complex;
    tl.show_labels = false;
    tl.stroke_width = 6;
    tl.stroke = "#bbbbbb";
    SvgLayer il;
    il.complex = iphi;
    il.stroke = "#c0392b";
    il.show_labels = false;
    img.layers = {tl, il};
    r.svg = render_svg(std::vector<SvgPanel>{dom, img});
    return r;
}

// ---------------------------------------------------------------------------
// Combination of reparameterisations on the line
// ---------------------------------------------------------------------------

namespace detail {

/// alpha(x) = c x^a + b: T^p -> T^1 with random data.
inline RationalMap random_monomial_plus_affine(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dim(1, 2), ex(-2, 2), co(-5, 5), val(-1, 1);
    const std::size_t p = static_cast<std::size_t>(dim(rng));
    ExponentVec a(p, 0);
    while (std::all_of(a.begin(), a.end(), [](long e) { return e == 0; }))
        for (auto& e : a) e = ex(rng);
    auto nonzero = [&]() {
        long v = 0;
        while (v == 0) v = co(rng);
        return v;
    };
    ValuedScalar c = ValuedScalar(nonzero()) * ValuedScalar::t_power(Rational(val(rng)));
    ValuedScalar b = ValuedScalar(nonzero()) * ValuedScalar::t_power(Rational(val(rng)));
    LaurentPoly f = LaurentPoly::monomial(a, c) + LaurentPoly::constant(p, b);
    auto m = RationalMap::from_polys(p, {f});
    std::vector<std::string> names;
    for (std::size_t k = 0; k < p; ++k) names.push_back("s" + std::to_string(k + 1));
    m.set_variable_names(names);
    return m;
}

struct CombinationOutcome {
    bool first = false, second = false, bookkeeping = false;
    std::size_t cells = 0;
    json data;
};

inline CombinationOutcome combination_outcome(const RationalMap& phi, const RationalMap& a1, const RationalMap& a2) {
    CombinationOutcome o;
    auto comb = combine_reparams(phi, a1, a2);
    auto full = compose_maps(phi, comb.alpha);
    auto lin = linearity_complex(full);
    auto img = pl_image(lin);
    o.cells = lin.cells.size();
    auto i1 = tropical_image(compose_maps(phi, a1));
    auto i2 = tropical_image(compose_maps(phi, a2));
    o.first = covers(i1, img).covered;
    o.second = covers(i2, img).covered;
    o.bookkeeping = true;
    for (const auto* at : {&comb.alpha1_tilde, &comb.alpha2_tilde}) {
        auto tilde = compose_maps(comb.phi_tilde, *at);
        for (const auto& c : tilde.components()) {
            long dn = 0, dd = 0;
            if (!is_homogeneous(c.num(), dn) || !is_homogeneous(c.den(), dd) || dn - dd != comb.d * comb.e)
                o.bookkeeping = false;
        }
        auto back = dehomogenize_map(tilde);
        auto direct = compose_maps(phi, at == &comb.alpha1_tilde ? a1 : a2);
        for (std::size_t i = 0; i < back.codomain_dim(); ++i)
            if (!back[i].equals(direct[i])) o.bookkeeping = false;
    }
    o.data = {{"alpha1", a1.str()}, {"alpha2", a2.str()}, {"d", comb.d}, {"e", comb.e},
              {"alpha", comb.alpha.str()}, {"linearity_cells", o.cells}, {"image", to_json(img)}};
    return o;
}

}  // namespace detail

inline Report run_combination(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "combination";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long pairs = detail::param_long(params, "pairs", 5);
    auto phi = line_phi();
    auto tf = tropicalize_poly(line_equation());
    auto in_x = [&](const QPoint& x) { return detail::in_corner_locus(tf, x); };
    r.data["pairs"] = json::array();
    for (long k = 0; k < pairs; ++k) {
        auto a1 = detail::random_monomial_plus_affine(rng);
        auto a2 = detail::random_monomial_plus_affine(rng);
        auto o = detail::combination_outcome(phi, a1, a2);
        std::string tag = "pair " + std::to_string(k + 1);
        std::string desc = "alpha1 = " + a1.str() + ", alpha2 = " + a2.str();
        r.check(tag + ": im Trop(phi o alpha) contains im Trop(phi o alpha1)", true, o.first, desc);
        r.check(tag + ": im Trop(phi o alpha) contains im Trop(phi o alpha2)", true, o.second, desc);
        r.check(tag + ": phi~ o alpha~_i is a degree-de homogenisation of phi o alpha_i", true, o.bookkeeping);
        auto comb = combine_reparams(phi, a1, a2);
        r.checks.push_back(detail::containment_check("phi o alpha (" + tag + ")", compose_maps(phi, comb.alpha), in_x, rng));
        r.data["pairs"].push_back(o.data);
    }
    auto id = parse_map_text("vars: t\nt");
    auto o = detail::combination_outcome(phi, id, id);
    r.check("alpha1 = alpha2 = id: both containments", true, o.first && o.second);
    return r;
}

// ---------------------------------------------------------------------------
// Singular matrices
// ---------------------------------------------------------------------------

inline Report run_singular(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "singular";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long n = detail::param_long(params, "n", 2);
    if (n < 2 || n > 3) throw std::invalid_argument("singular: n must be 2 or 3");
    const std::size_t nn = static_cast<std::size_t>(n * n);
    auto [det, names] = detail::generic_determinant(static_cast<std::size_t>(n));
    auto tdet = tropicalize_poly(det);
    auto x = trop_hypersurface(tdet);

    std::vector<ProjectionSpec> specs;
    if (n == 2) {
        specs.push_back(projection_inverse_linear(det, 3, names));
    } else {
        for (std::size_t i = 0; i < nn; ++i) specs.push_back(projection_inverse_linear(det, i, names));
    }
    for (const auto& s : specs) verify_projection_spec(s, det, rng);
    auto rep = horizontal_cover_report(x.complex, specs);
    r.check("every maximal cell is horizontal for some projection", true, rep.uncovered.empty(),
            std::to_string(x.complex.size()) + " maximal cells, " + std::to_string(specs.size()) + " projections, " +
                std::to_string(rep.uncovered.size()) + " cells horizontal for none");
    r.check("covers() confirms every horizontal (cell, projection) pair", true, rep.confirmations_hold);

    auto in_x = [&](const QPoint& p) { return detail::in_corner_locus(tdet, p); };
    if (n == 2) {
        auto cov = covers(x.complex, rep.inverse_images[0]);
        r.check("the single projection covers Trop(det)", true, cov.covered);
        r.checks.push_back(detail::section_identity_check(specs[0], rng));
        auto hu = rep.horizontal_union(x.complex, 0);
        r.check("im Trop(inverse) and the horizontal cells cover each other: " + specs[0].name, true,
                mutually_cover(rep.inverse_images[0], hu));
    }
    for (const auto& s : specs) r.checks.push_back(detail::containment_check(s.name, s.inverse, in_x, rng));

    r.data["determinant"] = det.str(names);
    r.data["hypersurface"] = to_json(x);
    r.data["projections"] = json::array();
    for (const auto& s : specs) r.data["projections"].push_back(to_json(s));
    r.data["horizontality"] = to_json(rep);
    return r;
}

// ---------------------------------------------------------------------------
// Hankel determinant
// ---------------------------------------------------------------------------

inline std::pair<LaurentPoly, std::vector<std::string>> hankel_determinant() {
    return parse_poly_text("vars: z0 z1 z2 z3 z4\nz0*z2*z4 + 2*z1*z2*z3 - z1^2*z4 - z0*z3^2 - z2^3");
}

/// The rank-2 parameterisation with first component u0 + u1.
inline RationalMap hankel_phi() {
    auto m = parse_map_text(
        "vars: u0 u1 v0 v1\nu0 + u1\nu0*v0 + u1*v1\nu0*v0^2 + u1*v1^2\nu0*v0^3 + u1*v1^3\nu0*v0^4 + u1*v1^4");
    m.set_name("phi");
    return m;
}

/// As printed, with first component u0 + v1.
inline RationalMap hankel_phi_literal() {
    auto m = parse_map_text(
        "vars: u0 u1 v0 v1\nu0 + v1\nu0*v0 + u1*v1\nu0*v0^2 + u1*v1^2\nu0*v0^3 + u1*v1^3\nu0*v0^4 + u1*v1^4");
    m.set_name("phi_literal");
    return m;
}

inline RationalMap hankel_psi() {
    auto m = parse_map_text("vars: x0 x1 x2\n1 + x0\n-1\ni*x1\n-x1*(1 + x2*x1^(-4))");
    m.set_name("psi");
    return m;
}

inline RationalMap hankel_iota() {
    auto m = parse_map_text("vars: x0 x1 x2\n1/x0\n1/x1\n1/x2");
    m.set_name("iota");
    return m;
}

namespace detail {

inline const char* hankel_letter(const ExponentVec& a) {
    static const std::vector<std::pair<ExponentVec, const char*>> names{
        {{1, 0, 1, 0, 1}, "a"}, {{0, 1, 1, 1, 0}, "b"}, {{0, 2, 0, 0, 1}, "c"}, {{1, 0, 0, 2, 0}, "d"}, {{0, 0, 3, 0, 0}, "e"}};
    for (const auto& [e, n] : names)
        if (e == a) return n;
    return "?";
}

inline Polyhedron cone3(const std::vector<std::pair<QVector, bool>>& halfspaces) {
    Polyhedron p(3);
    for (const auto& [n, ge] : halfspaces) p.add(ge ? LinConstraint::ge(n, Rational(0)) : LinConstraint::le(n, Rational(0)));
    return p;
}

}  // namespace detail

inline Report run_hankel(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "hankel";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const bool combine = detail::param_long(params, "combine", 1) != 0;

    auto [h, names] = hankel_determinant();
    auto th = tropicalize_poly(h);
    auto phi = hankel_phi(), phil = hankel_phi_literal();
    auto psi = hankel_psi(), iota = hankel_iota();
    auto in_x = [&](const QPoint& p) { return detail::in_corner_locus(th, p); };

    // the parameterisation
    bool phi_ok = substitute(h, phi).is_zero();
    bool phil_ok = substitute(h, phil).is_zero();
    r.check("det o phi = 0 with first component u0 + u1", true, phi_ok);
    r.check("det o phi = 0 with first component u0 + v1 (as printed)", false, phil_ok);
    if (!phil_ok)
        r.discrepancies.push_back(
            "first component of phi: u0 + v1 does not map into X; computing with u0 + u1, which does");
    r.check("phi is dominant onto the hypersurface (Jacobian rank 4)", true, jacobian_rank(phi, rng) == 4);

    // the tropical hypersurface
    auto x = trop_hypersurface(th);
    QMatrix lineality{QVector(5, Rational(1)), QVector{0, 1, 2, 3, 4}};
    auto lin = th.lineality_space();
    bool lin_ok = lin.size() == 2 && rank(lin) == 2;
    {
        QMatrix both = lin;
        both.insert(both.end(), lineality.begin(), lineality.end());
        lin_ok = lin_ok && rank(both) == 2;
    }
    r.check("lineality space is spanned by (1,1,1,1,1) and (0,1,2,3,4)", true, lin_ok);
    QMatrix newton;
    for (const auto& a : th.vertex_terms()) {
        QVector row;
        for (std::size_t k = 0; k < a.size(); ++k) row.push_back(Rational(a[k] - th.vertex_terms().front()[k]));
        newton.push_back(row);
    }
    r.check("the Newton polytope has 5 vertices and is three-dimensional", true,
            th.vertex_terms().size() == 5 && rank(newton) == 3);
    bool cells_ok = true;
    for (const auto& c : x.complex.cells) cells_ok = cells_ok && dimension(c) == 4 && same_set(add_lineality(c, lineality), c);
    r.check("maximal cones are dual to Newton polytope edges and contain the lineality space", true, cells_ok,
            std::to_string(x.complex.size()) + " maximal cones");

    // birational projections
    auto spec_i = projection_inverse_linear(h, 0, names);
    auto spec_j = projection_inverse_linear(h, 4, names);
    spec_i.name = "pi_I (drop z0)";
    spec_j.name = "pi_J (drop z4)";
    std::vector<ProjectionSpec> specs{spec_i, spec_j};
    for (const auto& s : specs) verify_projection_spec(s, h, rng);
    auto rep = horizontal_cover_report(x.complex, specs);
    bool rule = true;
    std::string uncovered_label;
    for (std::size_t c = 0; c < x.complex.size(); ++c) {
        const auto& [a, b] = x.pair_labels[c];
        bool hi = std::find(rep.cells[c].horizontal_for.begin(), rep.cells[c].horizontal_for.end(), 0) != rep.cells[c].horizontal_for.end();
        bool hj = std::find(rep.cells[c].horizontal_for.begin(), rep.cells[c].horizontal_for.end(), 1) != rep.cells[c].horizontal_for.end();
        rule = rule && hi == (a[0] != b[0]) && hj == (a[4] != b[4]);
    }
    r.check("horizontality agrees with alpha_0 != beta_0 (pi_I) and alpha_4 != beta_4 (pi_J)", true, rule);
    std::size_t p_index = x.complex.size();
    if (rep.uncovered.size() == 1) {
        p_index = rep.uncovered.front();
        const auto& [a, b] = x.pair_labels[p_index];
        uncovered_label = std::string(detail::hankel_letter(a)) + detail::hankel_letter(b);
        std::sort(uncovered_label.begin(), uncovered_label.end());
    }
    r.check("exactly one cone is horizontal for neither projection, the one dual to {b, e}", true,
            rep.uncovered.size() == 1 && uncovered_label == "be",
            std::to_string(rep.uncovered.size()) + " uncovered; edge " + uncovered_label);
    r.check("covers() confirms every horizontal (cell, projection) pair", true, rep.confirmations_hold);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        r.checks.push_back(detail::section_identity_check(specs[s], rng));
        r.check("im Trop(inverse) and the horizontal cells cover each other: " + specs[s].name, true,
                mutually_cover(rep.inverse_images[s], rep.horizontal_union(x.complex, s)));
    }

    // local linearity certificates for the remaining cone
    auto c1 = local_linearity_check(phi, psi, {Rational(2), Rational(0), Rational(1)});
    auto psi_iota = compose_maps(psi, iota);
    auto c2 = local_linearity_check(phi, psi_iota, {Rational(-2), Rational(0), Rational(-1)});
    r.check("certificate for phi o psi is valid with rank 3", true, c1.valid && c1.rank == 3);
    r.check("certificate for phi o psi o iota is valid with rank 3", true, c2.valid && c2.rank == 3);
    const std::vector<std::string> xi{"xi0", "xi1", "xi2"};
    std::string map1 = detail::affine_label(c1.affine_map(), xi), map2 = detail::affine_label(c2.affine_map(), xi);
    QMatrix printed{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {0, 3, 0}, {0, 0, 1}};
    if (c1.differential != printed)
        r.discrepancies.push_back("linear map of Trop(phi o psi) on its cone: computed " + map1 +
                                  ", printed (xi0,xi1,2xi2,3xi1,xi2)");
    // the cones as stated, with 4 xi1 in the last inequality of the second
    auto stated1 = detail::cone3({{{1, 0, 0}, true}, {{0, -4, 1}, true}, {{-1, -4, 1}, false}});
    auto stated2 = detail::cone3({{{1, 0, 0}, false}, {{0, -4, 1}, false}, {{-1, -4, 1}, true}});
    auto printed2 = detail::cone3({{{1, 0, 0}, false}, {{0, -4, 1}, false}, {{-1, -1, 1}, true}});
    r.check("certified region of phi o psi equals the stated cone", true, same_set(c1.region, stated1), c1.region.str());
    r.check("certified region of phi o psi o iota equals the stated cone with xi0 + 4 xi1", true,
            same_set(c2.region, stated2), c2.region.str());
    if (!same_set(c2.region, printed2))
        r.discrepancies.push_back("cone of Trop(phi o psi o iota): the certified cone has xi2 >= xi0 + 4 xi1, printed xi0 + xi1");
    auto img1 = linear_image(stated1, c1.affine_map());
    auto img2 = linear_image(stated2, c2.affine_map());
    PolyhedralComplex images(5), images_lin(5), pcell(5);
    images.add(img1, "phi o psi");
    images.add(img2, "phi o psi o iota");
    images_lin.add(add_lineality(img1, lineality), "phi o psi");
    images_lin.add(add_lineality(img2, lineality), "phi o psi o iota");
    bool have_p = p_index < x.complex.size();
    if (have_p) pcell.add(x.complex.cells[p_index], x.complex.labels[p_index]);
    r.check("the certified images lie in P", true, have_p && covers(images, pcell).covered);
    int full = 0;
    for (const auto& c : images_lin.cells) full += dimension(c) == 4 ? 1 : 0;
    r.check("the certified images are full-dimensional in P modulo lineality", true, have_p && full == 2);
    CoverageReport pc;
    if (have_p) pc = covers(pcell, images_lin);
    r.check("the certified images cover P modulo lineality", true, have_p && pc.covered,
            pc.witnesses.empty() ? "" : "uncovered point of P: " + to_string(pc.witnesses.front()));
    if (have_p && !pc.covered)
        r.discrepancies.push_back(
            "the two certified images coincide, both equal to {zeta in P : zeta2 <= zeta0 + 4 zeta1} modulo lineality; "
            "points of P with zeta2 > zeta0 + 4 zeta1, such as " + to_string(pc.witnesses.front()) + ", are not reached");

    // combination of the two reparameterisations
    if (combine) {
        auto o = detail::combination_outcome(phi, psi, psi_iota);
        r.check("combined reparameterisation contains im Trop(phi o psi)", true, o.first);
        r.check("combined reparameterisation contains im Trop(phi o psi o iota)", true, o.second);
        r.check("phi~ o alpha~_i is a degree-de homogenisation of phi o alpha_i", true, o.bookkeeping);
        r.data["combination"] = {{"linearity_cells", o.cells}, {"d", o.data["d"]}, {"e", o.data["e"]}};
        if (have_p) {
            PolyhedralComplex comb_lin(5);
            auto comb_img = complex_from_json(o.data["image"]);
            for (const auto& c : comb_img.cells) comb_lin.add(add_lineality(c, lineality));
            auto cc = covers(pcell, comb_lin);
            r.data["combination"]["covers_P_modulo_lineality"] = cc.covered;
        }
    }

    r.checks.push_back(detail::containment_check("phi", phi, in_x, rng));
    r.checks.push_back(detail::containment_check("phi o psi", compose_maps(phi, psi), in_x, rng));
    r.checks.push_back(detail::containment_check("phi o psi o iota", compose_maps(phi, psi_iota), in_x, rng));
    for (const auto& s : specs) r.checks.push_back(detail::containment_check(s.name, s.inverse, in_x, rng));

    r.data["determinant"] = h.str(names);
    r.data["hypersurface"] = to_json(x);
    r.data["horizontality"] = to_json(rep);
    r.data["projections"] = {to_json(spec_i), to_json(spec_j)};
    r.data["P"] = have_p ? to_json(x.complex.cells[p_index]) : json();
    r.data["certificates"] = {{"phi o psi", to_json(c1)}, {"phi o psi o iota", to_json(c2)}};
    r.data["certificate_maps"] = {map1, map2};
    r.data["certified_images"] = to_json(images);

    // rendering: slices of the fan modulo lineality (z1 = z2 = 0) by two
    // affine planes z0 + z3 + z4 = +1 and -1
    QMatrix basis{{-1, 0, 0, 1, 0}, {-1, 0, 0, 0, 1}};
    QPoint up{1, 0, 0, 0, 0}, down{-1, 0, 0, 0, 0};
    PolyhedralComplex regions(5);
    for (const auto& a : th.vertex_terms()) regions.add(th.region(a), detail::hankel_letter(a));
    r.data["rendering"] = {{"normalisation", "z1 = z2 = 0 (quotient by the lineality space)"},
                           {"planes", {"z0 + z3 + z4 = 1", "z0 + z3 + z4 = -1"}},
                           {"basis", to_json(basis)},
                           {"base_points", {to_json(up), to_json(down)}}};
    std::vector<SvgPanel> panels;
    for (const auto* base : {&up, &down}) {
        SvgPanel p{base == &up ? "z0 + z3 + z4 = 1" : "z0 + z3 + z4 = -1", {}, Rational(3)};
        SvgLayer reg;
        reg.complex = plane_slice(regions, *base, basis);
        reg.fill_by_label = {{"a", "#f1948a"}, {"b", "#85c1e9"}, {"c", "#82e0aa"}, {"d", "#d7bde2"}, {"e", "#f5b041"}};
        reg.stroke = "#555555";
        SvgLayer fan;
        fan.complex = plane_slice(x.complex, *base, basis);
        fan.show_labels = false;
        p.layers = {reg, fan};
        panels.push_back(std::move(p));
    }
    r.svg = render_svg(panels);
    return r;
}

// ---------------------------------------------------------------------------
// Named parameterisations
// ---------------------------------------------------------------------------

inline Report run_rank2(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "rank2";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long m = detail::param_long(params, "m", 3), n = detail::param_long(params, "n", 3);
    if (m < 2 || n < 2 || m > 4 || n > 4) throw std::invalid_argument("rank2: m and n must lie in 2..4");
    auto phi = rank2_param(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    auto comps = detail::polynomial_components(phi);
    const std::size_t mm = static_cast<std::size_t>(m), nn = static_cast<std::size_t>(n);
    bool formula = true;
    for (std::size_t i = 0; i < mm && formula; ++i)
        for (std::size_t j = 0; j < nn; ++j) {
            auto var = [&](std::size_t k) { return LaurentPoly::variable(phi.domain_dim(), k); };
            formula = formula && comps[i * nn + j] == var(i) * var(2 * mm + j) * (var(mm + i) + var(2 * mm + nn + j));
        }
    r.check("entry (i,j) equals u_i v_j (x_i + y_j)", true, formula);

    std::vector<TropPoly> minors;
    bool all_zero = true;
    std::size_t count = 0;
    if (m >= 3 && n >= 3) {
        // every 3 x 3 minor of the image vanishes; the same minors in the
        // coordinates of T^{m x n} give the tropical containment test
        std::vector<std::size_t> rows(3), cols(3);
        for (rows[0] = 0; rows[0] < mm; ++rows[0])
            for (rows[1] = rows[0] + 1; rows[1] < mm; ++rows[1])
                for (rows[2] = rows[1] + 1; rows[2] < mm; ++rows[2])
                    for (cols[0] = 0; cols[0] < nn; ++cols[0])
                        for (cols[1] = cols[0] + 1; cols[1] < nn; ++cols[1])
                            for (cols[2] = cols[1] + 1; cols[2] < nn; ++cols[2]) {
                                std::vector<std::vector<LaurentPoly>> sub(3), gen(3);
                                for (std::size_t a = 0; a < 3; ++a)
                                    for (std::size_t b = 0; b < 3; ++b) {
                                        sub[a].push_back(comps[rows[a] * nn + cols[b]]);
                                        gen[a].push_back(LaurentPoly::variable(mm * nn, rows[a] * nn + cols[b]));
                                    }
                                all_zero = all_zero && detail::determinant(sub).is_zero();
                                minors.push_back(tropicalize_poly(detail::determinant(gen)));
                                ++count;
                            }
        r.check("all 3x3 minors of the image vanish symbolically", true, all_zero, std::to_string(count) + " minors");
        auto in_x = [&](const QPoint& p) {
            return std::all_of(minors.begin(), minors.end(), [&](const TropPoly& f) { return detail::in_corner_locus(f, p); });
        };
        r.checks.push_back(detail::containment_check("rank2", phi, in_x, rng));
    } else {
        auto jr = jacobian_rank(phi, rng);
        const auto expected = static_cast<std::size_t>(std::min(m * n, 2 * (m + n) - 4));
        r.check("image is dense in the rank-2 locus (Jacobian rank)", true, jr == std::min<std::size_t>(mm * nn, expected),
                "rank " + std::to_string(jr));
    }
    r.checks.push_back(detail::homogenisation_check("rank2_param(2,3)", rank2_param(2, 3), &r.data));
    r.data["map"] = to_json(phi);
    return r;
}

inline Report run_grassmannian(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "grassmannian";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long nl = detail::param_long(params, "n", 4);
    if (nl < 4 || nl > 6) throw std::invalid_argument("grassmannian: n must lie in 4..6");
    const std::size_t n = static_cast<std::size_t>(nl);
    auto phi = grassmannian2_param(n);
    auto comps = detail::polynomial_components(phi);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t i = 0, k = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) index[{i, j}] = k++;
    const std::size_t q = comps.size();
    auto coord = [&](std::size_t i, std::size_t j) { return LaurentPoly::variable(q, index.at({i, j})); };
    std::vector<TropPoly> relations;
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    auto p = [&](std::size_t a, std::size_t b) { return comps[index.at({a, b})]; };
                    all_zero = all_zero && (p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k)).is_zero();
                    relations.push_back(
                        tropicalize_poly(coord(i, j) * coord(k, l) - coord(i, k) * coord(j, l) + coord(i, l) * coord(j, k)));
                }
    r.check("three-term Pluecker relations vanish on the image", true, all_zero,
            std::to_string(relations.size()) + " relations");
    auto in_x = [&](const QPoint& p) {
        return std::all_of(relations.begin(), relations.end(), [&](const TropPoly& f) { return detail::in_corner_locus(f, p); });
    };
    r.checks.push_back(detail::containment_check("gr2", phi, in_x, rng));
    r.data["map"] = to_json(phi);
    return r;
}

inline std::vector<std::vector<long>> parse_integer_matrix(const std::string& s) {
    std::vector<std::vector<long>> out;
    std::stringstream rows(s);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<long> r;
        std::stringstream cells(row);
        std::string c;
        while (std::getline(cells, c, ',')) r.push_back(std::stol(c));
        if (!r.empty()) out.push_back(std::move(r));
    }
    return out;
}

inline Report run_horn(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "horn";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    auto it = params.find("A");
    std::vector<std::vector<long>> a{{1, 1, 1}, {0, 1, 2}};
    if (it != params.end()) a = parse_integer_matrix(it->second);
    auto phi = horn_param(a);
    r.data["map"] = to_json(phi);
    const bool quadratic = a == std::vector<std::vector<long>>{{1, 1, 1}, {0, 1, 2}};
    if (quadratic) {
        auto comps = detail::polynomial_components(phi);
        auto disc = comps[1] * comps[1] - comps[0] * comps[2].scaled(ValuedScalar(4));
        r.check("b^2 - 4ac vanishes on the image", true, disc.is_zero());
        auto [d, names] = parse_poly_text("vars: a b c\nb^2 - 4*a*c");
        auto td = tropicalize_poly(d);
        r.checks.push_back(
            detail::containment_check("horn", phi, [&](const QPoint& p) { return detail::in_corner_locus(td, p); }, rng));
    }
    auto jr = jacobian_rank(phi, rng);
    r.check("Jacobian rank equals N - 1 (a hypersurface)", true, jr + 1 == a.front().size(), "rank " + std::to_string(jr));
    return r;
}

// ---------------------------------------------------------------------------
// Rational curves
// ---------------------------------------------------------------------------

namespace detail {

/// A tropically surjective parameterisation of the curve: Yu-Yuster on the
/// cone over x -> (x - s)_s, pushed forward by (t, p) -> p / t and then by
/// the factorisation exponents and scalars.
inline RationalMap curve_surjective_param(const CurveFactorization& f) {
    const std::size_t k = f.points.size();
    Matrix<ValuedScalar> basis(2, std::vector<ValuedScalar>(k + 1));
    basis[0][0] = ValuedScalar(1);
    basis[1][0] = ValuedScalar(0);
    for (std::size_t s = 0; s < k; ++s) {
        basis[0][s + 1] = ValuedScalar(GaussianRational(-f.points[s].re, -f.points[s].im));
        basis[1][s + 1] = ValuedScalar(1);
    }
    auto yy = yu_yuster_param(basis, k + 1);
    MonomialMap pi;
    for (const auto& row : f.exponents) {
        ExponentVec e(k + 1, 0);
        for (std::size_t s = 0; s < k; ++s) {
            e[s + 1] = row[s];
            e[0] -= row[s];
        }
        pi.push_back(std::move(e));
    }
    return toric_pushforward(yy, pi, f.scalars);
}

}  // namespace detail

inline Report run_curves(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "curves";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const std::vector<std::string> curves{"t\nt + 1", "t^2*(t - 1)", "1/(t - 1)", "t^2 + 1\nt", "(t - 2)/(t + 1)\nt^3/(t - 2)"};
    r.data["curves"] = json::array();
    for (const auto& text : curves) {
        auto phi = parse_map_text("vars: t\n" + text);
        auto fac = curve_factorization(phi.components());
        auto re = toric_pushforward(fac.affine, fac.exponents, fac.scalars);
        bool same = true;
        for (std::size_t i = 0; i < phi.codomain_dim(); ++i) same = same && re[i].equals(phi[i]);
        std::string tag = phi.str();
        r.check("factorisation recomposes: " + tag, true, same);
        auto ta = tropicalize_map(fac.affine);
        auto tre = tropicalize_map(re);
        auto vu = valuations(fac.scalars);
        auto mpi = to_qmatrix(fac.exponents);
        int bad = 0;
        for (int s = 0; s < 20; ++s) {
            QPoint xi = detail::random_point(rng, 1);
            QPoint lhs = trop_eval_map(tre, xi);
            QPoint rhs = mat_vec(mpi, trop_eval_map(ta, xi));
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += vu[i];
            if (lhs != rhs) ++bad;
        }
        r.check("pushforward soundness at 20 weights: " + tag, true, bad == 0);
        auto surj = detail::curve_surjective_param(fac);
        bool surj_same = true;
        auto img_phi = tropical_image(phi), img_surj = tropical_image(surj);
        surj_same = covers(img_phi, img_surj).covered;
        r.check("im Trop of the pushed-forward linear parameterisation contains im Trop(f): " + tag, true, surj_same);
        json entry = {{"map", tag}, {"points", json::array()}, {"exponents", fac.exponents}, {"surjective_param", surj.str()}};
        for (const auto& s : fac.points) entry["points"].push_back(s.str());
        for (const auto& c : fac.scalars) entry["scalars"].push_back(c.str());
        if (text == "t\nt + 1") {
            auto tf = tropicalize_poly(line_equation());
            auto tripod = trop_hypersurface(tf);
            r.check("the pushed-forward parameterisation of (t, t+1) covers the tripod", true,
                    covers(tripod.complex, img_surj).covered);
            auto in_x = [&](const QPoint& p) { return detail::in_corner_locus(tf, p); };
            r.checks.push_back(detail::containment_check(tag, phi, in_x, rng));
            r.checks.push_back(detail::containment_check("pushed-forward parameterisation", surj, in_x, rng));
        }
        r.data["curves"].push_back(std::move(entry));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Linear spaces
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
struct LinearCase {
    Matrix<F> basis;
    std::size_t n = 0;
};

inline Rational random_entry(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-3, 3);
    return Rational(d(rng));
}

/// Random V of admissible shape with no zero coordinate.
template <class F, class Gen>
LinearCase<F> random_linear_space(std::mt19937_64& rng, Gen gen) {
    static const std::vector<std::pair<std::size_t, std::size_t>> shapes{{3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3},
                                                                          {5, 1}, {5, 2}, {6, 1}, {6, 2}};
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    for (;;) {
        auto [n, k] = shapes[pick(rng)];
        Matrix<F> b(k, std::vector<F>(n));
        for (auto& row : b)
            for (auto& x : row) x = gen(rng);
        if (rank(b) != k) continue;
        bool zero_col = false;
        for (std::size_t j = 0; j < n; ++j) {
            bool z = true;
            for (std::size_t i = 0; i < k; ++i) z = z && b[i][j].is_zero();
            zero_col = zero_col || z;
        }
        if (zero_col) continue;
        return {std::move(b), n};
    }
}

template <class F>
std::string matrix_str(const Matrix<F>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].str();
    }
    return s + "]";
}

template <class F>
void linear_case(Report& r, const std::string& tag, const Matrix<F>& basis, std::size_t n, std::mt19937_64& rng) {
    auto yy = yu_yuster_param(basis, n);
    auto eqs = equations_of_span(basis, n);
    auto trop_v = trop_linear_space(eqs, n);
    auto img = tropical_image(yy);
    auto ab = covers(img, trop_v), ba = covers(trop_v, img);
    r.check("Yu-Yuster image equals Trop(V): " + tag, true, ab.covered && ba.covered,
            "V = rowspan " + matrix_str(basis) + "; " + std::to_string(yy.domain_dim()) + " circuits, " +
                std::to_string(trop_v.size()) + " cells of Trop(V)");
    r.checks.push_back(containment_check("Yu-Yuster " + tag, yy, [&](const QPoint& p) { return membership(p, trop_v); }, rng));
    r.data["spaces"].push_back({{"tag", tag}, {"basis", matrix_str(basis)}, {"map", yy.str()}, {"trop_v_cells", trop_v.size()}});
}

}  // namespace detail

inline Report run_linear(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "linear";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long count = detail::param_long(params, "count", 10);
    r.data["spaces"] = json::array();
    detail::linear_case<Rational>(r, "span (1,1,1)", QMatrix{{1, 1, 1}}, 3, rng);
    detail::linear_case<Rational>(r, "x + y + z = 0", null_space(QMatrix{{1, 1, 1}}, 3), 3, rng);
    detail::linear_case<Rational>(r, "R^2", QMatrix{{1, 0}, {0, 1}}, 2, rng);
    for (long k = 0; k < count; ++k) {
        auto c = detail::random_linear_space<Rational>(rng, detail::random_entry);
        detail::linear_case(r, "trivial #" + std::to_string(k + 1), c.basis, c.n, rng);
    }
    auto puiseux = [](std::mt19937_64& g) {
        static const std::vector<Rational> exps{Rational(-1), Rational(0), Rational(0), Rational(1, 2), Rational(1)};
        std::uniform_int_distribution<std::size_t> e(0, exps.size() - 1);
        Rational c = detail::random_entry(g);
        return ValuedScalar(c) * ValuedScalar::t_power(exps[e(g)]);
    };
    for (long k = 0; k < count; ++k) {
        auto c = detail::random_linear_space<ValuedScalar>(rng, puiseux);
        detail::linear_case(r, "Puiseux #" + std::to_string(k + 1), c.basis, c.n, rng);
    }
    return r;
}

// ---------------------------------------------------------------------------
// 4 x 5 matrices of rank at most 3
// ---------------------------------------------------------------------------

namespace detail {

/// det of the submatrix with the given 1-based row and column digits.
inline Rational minor_of(const QMatrix& m, const std::string& rows, const std::string& cols) {
    QMatrix sub;
    for (char rc : rows) {
        QVector row;
        for (char cc : cols) row.push_back(m[static_cast<std::size_t>(rc - '1')][static_cast<std::size_t>(cc - '1')]);
        sub.push_back(std::move(row));
    }
    return determinant(sub);
}

struct FourByFive {
    Rational identity_234, identity_134, solvability;
    Rational literal_234, literal_134;
    bool literal_solvability = false;
};

/// Cofactor expansions of det M_{1234,2345} and det M_{1234,1345} along
/// column 5, and the determinant of the 2x2 system in (m35, m45).
inline FourByFive four_by_five(const QMatrix& m) {
    auto e = [&](std::size_t i, std::size_t j) { return m[i - 1][j - 1]; };
    FourByFive f;
    for (const std::string cols : {"234", "134"}) {
        Rational v = -e(1, 5) * minor_of(m, "234", cols) + e(2, 5) * minor_of(m, "134", cols) -
                     e(3, 5) * minor_of(m, "124", cols) + e(4, 5) * minor_of(m, "123", cols);
        Rational lit = e(3, 5) * minor_of(m, "124", cols) + e(4, 5) * minor_of(m, "123", cols) +
                       e(1, 5) * minor_of(m, "234", cols) + e(2, 5) * minor_of(m, cols == "234" ? "124" : "134", cols);
        (cols == "234" ? f.identity_234 : f.identity_134) = v;
        (cols == "234" ? f.literal_234 : f.literal_134) = lit;
    }
    f.solvability = minor_of(m, "124", "134") * minor_of(m, "123", "234") - minor_of(m, "124", "234") * minor_of(m, "123", "134");
    f.literal_solvability = minor_of(m, "124", "134") * minor_of(m, "123", "134") != minor_of(m, "124", "234") * minor_of(m, "123", "134");
    return f;
}

inline QMatrix random_rank3_4x5(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-5, 5);
    for (;;) {
        QMatrix a(4, QVector(3)), b(3, QVector(5));
        for (auto& row : a)
            for (auto& x : row) x = Rational(d(rng));
        for (auto& row : b)
            for (auto& x : row) x = Rational(d(rng));
        auto m = mat_mul(a, b);
        if (rank(m) == 3) return m;
    }
}

/// A nonzero change of (m35, m45) that keeps the rank at 3, or empty.
inline QVector fibre_direction(const QMatrix& m) {
    // w in the span of columns 1..4 with w1 = w2 = 0
    QMatrix sys(2, QVector(4));
    for (std::size_t j = 0; j < 4; ++j) {
        sys[0][j] = m[0][j];
        sys[1][j] = m[1][j];
    }
    for (const auto& c : null_space(sys, 4)) {
        QVector w(4, Rational(0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) w[i] += m[i][j] * c[j];
        if (!w[2].is_zero() || !w[3].is_zero()) return w;
    }
    return {};
}

}  // namespace detail

inline Report run_fourbyfive(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "fourbyfive";
    r.params = params;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long samples = detail::param_long(params, "samples", 100);
    long zero234 = 0, zero134 = 0, solvable = 0, lit234 = 0, lit134 = 0, litsolv = 0, fibres = 0;
    for (long s = 0; s < samples; ++s) {
        auto m = detail::random_rank3_4x5(rng);
        auto f = detail::four_by_five(m);
        zero234 += f.identity_234.is_zero();
        zero134 += f.identity_134.is_zero();
        solvable += !f.solvability.is_zero();
        lit234 += f.literal_234.is_zero();
        lit134 += f.literal_134.is_zero();
        litsolv += f.literal_solvability;
        auto w = detail::fibre_direction(m);
        if (!w.empty()) {
            QMatrix moved = m;
            moved[2][4] += w[2];
            moved[3][4] += w[3];
            fibres += rank(moved) <= 3 && moved != m;
        }
    }
    {
        // (A, B) -> A B on 4x3 and 3x5 factors, against the corner loci of the
        // five maximal minors, which contain Trop(V)
        std::vector<LaurentPoly> entries;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                LaurentPoly e(27);
                for (std::size_t k = 0; k < 3; ++k)
                    e += LaurentPoly::variable(27, i * 3 + k) * LaurentPoly::variable(27, 12 + k * 5 + j);
                entries.push_back(std::move(e));
            }
        auto product = RationalMap::from_polys(27, entries, "product");
        std::vector<TropPoly> minors;
        for (std::size_t skip = 0; skip < 5; ++skip) {
            std::vector<std::vector<LaurentPoly>> gen(4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 5; ++j)
                    if (j != skip) gen[i].push_back(LaurentPoly::variable(20, i * 5 + j));
            minors.push_back(tropicalize_poly(detail::determinant(gen)));
        }
        r.checks.push_back(detail::containment_check("(A, B) -> AB", product, [&](const QPoint& p) {
            return std::all_of(minors.begin(), minors.end(), [&](const TropPoly& f) { return detail::in_corner_locus(f, p); });
        }, rng));
    }
    auto frac = [&](long k) { return std::to_string(k) + "/" + std::to_string(samples); };
    r.check("cofactor identity for columns 2345 vanishes on every sample", true, zero234 == samples, frac(zero234));
    r.check("cofactor identity for columns 1345 vanishes on every sample", true, zero134 == samples, frac(zero134));
    r.check("the 2x2 system for (m35, m45) is solvable on at least 95% of samples", true, solvable * 100 >= 95 * samples,
            frac(solvable) + " nonzero determinants");
    r.check("(m35, m45) can move along a line inside the rank-3 locus with the other 18 entries fixed", true,
            fibres == samples, frac(fibres));
    if (lit234 != samples || lit134 != samples)
        r.discrepancies.push_back("the identities as printed (all signs +, det M_{124,234} as the m25 coefficient) vanish on " +
                                  frac(lit234) + " and " + frac(lit134) +
                                  " samples; the signed cofactor expansions vanish on all");
    if (solvable * 100 < 95 * samples)
        r.discrepancies.push_back(
            "the 3x3 minors of the rank-3 block M_{1234,1234} form a rank-1 matrix, so the two identities are "
            "proportional and det M_{124,134} det M_{123,234} - det M_{124,234} det M_{123,134} vanishes on the whole "
            "variety; (m35, m45) is not determined by the other 18 entries");
    r.data = {{"samples", samples},
              {"identity_234_zero", zero234},
              {"identity_134_zero", zero134},
              {"solvable", solvable},
              {"fibre_lines", fibres},
              {"printed_identity_234_zero", lit234},
              {"printed_identity_134_zero", lit134},
              {"printed_inequality_holds", litsolv}};
    return r;
}

// ---------------------------------------------------------------------------
// Local verifier and Puiseux roots
// ---------------------------------------------------------------------------

namespace detail {

inline Check perturbation_check(const std::string& tag, const RationalMap& phi, const RationalMap& alpha,
                                const LocalLinearityCertificate& c) {
    auto trop = tropicalize_map(compose_maps(phi, alpha));
    int bad = 0;
    Rational eps(1, 1000);
    for (int k = 0; k < 5; ++k) {
        QVector w = perturbed_weight(c, eps);
        if (!c.region.contains(w) || trop_eval_map(trop, w) != c.affine_map().apply(w)) ++bad;
        eps = eps / Rational(7);
    }
    return {"certificate map agrees with Trop(phi o alpha) at 5 perturbed weights: " + tag, true, bad == 0, std::to_string(5 - bad) + "/5 perturbed weights"};
}

}  // namespace detail

inline Report run_verifier(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "verifier";
    r.params = params;
    r.seed = seed;
    auto phi = line_phi();
    auto alpha = parse_map_text("vars: s\ns");
    auto tf = tropicalize_poly(line_equation());
    r.data["certificates"] = json::array();
    for (long sign : {1L, -1L}) {
        auto c = local_linearity_check(phi, alpha, {Rational(sign)});
        std::string tag = sign > 0 ? "sigma > 0" : "sigma < 0";
        QMatrix rows = sign > 0 ? QMatrix{{1}, {0}} : QMatrix{{1}, {1}};
        r.check("line certificate, " + tag + ": rows and rank 1", true, c.valid && c.differential == rows && c.rank == 1,
                detail::affine_label(c.affine_map(), {"s"}));
        bool arm = detail::in_corner_locus(tf, c.image_point) &&
                   (sign > 0 ? c.image_point[1].is_zero() && c.image_point[0].sign() > 0
                             : c.image_point[0] == c.image_point[1] && c.image_point[0].sign() < 0);
        r.check("line certificate, " + tag + ": image point on the " + (sign > 0 ? "east" : "south-west") + " arm", true, arm,
                to_string(c.image_point));
        r.checks.push_back(detail::perturbation_check(tag, phi, alpha, c));
        r.data["certificates"].push_back(to_json(c));
    }
    std::mt19937_64 rng(seed);
    r.checks.push_back(detail::containment_check("phi o alpha", compose_maps(phi, alpha),
                                                 [&](const QPoint& p) { return detail::in_corner_locus(tf, p); }, rng));
    auto hphi = hankel_phi(), psi = hankel_psi();
    auto c = local_linearity_check(hphi, psi, {Rational(2), Rational(0), Rational(1)});
    r.check("Hankel certificate for phi o psi is valid", true, c.valid);
    r.checks.push_back(detail::perturbation_check("Hankel phi o psi", hphi, psi, c));
    auto tie = local_linearity_check(phi, alpha, {Rational(0)});
    r.check("at sigma = 0 the tie between t and 1 is reported and broken by the direction", true,
            !tie.unique_at_base && tie.unique && tie.differential == QMatrix{{1}, {0}} &&
                same_set(tie.region, Polyhedron(1, {LinConstraint::ge(QVector{Rational(1)}, Rational(0))})),
            detail::affine_label(tie.affine_map(), {"s"}));
    return r;
}

namespace detail {

inline PuiseuxPoly to_puiseux(const ValuedScalar& c) {
    if (c.is_zero()) return {};
    if (!c.den().is_monomial()) throw std::invalid_argument("coefficient " + c.str() + " is not a Puiseux polynomial");
    auto [e, lc] = c.den().leading_term();
    return c.num().divided_by_monomial(lc, e);
}

}  // namespace detail

/// Coefficients, by degree, of a polynomial in one variable S.
inline PuiseuxUPoly puiseux_coefficients(const LaurentPoly& p) {
    if (p.num_vars() != 1) throw std::invalid_argument("expected a polynomial in one variable");
    PuiseuxUPoly out;
    for (const auto& [a, c] : p.terms()) {
        if (a[0] < 0) throw std::invalid_argument("negative power of the root variable");
        auto k = static_cast<std::size_t>(a[0]);
        if (out.size() <= k) out.resize(k + 1);
        out[k] = detail::to_puiseux(c);
    }
    return out;
}

/// Valuation of P(r) for each root expansion; +infinity for exact roots.
inline std::vector<Valuation> residual_valuations(const PuiseuxUPoly& p, const std::vector<PuiseuxRoot>& roots) {
    std::vector<Valuation> out;
    for (const auto& rt : roots) out.push_back(evaluate(p, rt.series).valuation());
    return out;
}

inline Report run_roots(const ScenarioParams& params, std::uint64_t seed) {
    Report r;
    r.scenario = "roots";
    r.params = params;
    r.seed = seed;
    struct Case {
        std::string poly;
        std::vector<std::string> expected;  // at k = 3
    };
    const std::vector<Case> cases{{"S^2 - t", {"-t^(1/2)", "t^(1/2)"}},
                                  {"S^2 + S + t", {"-1 + t + t^2", "-t - t^2 - 2*t^3"}},
                                  {"S^2 - (1 + t)", {"-1 - 1/2*t + 1/8*t^2", "1 + 1/2*t - 1/8*t^2"}}};
    r.data["polynomials"] = json::array();
    for (const auto& c : cases) {
        auto p = puiseux_coefficients(parse_poly_text("vars: S\n" + c.poly).first);
        auto roots3 = puiseux_roots(p, 3);
        std::vector<std::string> got;
        for (const auto& x : roots3) got.push_back(x.series.str());
        auto want = c.expected;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        std::string g;
        for (const auto& s : got) g += (g.empty() ? "" : ", ") + s;
        r.check("roots of " + c.poly + " to 3 terms", true, got == want, g);
        // residual valuations along k = 1, 2, 3 for each root branch
        std::vector<std::vector<Valuation>> by_k;
        for (std::size_t k = 1; k <= 3; ++k) by_k.push_back(residual_valuations(p, puiseux_roots(p, k)));
        bool increasing = true;
        std::string vals;
        for (std::size_t i = 0; i < by_k[0].size(); ++i) {
            for (std::size_t k = 0; k < 3; ++k) vals += (k ? ", " : (i ? "; " : "")) + by_k[k][i].str();
            for (std::size_t k = 1; k < 3; ++k) {
                const auto &prev = by_k[k - 1][i], &cur = by_k[k][i];
                if (prev.is_infinite()) increasing = increasing && cur.is_infinite();
                else increasing = increasing && (cur.is_infinite() || prev < cur);
            }
        }
        r.check("residual valuation increases with k: " + c.poly, true, increasing, vals);
        r.data["polynomials"].push_back({{"poly", c.poly}, {"roots", got}, {"residual_valuations", vals}});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using ScenarioFn = Report (*)(const ScenarioParams&, std::uint64_t);

inline const std::vector<std::pair<std::string, ScenarioFn>>& scenario_registry() {
    static const std::vector<std::pair<std::string, ScenarioFn>> reg{
        {"line", run_line},         {"combination", run_combination}, {"singular", run_singular},
        {"hankel", run_hankel},     {"rank2", run_rank2},             {"grassmannian", run_grassmannian},
        {"horn", run_horn},         {"curves", run_curves},           {"linear", run_linear},
        {"fourbyfive", run_fourbyfive}, {"verifier", run_verifier},   {"roots", run_roots}};
    return reg;
}

inline Report run_scenario(const std::string& name, const ScenarioParams& params = {}, std::uint64_t seed = 1) {
    for (const auto& [n, fn] : scenario_registry())
        if (n == name) return fn(params, seed);
    throw UnknownScenario("unknown scenario '" + name + "'");
}

}  // namespace tropcover
