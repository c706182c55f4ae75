#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encoding of maps, polyhedra, complexes, tropical polynomials
 *        and reports. Rationals are written as exact strings "p/q".
 */

#include "tropcover/constructions.hpp"
#include "tropcover/parse.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace tropcover {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tropcover/1";

inline json to_json(const Rational& q) { return q.str(); }

inline json to_json(const QVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json to_json(const QMatrix& m) {
    json a = json::array();
    for (const auto& r : m) a.push_back(to_json(r));
    return a;
}

inline json exponent_json(const ExponentVec& e) { return json(e); }

inline json to_json(const LinConstraint& c) {
    return {{"normal", to_json(c.normal)}, {"offset", c.offset.str()}, {"rel", c.rel == Relation::le ? "<=" : "="}};
}

inline json constraints_json(const Polyhedron& p) {
    json a = json::array();
    for (const auto& c : p.constraints()) a.push_back(to_json(c));
    return a;
}

inline json to_json(const Polyhedron& p) {
    return {{"ambient_dim", p.ambient_dim()}, {"constraints", constraints_json(p)}};
}

inline json to_json(const PolyhedralComplex& c) {
    json cells = json::array();
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        json cell = {{"constraints", constraints_json(c.cells[i])}};
        if (!c.labels[i].empty()) cell["label"] = c.labels[i];
        cells.push_back(std::move(cell));
    }
    return {{"ambient_dim", c.ambient_dim}, {"cells", std::move(cells)}};
}

inline json to_json(const AffineMapQ& a) { return {{"matrix", to_json(a.matrix)}, {"offset", to_json(a.offset)}}; }

inline json to_json(const PLMap& m) {
    json cells = json::array();
    for (const auto& c : m.cells) cells.push_back({{"domain", constraints_json(c.domain)}, {"map", to_json(c.map)}});
    return {{"domain_dim", m.domain_dim}, {"codomain_dim", m.codomain_dim}, {"cells", std::move(cells)}};
}

inline json to_json(const TropPoly& f) {
    json terms = json::array();
    for (const auto& [a, v] : f.terms()) terms.push_back(json::array({exponent_json(a), v.str()}));
    return {{"num_vars", f.num_vars()}, {"terms", std::move(terms)}};
}

inline json to_json(const LaurentPoly& f) {
    json terms = json::array();
    for (const auto& [a, c] : f.terms()) terms.push_back(json::array({exponent_json(a), c.str()}));
    return terms;
}

inline json to_json(const RationalMap& phi) {
    json comps = json::array();
    for (const auto& c : phi.components()) comps.push_back({{"num", to_json(c.num())}, {"den", to_json(c.den())}});
    json out = {{"domain_dim", phi.domain_dim()}, {"codomain_dim", phi.codomain_dim()}};
    if (!phi.name().empty()) out["name"] = phi.name();
    if (!phi.variable_names().empty()) out["variables"] = phi.variable_names();
    out["components"] = std::move(comps);
    out["text"] = phi.str();
    return out;
}

inline json to_json(const CoverageReport& r) {
    json cells = json::array();
    for (const auto& e : r.per_cell)
        cells.push_back({{"cell", e.cell}, {"status", to_string(e.status)}, {"pieces", e.pieces}});
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back(to_json(x));
    return {{"covered", r.covered}, {"per_cell", std::move(cells)}, {"witnesses", std::move(w)}};
}

inline json to_json(const TropHypersurface& h) {
    json out = to_json(h.complex);
    json pairs = json::array();
    for (const auto& [a, b] : h.pair_labels) pairs.push_back(json::array({exponent_json(a), exponent_json(b)}));
    out["pair_labels"] = std::move(pairs);
    if (!h.warnings.empty()) out["warnings"] = h.warnings;
    return out;
}

inline json to_json(const ProjectionSpec& s) {
    return {{"name", s.name}, {"ambient_dim", s.ambient_dim}, {"kept", s.kept}, {"inverse", to_json(s.inverse)}};
}

inline json to_json(const HorizontalCoverReport& r) {
    json cells = json::array();
    for (const auto& e : r.cells)
        cells.push_back({{"cell", e.cell}, {"label", e.label}, {"horizontal_for", e.horizontal_for},
                         {"confirmed_by", e.confirmed_by}});
    return {{"cells", std::move(cells)}, {"uncovered", r.uncovered}, {"confirmations_hold", r.confirmations_hold}};
}

inline json to_json(const LocalLinearityCertificate& c) {
    return {{"base", to_json(c.base)},
            {"directions", to_json(c.directions)},
            {"differential", to_json(c.differential)},
            {"offset", to_json(c.offset)},
            {"rank", c.rank},
            {"image_point", to_json(c.image_point)},
            {"unique", c.unique},
            {"unique_at_base", c.unique_at_base},
            {"valid", c.valid},
            {"ties", c.ties},
            {"region", constraints_json(c.region)}};
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

struct JsonFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw JsonFormatError("expected a rational string, got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

inline QVector qvector_from_json(const json& j) {
    if (!j.is_array()) throw JsonFormatError("expected an array of rationals");
    QVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline LinConstraint constraint_from_json(const json& j) {
    std::string rel = j.value("rel", "<=");
    QVector n = qvector_from_json(j.at("normal"));
    Rational b = rational_from_json(j.at("offset"));
    if (rel == "<=") return LinConstraint::le(std::move(n), b);
    if (rel == "=") return LinConstraint::eq(std::move(n), b);
    if (rel == ">=") return LinConstraint::ge(std::move(n), b);
    throw JsonFormatError("unknown relation '" + rel + "'");
}

inline Polyhedron polyhedron_from_json(const json& cons, std::size_t dim) {
    Polyhedron p(dim);
    for (const auto& c : cons) {
        auto lc = constraint_from_json(c);
        if (lc.normal.size() != dim) throw JsonFormatError("constraint length differs from ambient_dim");
        p.add(lc);
    }
    return p;
}

inline Polyhedron polyhedron_from_json(const json& j) {
    return polyhedron_from_json(j.at("constraints"), j.at("ambient_dim").get<std::size_t>());
}

/// Accepts a complex {ambient_dim, cells} or a single polyhedron.
inline PolyhedralComplex complex_from_json(const json& j) {
    try {
        const std::size_t n = j.at("ambient_dim").get<std::size_t>();
        PolyhedralComplex c(n);
        if (!j.contains("cells")) {
            c.add(polyhedron_from_json(j));
            return c;
        }
        for (const auto& cell : j.at("cells")) c.add(polyhedron_from_json(cell.at("constraints"), n), cell.value("label", ""));
        return c;
    } catch (const json::exception& e) {
        throw JsonFormatError(std::string("malformed complex: ") + e.what());
    }
}

inline LaurentPoly laurent_from_json(const json& terms, std::size_t n) {
    LaurentPoly f(n);
    for (const auto& t : terms) {
        auto e = t.at(0).get<ExponentVec>();
        if (e.size() != n) throw JsonFormatError("exponent length differs from domain_dim");
        f.add_term(e, parse_scalar(t.at(1).get<std::string>()));
    }
    return f;
}

inline RationalMap map_from_json(const json& j) {
    try {
        const std::size_t m = j.at("domain_dim").get<std::size_t>();
        std::vector<RationalFunction> comps;
        for (const auto& c : j.at("components"))
            comps.emplace_back(laurent_from_json(c.at("num"), m), laurent_from_json(c.at("den"), m));
        RationalMap out(m, std::move(comps), j.value("name", ""));
        if (j.contains("variables")) out.set_variable_names(j.at("variables").get<std::vector<std::string>>());
        return out;
    } catch (const json::exception& e) {
        throw JsonFormatError(std::string("malformed map: ") + e.what());
    }
}

}  // namespace tropcover
