// tropcover command-line front end.
//
// Exit codes: 0 success, 1 verdict mismatch, 2 input error.

#include "tropcover/scenarios.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace tropcover;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A path to an existing file, or else the text itself.
std::string file_or_text(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

json load_json(const std::string& arg) {
    try {
        return json::parse(file_or_text(arg));
    } catch (const json::parse_error& e) {
        throw InputError("'" + arg + "' is not valid JSON: " + e.what());
    }
}

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << j.dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& out) {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << text;
}

json envelope(const std::string& kind, json body) {
    json out = {{"schema", kSchema}, {"kind", kind}};
    for (auto& [k, v] : body.items()) out[k] = v;
    return out;
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string scenario;
    std::vector<std::string> params;
    std::uint64_t seed = 1;
    std::string json_out, svg_out;
    bool quiet = false;
};

int cmd_run(const RunArgs& a) {
    ScenarioParams params;
    for (const auto& kv : a.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--param expects k=v, got '" + kv + "'");
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    Report r;
    try {
        r = run_scenario(a.scenario, params, a.seed);
    } catch (const UnknownScenario& e) {
        std::string names;
        for (const auto& [n, fn] : scenario_registry()) names += (names.empty() ? "" : ", ") + n;
        throw InputError(std::string(e.what()) + " (known: " + names + ")");
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (!a.json_out.empty()) emit(r.to_json(), a.json_out);
    if (!a.svg_out.empty()) {
        if (r.svg.empty()) std::cerr << "note: scenario '" << a.scenario << "' has no rendering\n";
        else write_text(r.svg, a.svg_out);
    }
    if (!a.quiet || !r.ok()) {
        std::ostream& os = a.json_out == "-" ? std::cerr : std::cout;
        os << "scenario " << r.scenario << " (seed " << r.seed << ")\n";
        for (const auto& c : r.checks) {
            if (a.quiet && c.met()) continue;
            os << (c.met() ? "  ok       " : "  MISMATCH ") << c.name << " [expected " << (c.expected ? "true" : "false")
               << ", observed " << (c.observed ? "true" : "false") << "]";
            if (!c.detail.empty()) os << ": " << c.detail;
            os << "\n";
        }
        for (const auto& d : r.discrepancies) os << "  note     " << d << "\n";
        os << "verdict: " << (r.ok() ? "ok" : "mismatch") << "\n";
    }
    return r.ok() ? kOk : kMismatch;
}

int cmd_trop_hypersurface(const std::string& file, const std::string& out) {
    auto [f, vars] = parse_poly_text(file_or_text(file));
    auto tf = tropicalize_poly(f);
    auto h = trop_hypersurface(tf);
    emit(envelope("trop-hypersurface", {{"polynomial", f.str(vars)},
                                        {"variables", vars},
                                        {"tropical_polynomial", to_json(tf)},
                                        {"lineality", to_json(tf.lineality_space())},
                                        {"hypersurface", to_json(h)}}),
         out);
    return kOk;
}

int cmd_map_image(const std::string& file, const std::string& out) {
    auto phi = parse_map_text(file_or_text(file));
    auto lin = linearity_complex(phi);
    auto img = pl_image(lin);
    emit(envelope("map-image", {{"map", to_json(phi)}, {"linearity_complex", to_json(lin)}, {"image", to_json(img)}}), out);
    return kOk;
}

int cmd_covers(const std::string& target, const std::string& cover, const std::optional<bool>& expect,
               const std::string& out) {
    PolyhedralComplex t, c;
    try {
        t = complex_from_json(load_json(target));
        c = complex_from_json(load_json(cover));
    } catch (const JsonFormatError& e) {
        throw InputError(e.what());
    }
    if (t.ambient_dim != c.ambient_dim) throw InputError("target and cover live in different dimensions");
    auto rep = covers(t, c);
    json body = {{"report", to_json(rep)}};
    if (expect) body["expected"] = *expect;
    emit(envelope("covers", body), out);
    return expect && *expect != rep.covered ? kMismatch : kOk;
}

int cmd_combine(const std::string& map, const std::string& a1, const std::string& a2, const std::string& out) {
    auto phi = parse_map_text(file_or_text(map));
    auto alpha1 = parse_map_text(file_or_text(a1));
    auto alpha2 = parse_map_text(file_or_text(a2));
    for (const auto* a : {&alpha1, &alpha2})
        if (a->codomain_dim() != phi.domain_dim())
            throw InputError("reparameterisation " + a->str() + " does not land in the domain of " + phi.str());
    auto comb = combine_reparams(phi, alpha1, alpha2);
    auto full = compose_maps(phi, comb.alpha);
    auto img = tropical_image(full);
    auto c1 = covers(tropical_image(compose_maps(phi, alpha1)), img);
    auto c2 = covers(tropical_image(compose_maps(phi, alpha2)), img);
    emit(envelope("combine", {{"alpha", to_json(comb.alpha)},
                              {"d", comb.d},
                              {"e", comb.e},
                              {"phi_tilde", comb.phi_tilde.str()},
                              {"alpha1_tilde", comb.alpha1_tilde.str()},
                              {"alpha2_tilde", comb.alpha2_tilde.str()},
                              {"image", to_json(img)},
                              {"contains_first", c1.covered},
                              {"contains_second", c2.covered}}),
         out);
    return c1.covered && c2.covered ? kOk : kMismatch;
}

int cmd_roots(const std::string& poly, long k, const std::string& out) {
    if (k < 1) throw InputError("-k must be positive");
    auto [f, vars] = parse_poly_text(file_or_text(poly));
    if (vars.size() != 1) throw InputError("roots: expected a polynomial in exactly one variable");
    auto p = puiseux_coefficients(f);
    auto roots = puiseux_roots(p, static_cast<std::size_t>(k));
    json rs = json::array();
    for (const auto& r : roots) {
        auto v = evaluate(p, r.series).valuation();
        rs.push_back({{"series", r.series.str()}, {"exact", r.exact}, {"residual_valuation", v.str()}});
    }
    emit(envelope("roots", {{"polynomial", f.str(vars)}, {"terms", k}, {"roots", rs}}), out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropcover: tropical images of rational maps and coverage certificates"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a worked scenario and report its checks");
    run_cmd->add_option("scenario", run.scenario, "Scenario name")->required();
    run_cmd->add_option("--param", run.params, "Scenario parameter k=v (repeatable)");
    run_cmd->add_option("--seed", run.seed, "Random seed");
    run_cmd->add_option("--json", run.json_out, "Write the JSON report here ('-' for stdout)");
    run_cmd->add_option("--svg", run.svg_out, "Write the SVG rendering here");
    run_cmd->add_flag("-q,--quiet", run.quiet, "Print only mismatches");

    std::string file, out;
    auto* th_cmd = app.add_subcommand("trop-hypersurface", "Tropical hypersurface of a polynomial");
    th_cmd->add_option("-f,--file", file, "Polynomial file or inline text")->required();
    th_cmd->add_option("-o,--out", out, "Output JSON file (default stdout)");

    std::string map_file;
    auto* mi_cmd = app.add_subcommand("map-image", "Linearity complex and image of Trop of a rational map");
    mi_cmd->add_option("-m,--map", map_file, "Map file or inline text")->required();
    mi_cmd->add_option("-o,--out", out, "Output JSON file (default stdout)");

    std::string target, cover, expect_str;
    auto* cv_cmd = app.add_subcommand("covers", "Decide whether a union of polyhedra covers a complex");
    cv_cmd->add_option("-t,--target", target, "Target complex JSON")->required();
    cv_cmd->add_option("-c,--cover", cover, "Covering complex JSON")->required();
    cv_cmd->add_option("--expect", expect_str, "Expected verdict")->check(CLI::IsMember({"true", "false"}));
    cv_cmd->add_option("-o,--out", out, "Output JSON file (default stdout)");

    std::string a1, a2;
    auto* cb_cmd = app.add_subcommand("combine", "Combine two reparameterisations of a map");
    cb_cmd->add_option("-m,--map", map_file, "Map file or inline text")->required();
    cb_cmd->add_option("-a", a1, "First reparameterisation")->required();
    cb_cmd->add_option("-b", a2, "Second reparameterisation")->required();
    cb_cmd->add_option("-o,--out", out, "Output JSON file (default stdout)");

    std::string poly;
    long terms = 3;
    auto* rt_cmd = app.add_subcommand("roots", "Puiseux expansions of the roots of a univariate polynomial");
    rt_cmd->add_option("-p,--poly", poly, "Polynomial file or inline text")->required();
    rt_cmd->add_option("-k,--terms", terms, "Number of terms");
    rt_cmd->add_option("-o,--out", out, "Output JSON file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*th_cmd) return cmd_trop_hypersurface(file, out);
        if (*mi_cmd) return cmd_map_image(map_file, out);
        if (*cv_cmd) {
            std::optional<bool> expect;
            if (!expect_str.empty()) expect = expect_str == "true";
            return cmd_covers(target, cover, expect, out);
        }
        if (*cb_cmd) return cmd_combine(map_file, a1, a2, out);
        if (*rt_cmd) return cmd_roots(poly, terms, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const JsonFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
