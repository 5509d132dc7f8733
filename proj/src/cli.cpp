#include "branescope/cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "branescope/branes.hpp"
#include "branescope/equivariant.hpp"
#include "branescope/errors.hpp"
#include "branescope/gauge.hpp"
#include "branescope/json_io.hpp"
#include "branescope/polytope.hpp"
#include "branescope/sheafcoh.hpp"
#include "branescope/toric.hpp"

namespace branescope::cli {
namespace {

using io::Json;
using zlinalg::Int;
using zlinalg::IntVec;

constexpr std::uint64_t kDefaultSeed = 0xB4A17;

IntVec to_ivec(const std::vector<long long>& v) {
    IntVec out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

toric::TorusDivisor divisor_for(const toric::NormalFan& f, const std::vector<long long>& coeffs,
                                const char* flag) {
    if (coeffs.size() != f.rays.size())
        throw std::invalid_argument(std::string(flag) + " needs one coefficient per ray (" +
                                    std::to_string(f.rays.size()) +
                                    " rays in lexicographic order)");
    return toric::TorusDivisor{to_ivec(coeffs)};
}

Json rows_json(const std::vector<IntVec>& rows) {
    Json a = Json::array();
    for (const IntVec& r : rows) a.push_back(io::json_ivec(r));
    return a;
}

Json dims_json(const std::vector<std::size_t>& dims) {
    Json a = Json::array();
    for (std::size_t d : dims) a.push_back(d);
    return a;
}

void add_seed(CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "random seed (environment BRANESCOPE_SEED when absent)")
        ->envname("BRANESCOPE_SEED");
}

void add_format(CLI::App* sub, std::string& format) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str("json");
}

std::string ext_csv(const branes::ExtTable& t) {
    std::string s = "k,dim\n";
    for (std::size_t k = 0; k < t.dims.size(); ++k)
        s += std::to_string(k) + "," + std::to_string(t.dims[k]) + "\n";
    return s;
}

std::string rectangle_csv(const branes::RectangleTable& t) {
    std::string s = "p,q,value\n";
    for (const auto& e : t.entries)
        s += std::to_string(e.p) + "," + std::to_string(e.q) + "," + std::to_string(e.value) +
             "\n";
    return s;
}

Json localization_json(const equivariant::LocalizationResult& r) {
    Json a = Json::array();
    for (const auto& [vertex, form] : r.entries) {
        Json e;
        e["fixed_point"] = io::json_ivec(vertex);
        e["form"] = io::json_ivec(form.coeffs);
        a.push_back(std::move(e));
    }
    return a;
}

struct Options {
    std::string input;
    std::string poly_file;
    std::uint64_t seed = kDefaultSeed;
    long long dilate = 1;
    long long a = 0;
    long long b = 0;
    std::size_t depth = 0;
    std::size_t window = 0;
    std::size_t trials = 200;
    bool reverse = false;
    bool paper_mode = false;
    bool restrict_y = false;
    std::string format = "json";
    std::vector<long long> divisor;
    std::vector<long long> brane;
    std::vector<long long> other;
    std::vector<long long> m;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact toric geometry, brane Ext tables, and gauge checks"};
    app.require_subcommand(1);
    Options o;

    auto* polytope_cmd = app.add_subcommand("polytope", "reflexive polytope operations");
    polytope_cmd->require_subcommand(1);
    auto* check = polytope_cmd->add_subcommand("check", "reflexivity and polar dual vertices");
    check->add_option("input", o.input, "polytope JSON file")->required();
    auto* dual = polytope_cmd->add_subcommand("dual", "polar dual as a polytope document");
    dual->add_option("input", o.input, "polytope JSON file")->required();
    auto* points = polytope_cmd->add_subcommand("points", "lattice points, lexicographic");
    points->add_option("input", o.input, "polytope JSON file")->required();
    points->add_option("--dilate", o.dilate, "integer dilation factor")
        ->check(CLI::PositiveNumber);

    auto* toric_cmd = app.add_subcommand("toric", "normal fan and divisor cohomology");
    toric_cmd->require_subcommand(1);
    auto* fan = toric_cmd->add_subcommand("fan", "rays, maximal cones, simpliciality");
    fan->add_option("input", o.input, "polytope JSON file")->required();
    auto* dc = toric_cmd->add_subcommand("divisor-cohomology", "h^i(X, O(D)) by character");
    dc->add_option("input", o.input, "polytope JSON file")->required();
    dc->add_option("--divisor", o.divisor, "divisor coefficients, ray order")
        ->required()
        ->delimiter(',');

    auto* branes_cmd = app.add_subcommand("branes", "line-bundle branes on the hypersurface");
    branes_cmd->require_subcommand(1);
    auto* ext = branes_cmd->add_subcommand("ext", "Ext^k(L^a, L^b) dimensions");
    ext->add_option("input", o.input, "polytope JSON file")->required();
    ext->add_option("--a", o.a, "source power of L")->required();
    ext->add_option("--b", o.b, "target power of L")->required();
    add_seed(ext, o.seed);
    add_format(ext, o.format);
    auto* spanning = branes_cmd->add_subcommand("spanning", "ghost-number scan against L^i");
    spanning->add_option("input", o.input, "polytope JSON file")->required();
    spanning->add_option("--brane", o.brane, "brane divisor coefficients, ray order")
        ->required()
        ->delimiter(',');
    spanning->add_option("--depth", o.depth, "certification depth")->required();
    spanning->add_option("--window", o.window, "threshold search window")->required();
    spanning->add_flag("--reverse", o.reverse, "scan Ext(F, L^i) instead");
    add_seed(spanning, o.seed);
    auto* rectangle = branes_cmd->add_subcommand("rectangle", "vertex-operator table");
    rectangle->add_option("input", o.input, "polytope JSON file")->required();
    rectangle->add_option("--brane", o.brane, "brane divisor coefficients, ray order")
        ->required()
        ->delimiter(',');
    rectangle->add_option("--b", o.b, "power of L on the source side")->required();
    add_seed(rectangle, o.seed);
    add_format(rectangle, o.format);
    auto* triangle = branes_cmd->add_subcommand("triangle", "split-triangle clause checks");
    triangle->add_option("input", o.input, "polytope JSON file")->required();
    triangle->add_option("--a", o.a, "power of L in the triangle")->required();
    triangle->add_option("--brane", o.brane, "brane F coefficients (default structure sheaf)")
        ->delimiter(',');
    triangle->add_option("--other", o.other, "summand H coefficients (default zero object)")
        ->delimiter(',');
    add_seed(triangle, o.seed);

    auto* equivariant_cmd = app.add_subcommand("equivariant", "fixed-point localization");
    equivariant_cmd->require_subcommand(1);
    auto* localize = equivariant_cmd->add_subcommand("localize", "weights at the fixed points");
    localize->add_option("input", o.input, "polytope JSON file")->required();
    localize->add_flag("--paper-mode", o.paper_mode, "constant -(n-1)*sum t_i tuple");
    localize->add_flag("--restrict-y", o.restrict_y,
                       "restrict to fixed points on the invariant hypersurface (all of them)");
    localize->add_option("--divisor", o.divisor,
                         "divisor for standard mode (default anticanonical)")
        ->delimiter(',');
    auto* xi = equivariant_cmd->add_subcommand("xi", "character pullback form");
    xi->add_option("--m", o.m, "character exponents")->required()->delimiter(',');

    auto* gauge_cmd = app.add_subcommand("gauge", "Fubini-Study connection checks");
    auto* ym = gauge_cmd->add_subcommand("ym", "Yang-Mills value with degree probe");
    ym->add_option("--poly", o.poly_file, "homogeneous equation JSON file")->required();
    ym->add_option("--trials", o.trials, "number of probe lines")->check(CLI::PositiveNumber);
    add_seed(ym, o.seed);
    gauge_cmd->require_subcommand(1);

    std::string output;

    check->callback([&] {
        auto p = io::load_polytope(o.input);
        Json j;
        const bool reflexive = poly::is_reflexive(p);
        j["reflexive"] = reflexive;
        if (reflexive) j["dual_vertices"] = rows_json(poly::polar_dual(p).vertices());
        output = io::dump(j);
    });

    dual->callback([&] {
        auto d = poly::polar_dual(io::load_polytope(o.input));
        Json j;
        j["name"] = d.name();
        j["dim"] = d.dim();
        j["vertices"] = rows_json(d.vertices());
        output = io::dump(j);
    });

    points->callback([&] {
        auto p = io::load_polytope(o.input);
        if (o.dilate != 1) p = poly::dilate(p, Int(o.dilate));
        auto pts = poly::lattice_points(p);
        Json j;
        j["name"] = p.name();
        j["dilate"] = o.dilate;
        j["count"] = pts.size();
        Json rows = Json::array();
        for (const auto& cp : pts) rows.push_back(io::json_ivec(cp.m));
        j["points"] = std::move(rows);
        output = io::dump(j);
    });

    fan->callback([&] {
        auto f = toric::normal_fan(io::load_polytope(o.input));
        Json j;
        j["dim"] = f.dim;
        j["rays"] = rows_json(f.rays);
        Json cones = Json::array();
        for (const auto& c : f.max_cones) cones.push_back(c);
        j["max_cones"] = std::move(cones);
        j["cone_vertices"] = rows_json(f.cone_vertex);
        j["simplicial"] = toric::is_simplicial(f);
        output = io::dump(j);
    });

    dc->callback([&] {
        auto f = toric::normal_fan(io::load_polytope(o.input));
        auto g = sheafcoh::divisor_cohomology(f, divisor_for(f, o.divisor, "--divisor"));
        Json j;
        j["divisor"] = Json(o.divisor);
        j["h"] = dims_json(g.totals);
        j["characters"] = g.pieces.size();
        output = io::dump(j);
    });

    ext->callback([&] {
        branes::HypersurfaceModel h(io::load_polytope(o.input), o.seed);
        auto t = branes::ext_table(h, branes::BraneDescriptor{h.brane_l(o.a)},
                                   branes::BraneDescriptor{h.brane_l(o.b)});
        if (o.format == "csv") {
            output = ext_csv(t);
            return;
        }
        Json j;
        j["a"] = io::json_ivec(t.a.coeffs);
        j["b"] = io::json_ivec(t.b.coeffs);
        Json dims = Json::object();
        for (std::size_t k = 0; k < t.dims.size(); ++k) dims[std::to_string(k)] = t.dims[k];
        j["dims"] = std::move(dims);
        output = io::dump(j);
    });

    spanning->callback([&] {
        branes::HypersurfaceModel h(io::load_polytope(o.input), o.seed);
        auto f = branes::BraneDescriptor{divisor_for(h.fan(), o.brane, "--brane")};
        auto r = branes::spanning_scan(h, f, o.depth, o.window, o.reverse);
        Json j;
        j[r.reverse ? "l" : "r"] = r.r;
        j[r.reverse ? "n0" : "i0"] = r.i0;
        j["window_length"] = r.window_length;
        j["reverse"] = r.reverse;
        j["brane"] = io::json_ivec(r.brane.coeffs);
        Json samples = Json::array();
        for (const auto& [i, dims] : r.samples) {
            Json s;
            s["i"] = i;
            s["dims"] = dims_json(dims);
            samples.push_back(std::move(s));
        }
        j["samples"] = std::move(samples);
        output = io::dump(j);
    });

    rectangle->callback([&] {
        branes::HypersurfaceModel h(io::load_polytope(o.input), o.seed);
        auto f = branes::BraneDescriptor{divisor_for(h.fan(), o.brane, "--brane")};
        auto t = branes::rectangle_table(h, f, o.b);
        if (o.format == "csv") {
            output = rectangle_csv(t);
            return;
        }
        Json j;
        j["brane"] = io::json_ivec(t.brane.coeffs);
        j["b"] = t.b;
        j["r"] = t.r;
        j["s"] = t.s;
        Json entries = Json::array();
        for (const auto& e : t.entries) {
            Json row;
            row["p"] = e.p;
            row["q"] = e.q;
            row["value"] = e.value;
            entries.push_back(std::move(row));
        }
        j["entries"] = std::move(entries);
        output = io::dump(j);
    });

    triangle->callback([&] {
        branes::HypersurfaceModel h(io::load_polytope(o.input), o.seed);
        auto f = branes::BraneDescriptor{triangle->count("--brane") > 0
                                             ? divisor_for(h.fan(), o.brane, "--brane")
                                             : h.structure_sheaf()};
        std::optional<branes::BraneDescriptor> other;
        if (triangle->count("--other") > 0)
            other = branes::BraneDescriptor{divisor_for(h.fan(), o.other, "--other")};
        auto t = branes::triangle_clauses(h, f, o.a, other);
        Json j;
        j["s_set"] = Json(t.s_set);
        j["k1"] = t.k1;
        j["k2"] = t.k2;
        Json clauses = Json::array();
        for (const auto& c : t.clauses) {
            Json row;
            row["clause"] = c.clause;
            row["j"] = c.j;
            row["status"] = c.status;
            row["lhs"] = c.lhs;
            row["rhs"] = c.rhs;
            clauses.push_back(std::move(row));
        }
        j["clauses"] = std::move(clauses);
        output = io::dump(j);
    });

    localize->callback([&] {
        auto f = toric::normal_fan(io::load_polytope(o.input));
        equivariant::LocalizationResult r;
        if (o.paper_mode) {
            r = equivariant::localize_constant(f, f.dim, o.restrict_y);
        } else {
            auto d = localize->count("--divisor") > 0
                         ? divisor_for(f, o.divisor, "--divisor")
                         : toric::TorusDivisor{IntVec(f.rays.size(), Int(1))};
            r = equivariant::localize_standard(f, d);
        }
        output = io::dump(localization_json(r));
    });

    xi->callback([&] {
        auto form = equivariant::xi_star(to_ivec(o.m));
        Json j;
        j["m"] = Json(o.m);
        j["form"] = io::json_ivec(form.coeffs);
        output = io::dump(j);
    });

    ym->callback([&] {
        auto eq = io::load_equation(o.poly_file);
        auto r = gauge::ym_value(eq, eq.vars - 1, o.trials, o.seed);
        Json j;
        j["degree"] = r.degree;
        j["value"] = r.value;
        j["probe"] = r.probe;
        j["probe_checked"] = r.probe_checked;
        output = io::dump(j);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        err << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    out << output;
    return 0;
}

} // namespace branescope::cli
