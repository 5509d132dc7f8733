#include "branescope/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace branescope::io {
namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw std::invalid_argument(path + ": " + what);
}

long long expect_integer(const Json& j, const std::string& path, const char* where) {
    if (!j.is_number_integer()) bad(path, std::string(where) + " must be an integer");
    return j.get<long long>();
}

} // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad(path, "cannot open file");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) bad(path, "malformed JSON");
    return j;
}

poly::LatticePolytope load_polytope(const std::string& path) {
    Json j = read_json_file(path);
    if (!j.is_object()) bad(path, "top level must be an object");
    if (!j.contains("name") || !j["name"].is_string()) bad(path, "missing string field \"name\"");
    if (!j.contains("dim")) bad(path, "missing field \"dim\"");
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
        bad(path, "missing non-empty array field \"vertices\"");

    const long long dim = expect_integer(j["dim"], path, "\"dim\"");
    if (dim < 1 || dim > 32) bad(path, "\"dim\" out of range");

    std::vector<IntVec> points;
    for (const Json& row : j["vertices"]) {
        if (!row.is_array() || static_cast<long long>(row.size()) != dim)
            bad(path, "every vertex must be an array of \"dim\" integers");
        IntVec v;
        for (const Json& c : row) v.emplace_back(expect_integer(c, path, "vertex coordinate"));
        points.push_back(std::move(v));
    }
    return poly::LatticePolytope::from_vertices(std::move(points), j["name"].get<std::string>());
}

gauge::HypersurfaceEquation load_equation(const std::string& path) {
    Json j = read_json_file(path);
    if (!j.is_object()) bad(path, "top level must be an object");
    if (!j.contains("vars") || !j.contains("degree")) bad(path, "missing \"vars\" or \"degree\"");
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        bad(path, "missing non-empty array field \"terms\"");

    gauge::HypersurfaceEquation eq;
    const long long vars = expect_integer(j["vars"], path, "\"vars\"");
    if (vars < 2 || vars > 64) bad(path, "\"vars\" out of range");
    eq.vars = static_cast<std::size_t>(vars);
    eq.degree = expect_integer(j["degree"], path, "\"degree\"");
    if (eq.degree < 1) bad(path, "\"degree\" must be positive");

    for (const Json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exps") || !t.contains("coeff"))
            bad(path, "every term needs \"exps\" and \"coeff\"");
        const Json& exps = t["exps"];
        if (!exps.is_array() || exps.size() != eq.vars)
            bad(path, "\"exps\" must list one exponent per variable");
        gauge::HypersurfaceEquation::Term term;
        long long total = 0;
        for (const Json& e : exps) {
            const long long x = expect_integer(e, path, "exponent");
            if (x < 0) bad(path, "exponents must be nonnegative");
            term.exps.push_back(static_cast<unsigned>(x));
            total += x;
        }
        if (total != eq.degree) bad(path, "term degree does not match \"degree\"");
        const Json& c = t["coeff"];
        if (!c.is_array() || c.size() != 2) bad(path, "\"coeff\" must be [numerator, denominator]");
        const long long num = expect_integer(c[0], path, "coefficient numerator");
        const long long den = expect_integer(c[1], path, "coefficient denominator");
        if (den == 0) bad(path, "coefficient denominator is zero");
        term.coeff = static_cast<double>(num) / static_cast<double>(den);
        eq.terms.push_back(std::move(term));
    }
    return eq;
}

Json json_int(const Int& x) {
    if (x < std::numeric_limits<long long>::min() || x > std::numeric_limits<long long>::max())
        throw std::logic_error("integer too large for a JSON report");
    return Json(x.convert_to<long long>());
}

Json json_ivec(const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(json_int(x));
    return a;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace branescope::io
