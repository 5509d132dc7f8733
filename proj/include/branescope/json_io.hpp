#pragma once

// JSON input loading and shared serialization helpers.  Input documents are
// validated structurally here so the CLI can map every malformed file to a
// usage error; facet data is never read from input, only recomputed.

#include <string>

#include <json.hpp>

#include "branescope/gauge.hpp"
#include "branescope/polytope.hpp"
#include "branescope/zlinalg.hpp"

namespace branescope::io {

using Json = nlohmann::ordered_json;
using zlinalg::Int;
using zlinalg::IntVec;

// Parses the file at path; throws std::invalid_argument on I/O or syntax
// errors so callers can treat both uniformly as malformed input.
Json read_json_file(const std::string& path);

// Polytope document {"name": string, "dim": n, "vertices": [[int,...],...]}.
// The hull and facets are recomputed from the vertex list.
poly::LatticePolytope load_polytope(const std::string& path);

// Homogeneous equation document
//   {"vars": k, "degree": d, "terms": [{"exps": [...], "coeff": [num, den]}]}
// with one exponent per variable and exponents summing to the degree.
gauge::HypersurfaceEquation load_equation(const std::string& path);

Json json_int(const Int& x);
Json json_ivec(const IntVec& v);

// Canonical textual form used for every report: two-space indent plus a
// trailing newline, independent of locale and parallelism.
std::string dump(const Json& j);

} // namespace branescope::io
