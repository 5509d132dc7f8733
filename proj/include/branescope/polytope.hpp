#pragma once

// Full-dimensional lattice polytopes with exact H/V representations.
// Facet inequalities use the convention <m, normal> >= -offset, with the
// normal pointing inward and scaled to a primitive integer vector.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "branescope/zlinalg.hpp"

namespace branescope::poly {

using zlinalg::Int;
using zlinalg::IntVec;
using zlinalg::Rat;
using zlinalg::RatVec;

struct Facet {
    IntVec normal; // primitive, inward
    Int offset;    // polytope = {m : <m, normal> >= -offset for all facets}
    std::weak_ordering operator<=>(const Facet&) const = default;
};

struct CharacterPoint {
    IntVec m;
    std::weak_ordering operator<=>(const CharacterPoint&) const = default;
};

class LatticePolytope {
public:
    LatticePolytope() = default; // empty placeholder; fill via from_vertices

    // Exact convex hull of the given points.  Redundant points are dropped;
    // throws DegeneratePolytope when the affine span is not full-dimensional.
    static LatticePolytope from_vertices(std::vector<IntVec> points,
                                         std::string name = "");

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::vector<IntVec>& vertices() const { return vertices_; } // lex sorted
    const std::vector<Facet>& facets() const { return facets_; }      // lex sorted

    // <p, normal> + offset, the slack of a facet inequality at p.
    Int facet_slack(std::size_t facet, const IntVec& p) const;
    bool contains(const RatVec& p) const;

    friend LatticePolytope dilate(const LatticePolytope& p, const Int& k);

private:
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<IntVec> vertices_;
    std::vector<Facet> facets_;
};

// True iff the polytope has the origin strictly inside and every facet
// offset equals 1 (equivalently, every facet hyperplane has lattice
// distance one from the origin).
bool is_reflexive(const LatticePolytope& p);

// Convex hull of the facet normals; requires reflexivity.  Applying the map
// twice returns the original polytope.
LatticePolytope polar_dual(const LatticePolytope& p);

// Scale by an integer k >= 1: vertices and facet offsets multiply by k.
LatticePolytope dilate(const LatticePolytope& p, const Int& k);

// All lattice points of p in lexicographic order.  The parallel version
// splits the bounding box along the first coordinate; both produce identical
// output.
std::vector<CharacterPoint> lattice_points(const LatticePolytope& p);
std::vector<CharacterPoint> lattice_points_serial(const LatticePolytope& p);

} // namespace branescope::poly
