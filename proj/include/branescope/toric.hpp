#pragma once

// Projective toric varieties presented by the normal fan of a full-dimensional
// lattice polytope.  Rays are the inward facet normals, one maximal cone per
// vertex; torus-invariant divisors are coefficient vectors in ray order.

#include <cstddef>
#include <optional>
#include <vector>

#include "branescope/polytope.hpp"

namespace branescope::toric {

using poly::CharacterPoint;
using poly::LatticePolytope;
using zlinalg::Int;
using zlinalg::IntVec;
using zlinalg::Rat;
using zlinalg::RatVec;

struct NormalFan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;         // primitive inward facet normals, lex order
    IntVec facet_offsets;             // offset of the facet defining each ray
    std::vector<std::vector<std::size_t>> max_cones; // ray indices, one cone per vertex
    std::vector<IntVec> cone_vertex;  // vertex of the polytope cut out by each cone

    std::size_t ray_index(const IntVec& ray) const;
};

// Ray order equals the lexicographic facet order of the polytope; cones are
// listed in lexicographic vertex order.  Requires the origin strictly inside.
NormalFan normal_fan(const LatticePolytope& p);

// Every maximal cone spanned by dim linearly independent rays.
bool is_simplicial(const NormalFan& f);

struct TorusDivisor {
    IntVec coeffs; // D = sum coeffs[rho] * D_rho, in ray order
};

// K_X = -sum of all prime toric divisors.
TorusDivisor canonical_divisor(const NormalFan& f);

// Local characters m_sigma with <m_sigma, u_rho> = -a_rho on each maximal
// cone; exists integrally iff the divisor is Cartier.
struct CartierData {
    std::vector<IntVec> m_sigma; // one per maximal cone, in cone order
};
CartierData cartier_data(const NormalFan& f, const TorusDivisor& d);

// Rational cone corners <m, u_rho> = -a_rho; defined for every divisor on a
// simplicial fan and used to bound character search regions.
std::vector<RatVec> rational_corners(const NormalFan& f, const TorusDivisor& d);

// Strict convexity of the support function plus a bounded semigroup
// generation test at every vertex of the divisor polytope.
bool is_very_ample(const NormalFan& f, const TorusDivisor& d);

// Projective embedding data for the ample model of (dim-1) * (-K): the
// character monomials are the lattice points of the dilated polytope.
struct EmbeddingData {
    LatticePolytope polytope;               // (dim-1)-fold dilation
    std::vector<CharacterPoint> monomials;  // lex order
    std::size_t count = 0;                  // number of monomials N
    std::size_t target_dim = 0;             // embeds into P^(N-1)
};
EmbeddingData embedding(const LatticePolytope& p);

// Evaluate the character monomials at a torus point with nonzero rational
// coordinates; returns homogeneous coordinates (all nonzero).
RatVec evaluate_embedding(const EmbeddingData& e, const RatVec& z);

} // namespace branescope::toric
