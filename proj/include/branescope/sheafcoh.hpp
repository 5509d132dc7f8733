#pragma once

// Line-bundle cohomology on a complete simplicial toric variety.  The graded
// piece of H^i(X, O(D)) at a character m is the reduced simplicial cohomology
// H~^(i-1) of the full subcomplex of the fan's boundary complex induced on
// the rays where m violates the divisor inequality:
//
//   V(D, m) = { rho : <m, u_rho> < -a_rho }.
//
// Multiplication by a character monomial shrinks that ray set, so the induced
// multiplication maps on cohomology are restrictions of reduced cochains.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "branescope/toric.hpp"

namespace branescope::sheafcoh {

using toric::NormalFan;
using toric::TorusDivisor;
using zlinalg::IntVec;

// Abstract simplicial complex with integer vertex labels.  Faces are kept
// closed under taking subsets; the empty face is always present, so the
// reduced cohomology of the complex with no vertices has rank one in
// degree -1.
struct SupportComplex {
    std::vector<int> vertices;            // sorted
    std::vector<std::vector<int>> faces;  // nonempty faces, sorted lists, lex order

    // Builds the downward closure of the given faces; extra isolated
    // vertices may be passed explicitly.
    static SupportComplex from_faces(std::vector<std::vector<int>> faces,
                                     std::vector<int> isolated = {});

    std::size_t max_level() const; // largest face size
    bool subcomplex_of(const SupportComplex& other) const;
};

// The fan's boundary complex: one face per cone, labeled by its ray set.
struct FanComplex {
    std::size_t nrays = 0;
    std::vector<std::uint32_t> faces; // all cone ray sets as bitmasks, ascending
    bool has_face(std::uint32_t mask) const;
};

// Requires a simplicial fan.
FanComplex fan_complex(const NormalFan& f);

// Full subcomplex induced on the rays in the mask.
SupportComplex full_subcomplex(const FanComplex& fc, std::uint32_t rays_mask);

// Rays where m violates the inequality of D = sum a_rho D_rho.
std::uint32_t negative_rays(const NormalFan& f, const TorusDivisor& d, const IntVec& m);

// Ranks of reduced cohomology.  Entry s holds the rank of H~^(s-1); the
// vector covers s = 0 .. max_level().
std::vector<std::size_t> reduced_cohomology_dims(const SupportComplex& c);

// Matrices of the map H~^(s-1)(dst) -> H~^(s-1)(src) induced by restricting
// reduced cochains along src <= dst.  Entry s is the degree s-1 matrix in the
// deterministic representative bases used throughout this module.  Throws
// NotASubcomplex when src is not contained in dst.
std::vector<zlinalg::RatMatrix> inclusion_map(const SupportComplex& src,
                                              const SupportComplex& dst);

// Shared per-fan cache of subcomplex cohomology: dimensions and
// restriction-induced blocks keyed by ray masks.
class SubcomplexCache {
public:
    explicit SubcomplexCache(const NormalFan& f);

    std::size_t nrays() const;
    std::size_t dim() const;
    // Entry i is the rank contributed to h^i (levels 0..dim).
    const std::vector<std::size_t>& dims(std::uint32_t mask);
    // H(level) of the super complex -> H(level) of the sub complex.
    const zlinalg::RatMatrix& block(std::uint32_t sub, std::uint32_t super, std::size_t level);
    SupportComplex subcomplex(std::uint32_t mask);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

struct GradedCohomology {
    TorusDivisor divisor;
    // Nonzero graded pieces: m -> (h^0_m, ..., h^n_m), lex order on m.
    std::map<IntVec, std::vector<std::size_t>> pieces;
    std::vector<std::size_t> totals; // h^0 .. h^n
};

// Scans the character box spanned by the rational cone corners, expanded by
// one; the outermost shell is verified to contribute nothing and the box is
// grown until it does.  The parallel version distributes characters over
// OpenMP threads; both produce identical output.
GradedCohomology divisor_cohomology(const NormalFan& f, const TorusDivisor& d);
GradedCohomology divisor_cohomology_serial(const NormalFan& f, const TorusDivisor& d);

} // namespace branescope::sheafcoh
