#pragma once

// Branes on the anticanonical hypersurface Y of a toric variety X.  Y is the
// zero locus of a generic section f of O_X(-K_X); line-bundle branes are
// restrictions O_Y(E) of torus-invariant Cartier divisors.  All dimensions
// come from the twisted restriction sequence
//
//   0 -> O_X(E - Y) --f--> O_X(E) -> O_Y(E) -> 0,
//
// so h^i(O_Y(E)) = coker(mu_i) + ker(mu_{i+1}) where mu_i is multiplication
// by f on H^i(X, -).  mu decomposes into monomial blocks acting between
// graded pieces; ranks are certified structurally where the graded support
// is concentrated in degree 0 or n, and computed by dense elimination over
// a large prime field otherwise.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branescope/polytope.hpp"
#include "branescope/sheafcoh.hpp"
#include "branescope/toric.hpp"

namespace branescope::branes {

using toric::NormalFan;
using toric::TorusDivisor;
using zlinalg::Int;
using zlinalg::IntVec;

// Lattice points of the polyhedron cut out by the divisor inequalities,
// flipped to strict violation on the rays in the mask:
//   <m, u_rho> <= -a_rho - 1  for rho in mask,
//   <m, u_rho> >= -a_rho      otherwise.
// Exact Fourier-Motzkin bounds drive the scan; an unbounded region is a
// logic error (the callers only pass masks whose region must be bounded).
Int region_count(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask);
std::vector<IntVec> region_points(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask);

// Deterministic seed schedule: attempt k draws coefficient vectors from
// derived seeds 2k and 2k+1 and insists the two runs agree.
std::uint64_t derived_seed(std::uint64_t base, unsigned index);
// Nonzero coefficients in [1, P-1] over the prime field, one per monomial
// of f in lexicographic order.
std::vector<std::uint64_t> coefficient_vector(std::size_t count, std::uint64_t seed);

class HypersurfaceModel {
public:
    // p must be reflexive with a simplicial normal fan.
    HypersurfaceModel(const poly::LatticePolytope& p, std::uint64_t seed);

    const NormalFan& fan() const { return fan_; }
    std::size_t dim() const { return fan_.dim; }          // n = dim X
    std::uint64_t seed() const { return seed_; }
    const std::vector<IntVec>& monomials() const { return monomials_; }

    TorusDivisor anticanonical() const;                    // Y = sum D_rho
    TorusDivisor structure_sheaf() const;                  // E = 0
    TorusDivisor brane_l(long long power = 1) const;       // E = power*(n-1)*sum c_F D_F

    // (h^0, ..., h^{n-1}) of O_Y(E); E must be Cartier.  Memoized; the
    // two-seed genericity certificate runs on every fresh divisor.
    std::vector<std::size_t> cohomology(const TorusDivisor& e);

    // Same dimensions with dense elimination at every level, bypassing the
    // structural rank certificates.  Test reference; small divisors only.
    std::vector<std::size_t> cohomology_bruteforce(const TorusDivisor& e) const;

    // Per-level graded dimensions of H^*(X, O(D)) from region counts.
    std::vector<Int> level_dims(const TorusDivisor& d) const;

private:
    NormalFan fan_;
    std::vector<IntVec> monomials_;
    std::uint64_t seed_;
    mutable sheafcoh::SubcomplexCache cache_;
    std::vector<std::uint32_t> interesting_;               // masks with some nonzero level
    std::map<IntVec, std::vector<std::size_t>> memo_;
    mutable std::map<IntVec, std::vector<Int>> level_cache_;

    std::vector<std::size_t> dims_for_coeffs(const TorusDivisor& e,
                                             const std::vector<std::uint64_t>& coeffs,
                                             bool allow_certificates) const;
    std::size_t mu_rank(const TorusDivisor& e, std::size_t level,
                        const std::vector<std::uint64_t>& coeffs,
                        bool allow_certificates) const;
};

struct BraneDescriptor {
    TorusDivisor e; // the brane O_Y(E)
};

struct ExtTable {
    TorusDivisor a, b;
    std::vector<std::size_t> dims; // k in [0, n-1]
};

// Ext^k(O_Y(E_A), O_Y(E_B)) = h^k(O_Y(E_B - E_A)).
ExtTable ext_table(HypersurfaceModel& h, const BraneDescriptor& a, const BraneDescriptor& b);

// dim Ext^k(A,B) = dim Ext^{n-1-k}(B,A) for all k (trivial canonical bundle).
bool serre_dual_check(HypersurfaceModel& h, const ExtTable& t);

struct SpanningReport {
    TorusDivisor brane;
    bool reverse = false;
    long long r = 0;  // ghost number (forward) / l (reverse)
    long long i0 = 0; // threshold (forward) / n0 (reverse)
    std::size_t window_length = 0;
    // i -> dims of Ext^*(L^i, F) (forward) or Ext^*(F, L^i) (reverse)
    std::vector<std::pair<long long, std::vector<std::size_t>>> samples;
};

// Largest i0 in [-window, 0] admitting a ghost number r with
// Ext^r(L^i, F) != 0 for every i in [i0-depth, i0]; smallest such r wins.
// Reverse mode reports (l, n0) for Ext^l(F, L^i) through the Serre-dual
// table: l = n-1-r, n0 = i0.  Throws ScanExhausted when no candidate works.
SpanningReport spanning_scan(HypersurfaceModel& h, const BraneDescriptor& f,
                             std::size_t depth, std::size_t window, bool reverse = false);

struct RectangleTable {
    TorusDivisor brane;
    long long b = 0;
    int r = 0, s = 0; // sheaf-Ext window; [0,0] for line-bundle branes
    struct Entry {
        int p, q;
        std::size_t value;
    };
    std::vector<Entry> entries; // all (0, q) entries, q in [0, n-1]
};

// Vertex-operator table H^q(Y, sheaf-Ext^p(L^b, F)); for line bundles the
// sheaf-Ext is concentrated at p = 0 and the column is h^q(O_Y(E_F - b E_L)).
RectangleTable rectangle_table(HypersurfaceModel& h, const BraneDescriptor& f, long long b);

struct TriangleClause {
    int clause = 0;               // 1 or 2
    long long j = 0;              // examined ghost number
    std::string status;           // verified | vacuous | undecidable-at-dimension-level
    std::size_t lhs = 0, rhs = 0; // dim Ext^j(F,G) vs dim Ext^j(F,H)
};

struct TriangleReport {
    std::vector<long long> s_set; // S = { r : Ext^r(F, L^a) != 0 }
    long long k1 = 0, k2 = 0;
    std::vector<TriangleClause> clauses;
};

// Split-triangle comparator for G = L^a (+) H: clause (1) checks
// dim Ext^j(F,G) = dim Ext^j(F,H) for j < k1-1 or j > k2; clause (2) checks
// the strict difference at j = k1 and j = k2-1, reporting
// undecidable-at-dimension-level when the two sides agree numerically.
// other == nullopt means H = 0.  Throws DomainError when S is empty.
TriangleReport triangle_clauses(HypersurfaceModel& h, const BraneDescriptor& f, long long a,
                                const std::optional<BraneDescriptor>& other);

} // namespace branescope::branes
