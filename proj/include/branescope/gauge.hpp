#pragma once

// Floating-point evaluation of the metric connection on O(1) over projective
// space and the induced Fubini-Study curvature, plus a randomized degree
// probe for hypersurfaces and the Yang-Mills value check.
//
// On the affine chart V_k the metric is h = (1 + |v|^2)^{-1}; the connection
// form is alpha = h^{-1} partial h with coefficients -conj(v_i)/(1+|v|^2) on
// dv_i, and the curvature coefficients on dv_i wedge dconj(v_j) are
//   F_ij = (delta_ij (1+|v|^2) - conj(v_i) v_j) / (1+|v|^2)^2.
// The global sign convention is fixed by these two formulas.

#include <complex>
#include <cstdint>
#include <vector>

namespace branescope::gauge {

using cplx = std::complex<double>;

struct AffinePoint {
    std::size_t chart = 0;  // index of the homogeneous coordinate set to 1
    std::vector<cplx> v;    // inhomogeneous coordinates
};

struct ConnectionSample {
    std::vector<cplx> alpha; // coefficient of dv_i
};

struct CurvatureSample {
    std::vector<std::vector<cplx>> f; // coefficient of dv_i wedge dconj(v_j)
};

ConnectionSample connection_form_at(const AffinePoint& p);
CurvatureSample curvature_form_at(const AffinePoint& p);

// Chart transport helpers for the covariance checks.  A projective point is
// given by homogeneous coordinates z (nonzero where used); curves through it
// are z + t*w.
AffinePoint to_chart(const std::vector<cplx>& z, std::size_t chart);
// Velocity of the chart coordinates of z + t*w at t = 0.
std::vector<cplx> chart_velocity(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                 std::size_t chart);
cplx pair_connection(const ConnectionSample& a, const std::vector<cplx>& dv);
cplx pair_curvature(const CurvatureSample& f, const std::vector<cplx>& dv,
                    const std::vector<cplx>& dw);
// alpha_k - alpha_l paired with the curve z + t*w equals d/dt log(z_k/z_l).
cplx transition_term(const std::vector<cplx>& z, const std::vector<cplx>& w,
                     std::size_t k, std::size_t l);

struct HypersurfaceEquation {
    std::size_t vars = 0;   // number of homogeneous variables, N+1
    long long degree = 0;   // declared degree
    struct Term {
        std::vector<unsigned> exps; // one exponent per variable
        double coeff = 0.0;
    };
    std::vector<Term> terms;
};

// Restricts the equation to random projective lines and counts roots (with
// multiplicity) via a simultaneous-iteration root finder; returns the modal
// count.  Throws NumericalInstability when more than 5% of the trials
// disagree with the mode.
long long degree_probe(const HypersurfaceEquation& eq, std::size_t trials, std::uint64_t seed);

struct YmResult {
    long long degree = 0;      // degree used for the value
    double value = 0.0;        // 4 pi^2 * degree
    long long probe = -1;      // modal probe count, -1 when not run
    bool probe_checked = false;
};

// Yang-Mills value 4 pi^2 * vol(Y) with vol = deg(Y) under the unit
// normalization of the Fubini-Study class on lines.  Curves in P^2 are
// cross-checked with degree_probe; higher dimensions report formula-only.
YmResult ym_value(const HypersurfaceEquation& eq, std::size_t ambient_dim, std::size_t trials,
                  std::uint64_t seed);

} // namespace branescope::gauge
