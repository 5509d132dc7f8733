#pragma once

// Torus-fixed points and localization of the equivariant first Chern class.
// Weights live in H*(BT) = Q[t_1..t_n] and are recorded as integer linear
// forms.  Two localization conventions are kept side by side: the standard
// one reads the Cartier datum m_sigma at each fixed point; the constant mode
// assigns every fixed point the single form -(n-1) * sum_i t_i arising from
// the character z -> prod z_i^{n-1} on the structure torus.

#include <cstddef>
#include <vector>

#include "branescope/toric.hpp"

namespace branescope::equivariant {

using toric::NormalFan;
using toric::TorusDivisor;
using zlinalg::IntVec;

struct LinearForm {
    IntVec coeffs; // sum_i coeffs[i] * t_i
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

enum class Mode { standard, constant };

struct LocalizationResult {
    Mode mode = Mode::standard;
    // (fixed point labeled by its vertex of Delta, weight form), cone order
    std::vector<std::pair<IntVec, LinearForm>> entries;
};

// One fixed point per maximal cone, labeled by the matching vertex.
std::vector<IntVec> fixed_points(const NormalFan& f);

// Weight at the fixed point of sigma is the character of m_sigma.
LocalizationResult localize_standard(const NormalFan& f, const TorusDivisor& d);

// Constant tuple -(n-1) * sum_i t_i at every fixed point.  restrict_to_y
// keeps the fixed points lying on the invariant anticanonical hypersurface;
// those are all of them, since every fixed point sits on the toric boundary.
LocalizationResult localize_constant(const NormalFan& f, std::size_t n, bool restrict_to_y);

// The form sum_i m_i t_i induced by the character of m.
LinearForm xi_star(const IntVec& m);

struct ModeComparison {
    // standard weight of (n-1)*sum c_F D_F minus the constant form, per fixed point
    std::vector<std::pair<IntVec, LinearForm>> differences;
    bool all_equal = false; // would witness a single global character shift
};

ModeComparison compare_modes(const NormalFan& f, std::size_t n);

} // namespace branescope::equivariant
