#include "branescope/equivariant.hpp"

#include <stdexcept>

namespace branescope::equivariant {

using zlinalg::Int;

std::vector<IntVec> fixed_points(const NormalFan& f) {
    return f.cone_vertex;
}

LocalizationResult localize_standard(const NormalFan& f, const TorusDivisor& d) {
    toric::CartierData cd = toric::cartier_data(f, d);
    LocalizationResult out;
    out.mode = Mode::standard;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        out.entries.emplace_back(f.cone_vertex[c], LinearForm{cd.m_sigma[c]});
    return out;
}

LocalizationResult localize_constant(const NormalFan& f, std::size_t n, bool restrict_to_y) {
    (void)restrict_to_y; // every torus-fixed point lies on the invariant hypersurface
    LinearForm form;
    form.coeffs.assign(f.dim, -Int(static_cast<long long>(n) - 1));
    LocalizationResult out;
    out.mode = Mode::constant;
    for (const auto& v : f.cone_vertex) out.entries.emplace_back(v, form);
    return out;
}

LinearForm xi_star(const IntVec& m) {
    return LinearForm{m};
}

ModeComparison compare_modes(const NormalFan& f, std::size_t n) {
    TorusDivisor d;
    d.coeffs.resize(f.rays.size());
    for (std::size_t r = 0; r < f.rays.size(); ++r)
        d.coeffs[r] = Int(static_cast<long long>(n) - 1) * f.facet_offsets[r];

    LocalizationResult std_mode = localize_standard(f, d);
    LocalizationResult const_mode = localize_constant(f, n, false);

    ModeComparison cmp;
    for (std::size_t c = 0; c < std_mode.entries.size(); ++c) {
        IntVec diff(f.dim);
        for (std::size_t j = 0; j < f.dim; ++j)
            diff[j] = std_mode.entries[c].second.coeffs[j] - const_mode.entries[c].second.coeffs[j];
        cmp.differences.emplace_back(std_mode.entries[c].first, LinearForm{std::move(diff)});
    }
    cmp.all_equal = true;
    for (std::size_t c = 1; c < cmp.differences.size(); ++c)
        if (!(cmp.differences[c].second == cmp.differences[0].second)) cmp.all_equal = false;
    return cmp;
}

} // namespace branescope::equivariant
