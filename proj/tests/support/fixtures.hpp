#pragma once

#include <random>
#include <string>

#include "branescope/json_io.hpp"
#include "branescope/polytope.hpp"
#include "branescope/toric.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
    return std::string(BRANESCOPE_DATA_DIR) + "/" + name;
}

inline branescope::poly::LatticePolytope load(const std::string& name) {
    return branescope::io::load_polytope(data_path(name));
}

// Deterministic small divisor coefficients in [lo, hi].
inline branescope::toric::TorusDivisor random_divisor(std::mt19937_64& gen, std::size_t nrays,
                                                      long long lo, long long hi) {
    std::uniform_int_distribution<long long> pick(lo, hi);
    branescope::zlinalg::IntVec c;
    for (std::size_t i = 0; i < nrays; ++i) c.emplace_back(pick(gen));
    return branescope::toric::TorusDivisor{std::move(c)};
}

// O(a1,...,ak) on a product of projective lines whose rays are in
// lexicographic order: the positive unit rays come last in reverse
// coordinate order.
inline branescope::toric::TorusDivisor product_line_bundle(const std::vector<long long>& a) {
    const std::size_t n = a.size();
    branescope::zlinalg::IntVec c(2 * n, branescope::zlinalg::Int(0));
    for (std::size_t i = 0; i < n; ++i) c[2 * n - 1 - i] = a[i];
    return branescope::toric::TorusDivisor{std::move(c)};
}

} // namespace fixtures
