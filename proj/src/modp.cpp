#include "branescope/modp.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace branescope::modp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    base %= P;
    while (exp) {
        if (exp & 1) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a) {
    a %= P;
    if (a == 0) throw std::domain_error("modp::inv of zero");
    return pow(a, P - 2);
}

namespace {

std::size_t rank_impl(DenseMatrix& m, bool parallel) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        const std::uint64_t pivot_inv = inv(m.at(r, c));
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) = mul(m.at(r, j), pivot_inv);

        const std::uint64_t* prow = m.row(r);
        const long long lo = static_cast<long long>(r) + 1;
        const long long hi = static_cast<long long>(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && hi - lo > 64)
#endif
        for (long long i = lo; i < hi; ++i) {
            std::uint64_t* irow = m.row(static_cast<std::size_t>(i));
            std::uint64_t f = irow[c];
            if (f == 0) continue;
            f = P - f;
            for (std::size_t j = c; j < cols; ++j)
                irow[j] = (irow[j] + f * prow[j]) % P;
        }
        (void)parallel;
        ++r;
    }
    return r;
}

} // namespace

std::size_t rank(DenseMatrix m) { return rank_impl(m, true); }
std::size_t rank_serial(DenseMatrix m) { return rank_impl(m, false); }

} // namespace branescope::modp
