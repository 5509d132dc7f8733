#pragma once

// Arithmetic over the prime field F_p, p = 2^31 - 1, plus a dense rank
// kernel.  Products of two reduced residues fit in 64 bits, so everything
// stays in machine words.

#include <cstdint>
#include <cstddef>
#include <vector>

namespace branescope::modp {

inline constexpr std::uint64_t P = 2147483647ull; // 2^31 - 1

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + P - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return (a * b) % P; }

std::uint64_t pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t inv(std::uint64_t a);

// Dense matrix stored row-major.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::uint64_t* row(std::size_t i) { return a_.data() + i * cols_; }
    const std::uint64_t* row(std::size_t i) const { return a_.data() + i * cols_; }

private:
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

// Gaussian elimination rank.  Pivot choice is deterministic (first nonzero
// row in order), so both variants return identical results; the parallel one
// fans the row updates out over OpenMP threads.
std::size_t rank(DenseMatrix m);
std::size_t rank_serial(DenseMatrix m);

} // namespace branescope::modp
