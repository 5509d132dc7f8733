#pragma once

// Exact integer and rational linear algebra.  Everything here is computed
// without rounding: entries are arbitrary-precision integers or canonical
// fractions, so ranks, kernels and normal forms are exact at any size.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace branescope::zlinalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    explicit RatMatrix(const IntMatrix& m);
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<RatVec>& rows);
    static RatMatrix from_cols(const std::vector<RatVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix mul(const RatMatrix& other) const;
    RatVec mul_vec(const RatVec& x) const;
    bool operator==(const RatMatrix& other) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Smith normal form: unimodular U, V with U * m * V = D, D diagonal with
// d_1 | d_2 | ... and nonnegative diagonal entries.
struct SmithResult {
    IntMatrix u, d, v;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Exact determinant (Bareiss fraction-free elimination).
Int det(const IntMatrix& m);

// Rank over Q.  Denominators are cleared row by row (rank-preserving) and the
// integer matrix is reduced fraction-free.
std::size_t rank_rational(const RatMatrix& m);
std::size_t rank_int(const IntMatrix& m);

// Basis of the right kernel {x : m x = 0}.  Each basis vector is scaled to a
// primitive integer vector whose first nonzero entry is positive, so the
// result is deterministic.
std::vector<RatVec> kernel_basis(const RatMatrix& m);
std::vector<RatVec> kernel_basis(const IntMatrix& m);

// Reduced row echelon form in place; returns pivot column per eliminated row.
std::vector<std::size_t> rref(RatMatrix& m);

// Solve m x = b over Q.  Returns false when inconsistent; x gets the unique
// solution with free variables set to zero.
bool solve(const RatMatrix& m, const RatVec& b, RatVec& x);

// Scale a rational vector to the unique primitive integer vector on the same
// ray (first nonzero entry positive).  Zero vectors stay zero.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

Int dot(const IntVec& a, const IntVec& b);

Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

} // namespace branescope::zlinalg
