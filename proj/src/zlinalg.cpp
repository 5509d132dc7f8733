#include "branescope/zlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace branescope::zlinalg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: entry count does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw std::invalid_argument("IntMatrix: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("IntMatrix: shape mismatch in mul");
    IntMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                r.at(i, j) += v * other.at(k, j);
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

RatMatrix::RatMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()), a_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = Rat(m.at(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return RatMatrix(0, 0);
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw std::invalid_argument("RatMatrix: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::from_cols(const std::vector<RatVec>& cols) {
    if (cols.empty()) return RatMatrix(0, 0);
    RatMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows())
            throw std::invalid_argument("RatMatrix: ragged columns");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("RatMatrix: shape mismatch in mul");
    RatMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                r.at(i, j) += v * other.at(k, j);
        }
    return r;
}

RatVec RatMatrix::mul_vec(const RatVec& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("RatMatrix: shape mismatch in mul_vec");
    RatVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * x[j];
    return r;
}

namespace {

// Division with remainder minimizing |r|; keeps Smith reduction pivots small.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0) {
        Int babs = abs(b);
        if (2 * abs(r) > babs) q += (r > 0) == (b > 0) ? 1 : -1;
    }
    return q;
}

} // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithResult res{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Locate the entry of minimal absolute value in the submatrix and
        // bring it to (t,t); repeated Euclidean reduction then clears row and
        // column t.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d.at(i, j) == 0) continue;
                if (!found || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;

        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (d.at(i, t) == 0) continue;
            Int q = nearest_quotient(d.at(i, t), d.at(t, t));
            if (q != 0)
                for (std::size_t k = 0; k < cols; ++k) d.at(i, k) -= q * d.at(t, k);
            if (q != 0)
                for (std::size_t k = 0; k < rows; ++k) u.at(i, k) -= q * u.at(t, k);
            if (d.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (d.at(t, j) == 0) continue;
            Int q = nearest_quotient(d.at(t, j), d.at(t, t));
            if (q != 0)
                for (std::size_t k = 0; k < rows; ++k) d.at(k, j) -= q * d.at(k, t);
            if (q != 0)
                for (std::size_t k = 0; k < cols; ++k) v.at(k, j) -= q * v.at(k, t);
            if (d.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // Divisibility fix-up: fold a bad row in and reduce again.
        bool divides_all = true;
        for (std::size_t i = t + 1; i < rows && divides_all; ++i)
            for (std::size_t j = t + 1; j < cols && divides_all; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    for (std::size_t k = 0; k < cols; ++k) d.at(t, k) += d.at(i, k);
                    for (std::size_t k = 0; k < rows; ++k) u.at(t, k) += u.at(i, k);
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (d.at(t, t) < 0) {
            for (std::size_t k = 0; k < cols; ++k) d.at(t, k) = -d.at(t, k);
            for (std::size_t k = 0; k < rows; ++k) u.at(t, k) = -u.at(t, k);
        }
        ++t;
    }
    return res;
}

namespace {

// Bareiss fraction-free elimination; returns the list of pivot columns and
// transforms m in place.  Used by both det and the integer rank.
std::size_t bareiss(IntMatrix& m, Int* determinant) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Int prev = 1;
    std::size_t r = 0;
    int sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            m.swap_rows(p, r);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        ++r;
    }
    if (determinant) {
        if (rows != cols) throw std::invalid_argument("det: matrix not square");
        if (r < rows)
            *determinant = 0;
        else
            *determinant = sign > 0 ? prev : -prev;
    }
    return r;
}

} // namespace

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    if (m.rows() == 0) return 1;
    IntMatrix work = m;
    Int result;
    bareiss(work, &result);
    return result;
}

std::size_t rank_int(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix work = m;
    return bareiss(work, nullptr);
}

std::size_t rank_rational(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix cleared(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            l = lcm(l, Int(denominator(m.at(i, j))));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m.at(i, j) * Rat(l);
            cleared.at(i, j) = Int(numerator(scaled));
        }
    }
    return rank_int(cleared);
}

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<RatVec> kernel_basis(const RatMatrix& m) {
    const std::size_t cols = m.cols();
    if (cols == 0) return {};
    RatMatrix work = m;
    std::vector<std::size_t> pivots = rref(work);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVec x(cols, Rat(0));
        x[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -work.at(r, f);
        IntVec prim = primitive(x);
        RatVec out(cols);
        for (std::size_t j = 0; j < cols; ++j) out[j] = Rat(prim[j]);
        basis.push_back(std::move(out));
    }
    return basis;
}

std::vector<RatVec> kernel_basis(const IntMatrix& m) {
    return kernel_basis(RatMatrix(m));
}

bool solve(const RatMatrix& m, const RatVec& b, RatVec& x) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == m.cols()) return false;
    x.assign(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols());
    return true;
}

IntVec primitive(const RatVec& v) {
    Int l = 1;
    for (const Rat& q : v) l = lcm(l, Int(denominator(q)));
    IntVec w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(l);
        w[i] = Int(numerator(scaled));
        g = gcd(g, w[i]);
    }
    if (g == 0) return w;
    int sign = 0;
    for (const Int& c : w)
        if (c != 0) {
            sign = c > 0 ? 1 : -1;
            break;
        }
    if (sign < 0) g = -g;
    for (Int& c : w) c /= g;
    return w;
}

IntVec primitive(const IntVec& v) {
    RatVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return primitive(q);
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: shape mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int rat_floor(const Rat& q) {
    Int n(numerator(q)), d(denominator(q));
    Int r = n / d;
    if (n % d != 0 && n < 0) --r;
    return r;
}

Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

} // namespace branescope::zlinalg
