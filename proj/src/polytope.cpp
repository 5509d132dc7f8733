#include "branescope/polytope.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "branescope/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace branescope::poly {

namespace {

using zlinalg::IntMatrix;
using zlinalg::RatMatrix;

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

long long to_ll(const Int& v) {
    if (v < std::numeric_limits<long long>::min() / 4 ||
        v > std::numeric_limits<long long>::max() / 4)
        throw std::overflow_error("lattice scan: bounding box out of range");
    return v.convert_to<long long>();
}

// Affine rank of a point set: rank of the differences to the first point.
std::size_t affine_rank(const std::vector<IntVec>& pts) {
    if (pts.size() <= 1) return 0;
    IntMatrix diffs(pts.size() - 1, pts[0].size());
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            diffs.at(i - 1, j) = pts[i][j] - pts[0][j];
    return zlinalg::rank_int(diffs);
}

} // namespace

LatticePolytope LatticePolytope::from_vertices(std::vector<IntVec> points, std::string name) {
    if (points.empty()) throw DegeneratePolytope("from_vertices: no points");
    const std::size_t n = points[0].size();
    if (n == 0) throw DegeneratePolytope("from_vertices: zero-dimensional ambient space");
    for (const IntVec& p : points)
        if (p.size() != n)
            throw std::invalid_argument("from_vertices: inconsistent point dimensions");

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    if (affine_rank(points) != n)
        throw DegeneratePolytope("from_vertices: points do not span the ambient space");

    // Every facet contains n affinely independent input points, so scanning
    // all n-subsets and keeping the supporting hyperplanes finds exactly the
    // facet list.  Desk-scale input sizes keep this quadratic-ish loop cheap.
    std::set<Facet> facets;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const std::size_t npts = points.size();
    while (true) {
        IntMatrix rows(n, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) rows.at(i, j) = points[idx[i]][j];
            rows.at(i, n) = 1;
        }
        std::vector<RatVec> ker = zlinalg::kernel_basis(rows);
        if (ker.size() == 1) {
            IntVec hp = zlinalg::primitive(ker[0]); // (normal | offset)
            IntVec normal(hp.begin(), hp.begin() + n);
            Int offset = hp[n];
            bool any_pos = false, any_neg = false;
            for (const IntVec& p : points) {
                Int s = zlinalg::dot(p, normal) + offset;
                if (s > 0) any_pos = true;
                if (s < 0) any_neg = true;
                if (any_pos && any_neg) break;
            }
            if (!(any_pos && any_neg)) {
                if (any_neg) {
                    for (Int& c : normal) c = -c;
                    offset = -offset;
                }
                facets.insert(Facet{std::move(normal), std::move(offset)});
            }
        }
        // next combination
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == npts - n + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }

    LatticePolytope poly;
    poly.dim_ = n;
    poly.name_ = std::move(name);
    poly.facets_.assign(facets.begin(), facets.end());

    // A point is a vertex iff its incident facet normals span the space.
    for (const IntVec& p : points) {
        std::vector<IntVec> incident;
        for (const Facet& f : poly.facets_)
            if (zlinalg::dot(p, f.normal) + f.offset == 0) incident.push_back(f.normal);
        if (incident.size() >= n && zlinalg::rank_int(IntMatrix::from_rows(incident)) == n)
            poly.vertices_.push_back(p);
    }
    std::sort(poly.vertices_.begin(), poly.vertices_.end());

    // Cross-check that the two representations agree.
    if (poly.vertices_.size() < n + 1)
        throw DegeneratePolytope("from_vertices: hull has too few vertices");
    for (const Facet& f : poly.facets_) {
        std::vector<IntVec> on_facet;
        for (const IntVec& v : poly.vertices_)
            if (zlinalg::dot(v, f.normal) + f.offset == 0) on_facet.push_back(v);
        if (on_facet.size() < n || affine_rank(on_facet) != n - 1)
            throw std::logic_error("from_vertices: facet not spanned by vertices");
    }
    return poly;
}

Int LatticePolytope::facet_slack(std::size_t facet, const IntVec& p) const {
    const Facet& f = facets_[facet];
    return zlinalg::dot(p, f.normal) + f.offset;
}

bool LatticePolytope::contains(const RatVec& p) const {
    for (const Facet& f : facets_) {
        Rat s(f.offset);
        for (std::size_t j = 0; j < dim_; ++j) s += p[j] * Rat(f.normal[j]);
        if (s < 0) return false;
    }
    return true;
}

bool is_reflexive(const LatticePolytope& p) {
    // Offsets all equal to one already forces the origin strictly inside;
    // any polytope without the origin inside has some offset <= 0.
    for (const Facet& f : p.facets())
        if (f.offset != 1) return false;
    return true;
}

LatticePolytope polar_dual(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw NonReflexive("polar_dual: polytope is not reflexive");
    std::vector<IntVec> duals;
    for (const Facet& f : p.facets()) duals.push_back(f.normal);
    return LatticePolytope::from_vertices(std::move(duals), p.name().empty() ? "" : p.name() + "_dual");
}

LatticePolytope dilate(const LatticePolytope& p, const Int& k) {
    if (k < 1) throw std::invalid_argument("dilate: factor must be >= 1");
    LatticePolytope q;
    q.dim_ = p.dim_;
    q.name_ = p.name_;
    q.vertices_.reserve(p.vertices_.size());
    for (const IntVec& v : p.vertices_) {
        IntVec w(v);
        for (Int& c : w) c *= k;
        q.vertices_.push_back(std::move(w));
    }
    q.facets_.reserve(p.facets_.size());
    for (const Facet& f : p.facets_) q.facets_.push_back(Facet{f.normal, f.offset * k});
    return q;
}

namespace {

// One scan row: all coordinates fixed except the last, whose feasible
// interval follows from the facet inequalities.
void scan_row(const LatticePolytope& p, const IntVec& prefix,
              std::vector<CharacterPoint>& out) {
    const std::size_t n = p.dim();
    Int lo, hi;
    bool lo_set = false, hi_set = false;
    for (const Facet& f : p.facets()) {
        Int rhs = -f.offset;
        for (std::size_t j = 0; j + 1 < n; ++j) rhs -= f.normal[j] * prefix[j];
        const Int& a = f.normal[n - 1];
        if (a == 0) {
            if (rhs > 0) return; // row infeasible
        } else if (a > 0) {
            Int bound = ceil_div(rhs, a);
            if (!lo_set || bound > lo) lo = bound, lo_set = true;
        } else {
            Int bound = floor_div(rhs, a);
            if (!hi_set || bound < hi) hi = bound, hi_set = true;
        }
    }
    if (!lo_set || !hi_set) throw std::logic_error("lattice scan: unbounded row");
    for (Int x = lo; x <= hi; ++x) {
        IntVec m(prefix);
        m[n - 1] = x;
        out.push_back(CharacterPoint{std::move(m)});
    }
}

std::vector<CharacterPoint> lattice_points_impl(const LatticePolytope& p, bool parallel) {
    const std::size_t n = p.dim();
    IntVec lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = p.vertices()[0][j];
        hi[j] = p.vertices()[0][j];
        for (const IntVec& v : p.vertices()) {
            if (v[j] < lo[j]) lo[j] = v[j];
            if (v[j] > hi[j]) hi[j] = v[j];
        }
    }
    // Row = choice of the first n-1 coordinates; row index is the lex rank.
    long long nrows = 1;
    std::vector<long long> lo_ll(n), width(n), stride(n, 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        lo_ll[j] = to_ll(lo[j]);
        width[j] = to_ll(hi[j]) - lo_ll[j] + 1;
        nrows *= width[j];
    }
    for (std::size_t j = n - 1; j-- > 0;)
        stride[j] = (j + 2 < n) ? stride[j + 1] * width[j + 1] : 1;
    std::vector<std::vector<CharacterPoint>> rows(static_cast<std::size_t>(nrows));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (long long r = 0; r < nrows; ++r) {
        IntVec prefix(n);
        long long rem = r;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            prefix[j] = Int(lo_ll[j] + rem / stride[j]);
            rem %= stride[j];
        }
        scan_row(p, prefix, rows[static_cast<std::size_t>(r)]);
    }
    (void)parallel;

    std::vector<CharacterPoint> out;
    for (auto& row : rows)
        for (auto& pt : row) out.push_back(std::move(pt));
    return out;
}

} // namespace

std::vector<CharacterPoint> lattice_points(const LatticePolytope& p) {
    return lattice_points_impl(p, true);
}

std::vector<CharacterPoint> lattice_points_serial(const LatticePolytope& p) {
    return lattice_points_impl(p, false);
}

} // namespace branescope::poly
