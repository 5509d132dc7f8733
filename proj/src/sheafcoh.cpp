#include "branescope/sheafcoh.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "branescope/errors.hpp"

namespace branescope::sheafcoh {

using zlinalg::Int;
using zlinalg::Rat;
using zlinalg::RatMatrix;
using zlinalg::RatVec;

namespace {

// Cochain-level data for one complex.  Level s is spanned by the faces of
// size s (level 0 is the empty face), so H at level s is H~^(s-1) and lines
// up with the h^s contribution of a graded divisor piece.
struct ComplexData {
    std::vector<std::vector<std::vector<int>>> faces; // [level][i] = sorted vertex list
    std::vector<std::map<std::vector<int>, std::size_t>> index; // per level
    std::vector<RatMatrix> delta; // delta[s] : level s -> level s+1

    struct Level {
        std::size_t hdim = 0;
        std::size_t bdim = 0;
        // Columns: a basis of im(delta[s-1]) followed by representative
        // cocycles; together a basis of ker(delta[s]).
        RatMatrix basis{0, 0};
        std::vector<std::size_t> rep_cols; // column indices of the representatives
    };
    std::vector<Level> levels;

    std::size_t hdim(std::size_t s) const {
        return s < levels.size() ? levels[s].hdim : 0;
    }

    // Coordinates of a cocycle's class in the representative basis.
    RatVec reduce(std::size_t s, const RatVec& cocycle) const;
};

RatVec ComplexData::reduce(std::size_t s, const RatVec& cocycle) const {
    const Level& lv = levels.at(s);
    RatVec x;
    if (lv.basis.cols() == 0) {
        bool zero = std::all_of(cocycle.begin(), cocycle.end(),
                                [](const Rat& v) { return v == 0; });
        if (!zero) throw std::logic_error("nonzero cocycle in zero-rank level");
        return RatVec(lv.hdim, Rat(0));
    }
    if (!zlinalg::solve(lv.basis, cocycle, x))
        throw std::logic_error("vector is not a cocycle");
    RatVec out(lv.hdim);
    for (std::size_t k = 0; k < lv.hdim; ++k) out[k] = x[lv.bdim + k];
    return out;
}

ComplexData build_complex(const SupportComplex& c) {
    ComplexData d;
    std::size_t top = c.max_level();
    d.faces.resize(top + 1);
    d.index.resize(top + 1);
    d.faces[0].push_back({}); // empty face
    d.index[0][{}] = 0;
    for (const auto& f : c.faces) {
        std::size_t s = f.size();
        d.index[s][f] = d.faces[s].size();
        d.faces[s].push_back(f);
    }

    d.delta.resize(top + 1);
    for (std::size_t s = 0; s <= top; ++s) {
        std::size_t rows = s + 1 <= top ? d.faces[s + 1].size() : 0;
        RatMatrix m(rows, d.faces[s].size());
        if (rows > 0) {
            for (std::size_t g = 0; g < d.faces[s + 1].size(); ++g) {
                const auto& big = d.faces[s + 1][g];
                std::vector<int> sub(big.size() - 1);
                for (std::size_t k = 0; k < big.size(); ++k) {
                    // sub = big with vertex k removed
                    std::size_t w = 0;
                    for (std::size_t j = 0; j < big.size(); ++j)
                        if (j != k) sub[w++] = big[j];
                    auto it = d.index[s].find(sub);
                    if (it == d.index[s].end())
                        throw std::logic_error("face set not closed under subsets");
                    m.at(g, it->second) = (k % 2 == 0) ? 1 : -1;
                }
            }
        }
        d.delta[s] = std::move(m);
    }

    d.levels.resize(top + 1);
    for (std::size_t s = 0; s <= top; ++s) {
        auto& lv = d.levels[s];
        std::size_t nf = d.faces[s].size();

        std::vector<RatVec> cocycles = zlinalg::kernel_basis(d.delta[s]);

        std::vector<std::size_t> bcols;
        if (s > 0 && d.delta[s - 1].cols() > 0) {
            RatMatrix prev = d.delta[s - 1];
            bcols = zlinalg::rref(prev);
        }

        RatMatrix a(nf, bcols.size() + cocycles.size());
        for (std::size_t j = 0; j < bcols.size(); ++j)
            for (std::size_t i = 0; i < nf; ++i)
                a.at(i, j) = d.delta[s - 1].at(i, bcols[j]);
        for (std::size_t j = 0; j < cocycles.size(); ++j)
            for (std::size_t i = 0; i < nf; ++i)
                a.at(i, bcols.size() + j) = cocycles[j][i];

        RatMatrix probe = a;
        std::vector<std::size_t> pivots = zlinalg::rref(probe);

        lv.bdim = bcols.size();
        std::vector<std::size_t> keep; // image columns, then representative columns
        for (std::size_t j = 0; j < lv.bdim; ++j) keep.push_back(j);
        for (std::size_t p : pivots)
            if (p >= lv.bdim) keep.push_back(p);
        if (pivots.size() != keep.size())
            throw std::logic_error("coboundaries escaped the cocycle space");

        lv.hdim = keep.size() - lv.bdim;
        lv.basis = RatMatrix(nf, keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            for (std::size_t i = 0; i < nf; ++i)
                lv.basis.at(i, j) = a.at(i, keep[j]);
        for (std::size_t j = lv.bdim; j < keep.size(); ++j) lv.rep_cols.push_back(j);
    }
    return d;
}

std::vector<RatMatrix> restriction_matrices(const ComplexData& sub, const ComplexData& super) {
    std::size_t top = super.levels.size();
    std::vector<RatMatrix> out(top);
    for (std::size_t s = 0; s < top; ++s) {
        std::size_t rows = sub.hdim(s);
        std::size_t cols = super.hdim(s);
        RatMatrix m(rows, cols);
        if (rows > 0 && cols > 0) {
            const auto& lv = super.levels[s];
            for (std::size_t j = 0; j < cols; ++j) {
                std::size_t col = lv.rep_cols[j];
                RatVec restricted(sub.faces[s].size(), Rat(0));
                for (std::size_t i = 0; i < sub.faces[s].size(); ++i) {
                    auto it = super.index[s].find(sub.faces[s][i]);
                    if (it != super.index[s].end())
                        restricted[i] = lv.basis.at(it->second, col);
                }
                RatVec coords = sub.reduce(s, restricted);
                for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = coords[i];
            }
        }
        out[s] = std::move(m);
    }
    return out;
}

long long to_ll_checked(const Int& v) {
    if (v > std::numeric_limits<long long>::max() / 4 ||
        v < std::numeric_limits<long long>::min() / 4)
        throw std::overflow_error("character box exceeds 64-bit range");
    return v.convert_to<long long>();
}

} // namespace

SupportComplex SupportComplex::from_faces(std::vector<std::vector<int>> faces,
                                          std::vector<int> isolated) {
    std::set<std::vector<int>> closed;
    std::set<int> verts(isolated.begin(), isolated.end());
    // downward closure by subset masks of each given face
    for (auto f : faces) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        if (f.size() > 31) throw std::invalid_argument("face too large");
        for (int v : f) verts.insert(v);
        std::uint32_t full = (1u << f.size()) - 1;
        for (std::uint32_t m = 1; m <= full; ++m) {
            std::vector<int> g;
            for (std::size_t k = 0; k < f.size(); ++k)
                if (m & (1u << k)) g.push_back(f[k]);
            closed.insert(std::move(g));
        }
    }
    for (int v : verts) closed.insert({v});

    SupportComplex c;
    c.vertices.assign(verts.begin(), verts.end());
    c.faces.assign(closed.begin(), closed.end());
    std::sort(c.faces.begin(), c.faces.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return c;
}

std::size_t SupportComplex::max_level() const {
    std::size_t top = 0;
    for (const auto& f : faces) top = std::max(top, f.size());
    return top;
}

bool SupportComplex::subcomplex_of(const SupportComplex& other) const {
    std::set<std::vector<int>> have(other.faces.begin(), other.faces.end());
    for (const auto& f : faces)
        if (!have.count(f)) return false;
    return true;
}

bool FanComplex::has_face(std::uint32_t mask) const {
    return std::binary_search(faces.begin(), faces.end(), mask);
}

FanComplex fan_complex(const NormalFan& f) {
    if (!toric::is_simplicial(f))
        throw NonSimplicialFan("fan complex requires a simplicial fan");
    if (f.rays.size() > 31) throw std::invalid_argument("too many rays");
    std::set<std::uint32_t> faces;
    for (const auto& cone : f.max_cones) {
        std::uint32_t full = 0;
        for (std::size_t r : cone) full |= 1u << r;
        // all submasks, including the empty face
        std::uint32_t sub = full;
        while (true) {
            faces.insert(sub);
            if (sub == 0) break;
            sub = (sub - 1) & full;
        }
    }
    FanComplex fc;
    fc.nrays = f.rays.size();
    fc.faces.assign(faces.begin(), faces.end());
    return fc;
}

SupportComplex full_subcomplex(const FanComplex& fc, std::uint32_t rays_mask) {
    std::vector<std::vector<int>> faces;
    for (std::uint32_t m : fc.faces) {
        if (m == 0 || (m & ~rays_mask) != 0) continue;
        std::vector<int> f;
        for (std::size_t r = 0; r < fc.nrays; ++r)
            if (m & (1u << r)) f.push_back(static_cast<int>(r));
        faces.push_back(std::move(f));
    }
    std::vector<int> isolated;
    for (std::size_t r = 0; r < fc.nrays; ++r)
        if ((rays_mask & (1u << r)) && fc.has_face(1u << r)) isolated.push_back(static_cast<int>(r));
    return SupportComplex::from_faces(std::move(faces), std::move(isolated));
}

std::uint32_t negative_rays(const NormalFan& f, const TorusDivisor& d, const IntVec& m) {
    std::uint32_t mask = 0;
    for (std::size_t r = 0; r < f.rays.size(); ++r)
        if (zlinalg::dot(m, f.rays[r]) < -d.coeffs[r]) mask |= 1u << r;
    return mask;
}

std::vector<std::size_t> reduced_cohomology_dims(const SupportComplex& c) {
    ComplexData d = build_complex(c);
    std::vector<std::size_t> dims(d.levels.size());
    for (std::size_t s = 0; s < d.levels.size(); ++s) dims[s] = d.levels[s].hdim;
    return dims;
}

std::vector<RatMatrix> inclusion_map(const SupportComplex& src, const SupportComplex& dst) {
    if (!src.subcomplex_of(dst))
        throw NotASubcomplex("restriction source is not a subcomplex of the target");
    ComplexData a = build_complex(src);
    ComplexData b = build_complex(dst);
    return restriction_matrices(a, b);
}

struct SubcomplexCache::Impl {
    FanComplex fc;
    std::size_t dim = 0;
    std::map<std::uint32_t, ComplexData> complexes;
    std::map<std::uint32_t, std::vector<std::size_t>> dims;
    std::map<std::tuple<std::uint32_t, std::uint32_t>, std::vector<RatMatrix>> blocks;

    ComplexData& data(std::uint32_t mask) {
        auto it = complexes.find(mask);
        if (it == complexes.end())
            it = complexes.emplace(mask, build_complex(full_subcomplex(fc, mask))).first;
        return it->second;
    }
};

SubcomplexCache::SubcomplexCache(const NormalFan& f) : impl_(std::make_shared<Impl>()) {
    impl_->fc = fan_complex(f);
    impl_->dim = f.dim;
}

std::size_t SubcomplexCache::nrays() const { return impl_->fc.nrays; }
std::size_t SubcomplexCache::dim() const { return impl_->dim; }

const std::vector<std::size_t>& SubcomplexCache::dims(std::uint32_t mask) {
    auto it = impl_->dims.find(mask);
    if (it == impl_->dims.end()) {
        ComplexData& d = impl_->data(mask);
        std::vector<std::size_t> v(impl_->dim + 1, 0);
        for (std::size_t s = 0; s < v.size(); ++s) v[s] = d.hdim(s);
        it = impl_->dims.emplace(mask, std::move(v)).first;
    }
    return it->second;
}

const RatMatrix& SubcomplexCache::block(std::uint32_t sub, std::uint32_t super, std::size_t level) {
    if ((sub & ~super) != 0)
        throw NotASubcomplex("block requires nested ray sets");
    auto key = std::make_tuple(sub, super);
    auto it = impl_->blocks.find(key);
    if (it == impl_->blocks.end()) {
        auto mats = restriction_matrices(impl_->data(sub), impl_->data(super));
        mats.resize(impl_->dim + 1, RatMatrix(0, 0));
        for (std::size_t s = 0; s < mats.size(); ++s) {
            // pad to the declared level dimensions
            std::size_t rows = impl_->data(sub).hdim(s);
            std::size_t cols = impl_->data(super).hdim(s);
            if (mats[s].rows() != rows || mats[s].cols() != cols) mats[s] = RatMatrix(rows, cols);
        }
        it = impl_->blocks.emplace(key, std::move(mats)).first;
    }
    return it->second.at(level);
}

SupportComplex SubcomplexCache::subcomplex(std::uint32_t mask) {
    return full_subcomplex(impl_->fc, mask);
}

namespace {

GradedCohomology divisor_cohomology_impl(const NormalFan& f, const TorusDivisor& d,
                                         bool parallel) {
    if (d.coeffs.size() != f.rays.size())
        throw std::invalid_argument("divisor coefficient count does not match ray count");
    SubcomplexCache cache(f);
    std::size_t n = f.dim;
    std::size_t nrays = f.rays.size();

    // All subcomplex ranks up front; the scan then only classifies masks.
    std::vector<std::vector<std::size_t>> dims_by_mask(std::size_t(1) << nrays);
    for (std::uint32_t mask = 0; mask < dims_by_mask.size(); ++mask)
        dims_by_mask[mask] = cache.dims(mask);

    std::vector<zlinalg::RatVec> corners = toric::rational_corners(f, d);
    std::vector<long long> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int mn = zlinalg::rat_floor(corners[0][j]);
        Int mx = zlinalg::rat_ceil(corners[0][j]);
        for (const auto& c : corners) {
            mn = std::min(mn, zlinalg::rat_floor(c[j]));
            mx = std::max(mx, zlinalg::rat_ceil(c[j]));
        }
        lo[j] = to_ll_checked(mn) - 1;
        hi[j] = to_ll_checked(mx) + 1;
    }

    std::vector<std::vector<long long>> ray_ll(nrays, std::vector<long long>(n));
    std::vector<long long> off_ll(nrays);
    for (std::size_t r = 0; r < nrays; ++r) {
        for (std::size_t j = 0; j < n; ++j) ray_ll[r][j] = to_ll_checked(f.rays[r][j]);
        off_ll[r] = to_ll_checked(d.coeffs[r]);
    }

    GradedCohomology out;
    out.divisor = d;
    for (int round = 0; round < 64; ++round) {
        std::vector<long long> width(n);
        long long total = 1;
        for (std::size_t j = 0; j < n; ++j) {
            width[j] = hi[j] - lo[j] + 1;
            if (total > (1ll << 40) / width[j])
                throw std::overflow_error("character box too large to scan");
            total *= width[j];
        }

        std::vector<std::uint32_t> masks(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static) if (parallel)
        for (long long idx = 0; idx < total; ++idx) {
            long long rest = idx;
            std::uint32_t mask = 0;
            std::vector<long long> m(n);
            for (std::size_t j = n; j-- > 0;) {
                m[j] = lo[j] + rest % width[j];
                rest /= width[j];
            }
            for (std::size_t r = 0; r < nrays; ++r) {
                long long s = 0;
                for (std::size_t j = 0; j < n; ++j) s += m[j] * ray_ll[r][j];
                if (s < -off_ll[r]) mask |= 1u << r;
            }
            masks[static_cast<std::size_t>(idx)] = mask;
        }

        out.pieces.clear();
        out.totals.assign(n + 1, 0);
        bool boundary_hit = false;
        for (long long idx = 0; idx < total; ++idx) {
            const auto& dims = dims_by_mask[masks[static_cast<std::size_t>(idx)]];
            bool any = std::any_of(dims.begin(), dims.end(), [](std::size_t v) { return v > 0; });
            if (!any) continue;
            long long rest = idx;
            IntVec m(n);
            bool on_edge = false;
            for (std::size_t j = n; j-- > 0;) {
                long long mj = lo[j] + rest % width[j];
                rest /= width[j];
                m[j] = mj;
                if (mj == lo[j] || mj == hi[j]) on_edge = true;
            }
            if (on_edge) boundary_hit = true;
            out.pieces.emplace(std::move(m), dims);
            for (std::size_t i = 0; i <= n; ++i) out.totals[i] += dims[i];
        }
        if (!boundary_hit) return out;
        for (std::size_t j = 0; j < n; ++j) {
            --lo[j];
            ++hi[j];
        }
    }
    throw std::logic_error("graded support did not stabilize");
}

} // namespace

GradedCohomology divisor_cohomology(const NormalFan& f, const TorusDivisor& d) {
    return divisor_cohomology_impl(f, d, true);
}

GradedCohomology divisor_cohomology_serial(const NormalFan& f, const TorusDivisor& d) {
    return divisor_cohomology_impl(f, d, false);
}

} // namespace branescope::sheafcoh
