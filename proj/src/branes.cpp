#include "branescope/branes.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "branescope/errors.hpp"
#include "branescope/modp.hpp"

namespace branescope::branes {

using zlinalg::Rat;
using zlinalg::RatMatrix;

namespace {

constexpr long long kFmLimit = (1ll << 50);

long long to_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() / 8 ||
        v < std::numeric_limits<long long>::min() / 8)
        throw std::overflow_error("integer exceeds the region scanner range");
    return v.convert_to<long long>();
}

long long checked_mul(long long a, long long b) {
    if (a != 0 && (std::abs(a) > kFmLimit / std::max<long long>(1, std::abs(b))))
        throw std::overflow_error("Fourier-Motzkin coefficient overflow");
    return a * b;
}

long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

// One inequality sum_j a_j m_j >= c.
struct Row {
    std::vector<long long> a;
    long long c = 0;
};

void normalize(Row& r) {
    long long g = 0;
    for (long long v : r.a) g = std::gcd(g, v);
    if (g > 1) {
        for (auto& v : r.a) v /= g;
        r.c = ceil_div(r.c, g);
    }
}

bool row_less(const Row& x, const Row& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.c < y.c;
}

std::vector<Row> divisor_rows(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask) {
    std::size_t n = f.dim;
    std::vector<Row> rows;
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
        Row row;
        row.a.resize(n);
        long long off = to_ll(d.coeffs[r]);
        if (mask & (1u << r)) {
            for (std::size_t j = 0; j < n; ++j) row.a[j] = -to_ll(f.rays[r][j]);
            row.c = off + 1;
        } else {
            for (std::size_t j = 0; j < n; ++j) row.a[j] = to_ll(f.rays[r][j]);
            row.c = -off;
        }
        normalize(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Projects away variable `var`, leaving a system in the variables below it.
std::vector<Row> eliminate(const std::vector<Row>& rows, std::size_t var) {
    std::vector<Row> pos, neg, out;
    for (const auto& r : rows) {
        if (r.a[var] > 0)
            pos.push_back(r);
        else if (r.a[var] < 0)
            neg.push_back(r);
        else
            out.push_back(r);
    }
    for (const auto& p : pos) {
        for (const auto& q : neg) {
            Row combo;
            combo.a.resize(rows[0].a.size(), 0);
            long long alpha = p.a[var], beta = -q.a[var];
            for (std::size_t j = 0; j < combo.a.size(); ++j)
                combo.a[j] = checked_mul(beta, p.a[j]) + checked_mul(alpha, q.a[j]);
            combo.c = checked_mul(beta, p.c) + checked_mul(alpha, q.c);
            normalize(combo);
            out.push_back(std::move(combo));
        }
    }
    std::sort(out.begin(), out.end(), row_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Row& x, const Row& y) { return x.a == y.a && x.c == y.c; }),
              out.end());
    return out;
}

// systems[j] constrains variables 0..j-1; systems[n] is the input.
std::vector<std::vector<Row>> projection_tower(std::vector<Row> rows, std::size_t n) {
    std::vector<std::vector<Row>> systems(n + 1);
    systems[n] = std::move(rows);
    for (std::size_t j = n; j-- > 0;) systems[j] = eliminate(systems[j + 1], j);
    return systems;
}

bool base_feasible(const std::vector<Row>& consts) {
    for (const auto& r : consts)
        if (r.c > 0) return false;
    return true;
}

// Interval of variable `var` given the fixed prefix; empty -> lo > hi.
bool var_interval(const std::vector<Row>& rows, const std::vector<long long>& prefix,
                  std::size_t var, long long& lo, long long& hi) {
    bool has_lo = false, has_hi = false;
    lo = std::numeric_limits<long long>::min();
    hi = std::numeric_limits<long long>::max();
    for (const auto& r : rows) {
        long long s = 0;
        for (std::size_t k = 0; k < var; ++k) s += checked_mul(r.a[k], prefix[k]);
        long long rem = r.c - s;
        if (r.a[var] > 0) {
            lo = has_lo ? std::max(lo, ceil_div(rem, r.a[var])) : ceil_div(rem, r.a[var]);
            has_lo = true;
        } else if (r.a[var] < 0) {
            hi = has_hi ? std::min(hi, floor_div(rem, r.a[var])) : floor_div(rem, r.a[var]);
            has_hi = true;
        } else if (rem > 0) {
            return false;
        }
    }
    if (!has_lo || !has_hi)
        throw std::logic_error("region scan hit an unbounded direction");
    return lo <= hi;
}

Int region_scan(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask,
                std::vector<IntVec>* out) {
    if (d.coeffs.size() != f.rays.size())
        throw std::invalid_argument("divisor coefficient count does not match ray count");
    std::size_t n = f.dim;
    auto systems = projection_tower(divisor_rows(f, d, mask), n);
    if (!base_feasible(systems[0])) return 0;

    Int count = 0;
    std::vector<long long> prefix(n, 0);
    // depth-first over prefixes; the innermost variable is counted by interval
    auto recurse = [&](auto&& self, std::size_t j) -> void {
        long long lo, hi;
        if (!var_interval(systems[j + 1], prefix, j, lo, hi)) return;
        if (j + 1 == n && out == nullptr) {
            count += Int(hi) - Int(lo) + 1;
            return;
        }
        for (long long x = lo; x <= hi; ++x) {
            prefix[j] = x;
            if (j + 1 == n) {
                IntVec m(n);
                for (std::size_t k = 0; k < n; ++k) m[k] = prefix[k];
                out->push_back(std::move(m));
                count += 1;
            } else {
                self(self, j + 1);
            }
        }
    };
    recurse(recurse, 0);
    return count;
}

std::uint64_t ratmod(const Rat& q) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    Int p(modp::P);
    Int nm = num % p;
    if (nm < 0) nm += p;
    Int dm = den % p;
    if (dm == 0) throw std::logic_error("denominator divisible by the field characteristic");
    return modp::mul(nm.convert_to<std::uint64_t>(), modp::inv(dm.convert_to<std::uint64_t>()));
}

TorusDivisor sub(const TorusDivisor& x, const TorusDivisor& y) {
    TorusDivisor out = x;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= y.coeffs[i];
    return out;
}

std::size_t to_count(const Int& v) {
    if (v < 0) throw std::logic_error("negative dimension");
    return static_cast<std::size_t>(to_ll(v));
}

} // namespace

Int region_count(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask) {
    return region_scan(f, d, mask, nullptr);
}

std::vector<IntVec> region_points(const NormalFan& f, const TorusDivisor& d, std::uint32_t mask) {
    std::vector<IntVec> pts;
    region_scan(f, d, mask, &pts);
    return pts;
}

std::uint64_t derived_seed(std::uint64_t base, unsigned index) {
    // splitmix64 step keyed by the index
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<std::uint64_t> coefficient_vector(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint64_t> coeffs(count);
    for (auto& c : coeffs) c = 1 + gen() % (modp::P - 1);
    return coeffs;
}

HypersurfaceModel::HypersurfaceModel(const poly::LatticePolytope& p, std::uint64_t seed)
    : fan_(toric::normal_fan(p)), seed_(seed), cache_(fan_) {
    if (!poly::is_reflexive(p))
        throw NonReflexive("anticanonical hypersurface requires a reflexive polytope");
    if (fan_.rays.size() > 16)
        throw std::invalid_argument("too many rays for the subset cache");
    for (const auto& cp : poly::lattice_points(p)) monomials_.push_back(cp.m);

    for (std::uint32_t mask = 0; mask < (1u << fan_.rays.size()); ++mask) {
        const auto& dims = cache_.dims(mask);
        if (std::any_of(dims.begin(), dims.end(), [](std::size_t v) { return v > 0; }))
            interesting_.push_back(mask);
    }
}

TorusDivisor HypersurfaceModel::anticanonical() const {
    TorusDivisor d;
    d.coeffs.assign(fan_.rays.size(), Int(1));
    return d;
}

TorusDivisor HypersurfaceModel::structure_sheaf() const {
    TorusDivisor d;
    d.coeffs.assign(fan_.rays.size(), Int(0));
    return d;
}

TorusDivisor HypersurfaceModel::brane_l(long long power) const {
    TorusDivisor d;
    d.coeffs.resize(fan_.rays.size());
    Int scale = Int(power) * Int(fan_.dim - 1);
    for (std::size_t r = 0; r < d.coeffs.size(); ++r)
        d.coeffs[r] = scale * fan_.facet_offsets[r];
    return d;
}

std::vector<Int> HypersurfaceModel::level_dims(const TorusDivisor& d) const {
    auto it = level_cache_.find(d.coeffs);
    if (it != level_cache_.end()) return it->second;
    std::vector<Int> ld(fan_.dim + 1, Int(0));
    for (std::uint32_t mask : interesting_) {
        Int cnt = region_count(fan_, d, mask);
        if (cnt == 0) continue;
        const auto& dims = cache_.dims(mask);
        for (std::size_t l = 0; l <= fan_.dim; ++l)
            if (dims[l] > 0) ld[l] += cnt * Int(static_cast<long long>(dims[l]));
    }
    level_cache_.emplace(d.coeffs, ld);
    return ld;
}

std::size_t HypersurfaceModel::mu_rank(const TorusDivisor& e, std::size_t level,
                                       const std::vector<std::uint64_t>& coeffs,
                                       bool allow_certificates) const {
    TorusDivisor src = sub(e, anticanonical());
    Int src_dim = level_dims(src)[level];
    Int tgt_dim = level_dims(e)[level];
    if (src_dim == 0 || tgt_dim == 0) return 0;

    // Graded support at level 0 sits on characters with no violated rays and
    // at level n on characters violating every ray (Alexander duality), and
    // multiplication by the lex-extreme monomial of f is block-triangular
    // with unit diagonal there, certifying full rank.
    if (allow_certificates && level == 0) {
        if (tgt_dim < src_dim) throw std::logic_error("sections shrank under multiplication");
        return to_count(src_dim);
    }
    if (allow_certificates && level == fan_.dim) {
        if (src_dim < tgt_dim) throw std::logic_error("top-level support grew under multiplication");
        return to_count(tgt_dim);
    }

    if (src_dim > 20000 || tgt_dim > 20000 || src_dim * tgt_dim > Int(50000000))
        throw std::logic_error("dense rank fallback budget exceeded");

    struct Piece {
        std::uint32_t mask;
        std::size_t offset;
        std::size_t local;
    };
    std::vector<std::pair<IntVec, Piece>> sources;
    std::map<IntVec, Piece> targets;
    std::size_t scol = 0, trow = 0;
    for (std::uint32_t mask : interesting_) {
        std::size_t local = cache_.dims(mask)[level];
        if (local == 0) continue;
        for (auto& m : region_points(fan_, src, mask)) {
            sources.push_back({std::move(m), {mask, scol, local}});
            scol += local;
        }
        for (auto& m : region_points(fan_, e, mask)) {
            targets.emplace(std::move(m), Piece{mask, trow, local});
            trow += local;
        }
    }
    if (Int(static_cast<long long>(scol)) != src_dim || Int(static_cast<long long>(trow)) != tgt_dim)
        throw std::logic_error("piece enumeration disagrees with region counts");

    modp::DenseMatrix mat(trow, scol);
    for (const auto& [ms, ps] : sources) {
        for (std::size_t mi = 0; mi < monomials_.size(); ++mi) {
            IntVec mt(ms.size());
            for (std::size_t k = 0; k < ms.size(); ++k) mt[k] = ms[k] + monomials_[mi][k];
            auto it = targets.find(mt);
            if (it == targets.end()) continue;
            const Piece& pt = it->second;
            const RatMatrix& block = cache_.block(pt.mask, ps.mask, level);
            for (std::size_t i = 0; i < pt.local; ++i) {
                for (std::size_t j = 0; j < ps.local; ++j) {
                    const Rat& q = block.at(i, j);
                    if (q == 0) continue;
                    std::uint64_t& cell = mat.at(pt.offset + i, ps.offset + j);
                    cell = modp::add(cell, modp::mul(coeffs[mi], ratmod(q)));
                }
            }
        }
    }
    return modp::rank(mat);
}

std::vector<std::size_t> HypersurfaceModel::dims_for_coeffs(const TorusDivisor& e,
                                                            const std::vector<std::uint64_t>& coeffs,
                                                            bool allow_certificates) const {
    std::size_t n = fan_.dim;
    TorusDivisor src = sub(e, anticanonical());
    std::vector<Int> tgt_dims = level_dims(e);
    std::vector<Int> src_dims = level_dims(src);
    std::vector<std::size_t> rank(n + 1);
    for (std::size_t l = 0; l <= n; ++l) rank[l] = mu_rank(e, l, coeffs, allow_certificates);

    std::vector<std::size_t> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int coker = tgt_dims[i] - Int(static_cast<long long>(rank[i]));
        Int kernel = src_dims[i + 1] - Int(static_cast<long long>(rank[i + 1]));
        h[i] = to_count(coker + kernel);
    }
    return h;
}

std::vector<std::size_t> HypersurfaceModel::cohomology(const TorusDivisor& e) {
    toric::cartier_data(fan_, e); // NotCartier guard
    auto it = memo_.find(e.coeffs);
    if (it != memo_.end()) return it->second;

    for (unsigned attempt = 0; attempt < 3; ++attempt) {
        auto ca = coefficient_vector(monomials_.size(), derived_seed(seed_, 2 * attempt));
        auto cb = coefficient_vector(monomials_.size(), derived_seed(seed_, 2 * attempt + 1));
        auto da = dims_for_coeffs(e, ca, true);
        auto db = dims_for_coeffs(e, cb, true);
        if (da == db) {
            memo_.emplace(e.coeffs, da);
            return da;
        }
    }
    throw GenericityFailure("hypersurface cohomology did not stabilize across seeds");
}

std::vector<std::size_t> HypersurfaceModel::cohomology_bruteforce(const TorusDivisor& e) const {
    toric::cartier_data(fan_, e);
    auto ca = coefficient_vector(monomials_.size(), derived_seed(seed_, 0));
    auto cb = coefficient_vector(monomials_.size(), derived_seed(seed_, 1));
    auto da = dims_for_coeffs(e, ca, false);
    auto db = dims_for_coeffs(e, cb, false);
    if (da != db) throw GenericityFailure("reference cohomology disagrees across seeds");
    return da;
}

ExtTable ext_table(HypersurfaceModel& h, const BraneDescriptor& a, const BraneDescriptor& b) {
    ExtTable t;
    t.a = a.e;
    t.b = b.e;
    t.dims = h.cohomology(sub(b.e, a.e));
    return t;
}

bool serre_dual_check(HypersurfaceModel& h, const ExtTable& t) {
    std::vector<std::size_t> swapped = h.cohomology(sub(t.a, t.b));
    std::size_t top = swapped.size() - 1;
    for (std::size_t k = 0; k < t.dims.size(); ++k)
        if (t.dims[k] != swapped[top - k]) return false;
    return true;
}

SpanningReport spanning_scan(HypersurfaceModel& h, const BraneDescriptor& f,
                             std::size_t depth, std::size_t window, bool reverse) {
    if (window < 3 || depth < window)
        throw std::invalid_argument("spanning scan requires depth >= window >= 3");
    std::size_t n = h.dim();
    TorusDivisor el = h.brane_l();

    auto dims_at = [&](long long i) {
        TorusDivisor e = f.e;
        for (std::size_t r = 0; r < e.coeffs.size(); ++r) e.coeffs[r] -= Int(i) * el.coeffs[r];
        return h.cohomology(e); // Ext^*(L^i, F)
    };

    for (long long i0 = 0; i0 >= -static_cast<long long>(window); --i0) {
        for (std::size_t r = 0; r < n; ++r) {
            bool ok = true;
            for (long long i = i0; i >= i0 - static_cast<long long>(depth) && ok; --i)
                ok = dims_at(i)[r] > 0;
            if (!ok) continue;

            SpanningReport rep;
            rep.brane = f.e;
            rep.reverse = reverse;
            rep.i0 = i0;
            rep.window_length = depth + 1;
            rep.r = reverse ? static_cast<long long>(n - 1 - r) : static_cast<long long>(r);
            for (long long i = i0 - static_cast<long long>(depth); i <= i0; ++i) {
                std::vector<std::size_t> dims = dims_at(i);
                if (reverse) std::reverse(dims.begin(), dims.end());
                rep.samples.emplace_back(i, std::move(dims));
            }
            return rep;
        }
    }
    throw ScanExhausted("no stable ghost number within the scan window");
}

RectangleTable rectangle_table(HypersurfaceModel& h, const BraneDescriptor& f, long long b) {
    TorusDivisor e = f.e;
    TorusDivisor el = h.brane_l();
    for (std::size_t r = 0; r < e.coeffs.size(); ++r) e.coeffs[r] -= Int(b) * el.coeffs[r];
    std::vector<std::size_t> dims = h.cohomology(e);

    RectangleTable t;
    t.brane = f.e;
    t.b = b;
    t.r = 0;
    t.s = 0;
    for (std::size_t q = 0; q < dims.size(); ++q)
        t.entries.push_back({0, static_cast<int>(q), dims[q]});
    return t;
}

TriangleReport triangle_clauses(HypersurfaceModel& h, const BraneDescriptor& f, long long a,
                                const std::optional<BraneDescriptor>& other) {
    std::size_t n = h.dim();
    TorusDivisor la = h.brane_l(a);
    std::vector<std::size_t> ext_fl = h.cohomology(sub(la, f.e));
    std::vector<std::size_t> ext_fh(n, 0);
    if (other) ext_fh = h.cohomology(sub(other->e, f.e));

    TriangleReport rep;
    for (std::size_t k = 0; k < n; ++k)
        if (ext_fl[k] > 0) rep.s_set.push_back(static_cast<long long>(k));
    if (rep.s_set.empty())
        throw DomainError("no strings between the brane and the structure power");
    rep.k1 = rep.s_set.front();
    rep.k2 = rep.s_set.back();

    auto at = [&](const std::vector<std::size_t>& v, long long j) -> std::size_t {
        return (j < 0 || j >= static_cast<long long>(v.size())) ? 0 : v[j];
    };

    bool any_clause1 = false;
    for (long long j = -1; j <= static_cast<long long>(n); ++j) {
        if (!(j < rep.k1 - 1 || j > rep.k2)) continue;
        any_clause1 = true;
        std::size_t lhs = at(ext_fl, j) + at(ext_fh, j);
        std::size_t rhs = at(ext_fh, j);
        rep.clauses.push_back({1, j, lhs == rhs ? "verified" : "violated", lhs, rhs});
    }
    if (!any_clause1) rep.clauses.push_back({1, 0, "vacuous", 0, 0});

    std::vector<long long> clause2 = {rep.k1};
    if (rep.k2 - 1 != rep.k1) clause2.push_back(rep.k2 - 1);
    for (long long j : clause2) {
        std::size_t lhs = at(ext_fl, j) + at(ext_fh, j);
        std::size_t rhs = at(ext_fh, j);
        rep.clauses.push_back({2, j, lhs != rhs ? "verified" : "undecidable-at-dimension-level",
                               lhs, rhs});
    }
    return rep;
}

} // namespace branescope::branes
