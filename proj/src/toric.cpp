#include "branescope/toric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "branescope/errors.hpp"

namespace branescope::toric {

namespace {

using zlinalg::IntMatrix;
using zlinalg::RatMatrix;

RatVec solve_cone(const NormalFan& f, const std::vector<std::size_t>& cone,
                  const TorusDivisor& d) {
    const std::size_t n = f.dim;
    RatMatrix a(cone.size(), n);
    RatVec b(cone.size());
    for (std::size_t i = 0; i < cone.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rat(f.rays[cone[i]][j]);
        b[i] = Rat(-d.coeffs[cone[i]]);
    }
    RatVec m;
    if (!zlinalg::solve(a, b, m))
        throw std::logic_error("cone corner system inconsistent");
    return m;
}

} // namespace

std::size_t NormalFan::ray_index(const IntVec& ray) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == ray) return i;
    throw std::invalid_argument("ray_index: no such ray");
}

NormalFan normal_fan(const LatticePolytope& p) {
    for (const poly::Facet& f : p.facets())
        if (f.offset < 1)
            throw DegeneratePolytope("normal_fan: origin not strictly interior");

    NormalFan fan;
    fan.dim = p.dim();
    for (const poly::Facet& f : p.facets()) {
        fan.rays.push_back(f.normal);
        fan.facet_offsets.push_back(f.offset);
    }
    for (const IntVec& v : p.vertices()) {
        std::vector<std::size_t> cone;
        for (std::size_t r = 0; r < fan.rays.size(); ++r)
            if (zlinalg::dot(v, fan.rays[r]) + fan.facet_offsets[r] == 0) cone.push_back(r);
        fan.max_cones.push_back(std::move(cone));
        fan.cone_vertex.push_back(v);
    }
    return fan;
}

bool is_simplicial(const NormalFan& f) {
    for (const auto& cone : f.max_cones) {
        if (cone.size() != f.dim) return false;
        std::vector<IntVec> gens;
        for (std::size_t r : cone) gens.push_back(f.rays[r]);
        if (zlinalg::rank_int(IntMatrix::from_rows(gens)) != f.dim) return false;
    }
    return true;
}

TorusDivisor canonical_divisor(const NormalFan& f) {
    return TorusDivisor{IntVec(f.rays.size(), Int(-1))};
}

std::vector<RatVec> rational_corners(const NormalFan& f, const TorusDivisor& d) {
    if (!is_simplicial(f)) throw NonSimplicialFan("rational_corners: fan is not simplicial");
    if (d.coeffs.size() != f.rays.size())
        throw std::invalid_argument("divisor coefficient count does not match ray count");
    std::vector<RatVec> corners;
    corners.reserve(f.max_cones.size());
    for (const auto& cone : f.max_cones) corners.push_back(solve_cone(f, cone, d));
    return corners;
}

CartierData cartier_data(const NormalFan& f, const TorusDivisor& d) {
    std::vector<RatVec> corners = rational_corners(f, d);
    CartierData cd;
    for (const RatVec& m : corners) {
        IntVec mi(m.size());
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (denominator(m[j]) != 1)
                throw NotCartier("cartier_data: local character is not integral");
            mi[j] = Int(numerator(m[j]));
        }
        cd.m_sigma.push_back(std::move(mi));
    }
    return cd;
}

namespace {

// Bounded semigroup-generation certificate at one vertex of the divisor
// polytope.  Differences of lattice points of P_d from the vertex must
// generate the dual cone semigroup; we verify every semigroup element up to
// the largest grade the differences reach.
bool semigroup_generated(const NormalFan& f, const std::vector<std::size_t>& cone,
                         const IntVec& vertex, const std::vector<CharacterPoint>& pd_points) {
    const std::size_t n = f.dim;

    std::vector<IntVec> gens;
    for (const CharacterPoint& p : pd_points) {
        IntVec g(n);
        bool zero = true;
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = p.m[j] - vertex[j];
            if (g[j] != 0) zero = false;
        }
        if (!zero) gens.push_back(std::move(g));
    }

    auto grade = [&](const IntVec& x) {
        Int s = 0;
        for (std::size_t r : cone) s += zlinalg::dot(x, f.rays[r]);
        return s;
    };
    auto in_dual_cone = [&](const IntVec& x) {
        for (std::size_t r : cone)
            if (zlinalg::dot(x, f.rays[r]) < 0) return false;
        return true;
    };

    for (const IntVec& g : gens)
        if (!in_dual_cone(g)) return false; // not even locally convex at this vertex

    Int bound = 0;
    for (const IntVec& g : gens) bound = std::max(bound, grade(g));

    // Rays of the dual cone: dual basis vectors of the cone generators.
    RatMatrix a(cone.size(), n);
    for (std::size_t i = 0; i < cone.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rat(f.rays[cone[i]][j]);
    std::vector<IntVec> dual_rays;
    for (std::size_t i = 0; i < cone.size(); ++i) {
        RatVec e(cone.size(), Rat(0));
        e[i] = 1;
        RatVec w;
        if (!zlinalg::solve(a, e, w))
            throw std::logic_error("dual ray system inconsistent");
        IntVec wi = zlinalg::primitive(w); // may flip the lead sign; restore orientation
        if (zlinalg::dot(wi, f.rays[cone[i]]) < 0)
            for (Int& c : wi) c = -c;
        dual_rays.push_back(std::move(wi));
    }

    // Bounding box of {x in dual cone : grade(x) <= bound} from its vertices
    // 0 and bound * w / grade(w).
    RatVec lo(n, Rat(0)), hi(n, Rat(0));
    for (const IntVec& w : dual_rays) {
        Int gw = grade(w);
        if (gw <= 0) throw std::logic_error("dual ray with nonpositive grade");
        for (std::size_t j = 0; j < n; ++j) {
            Rat c = Rat(bound * w[j]) / Rat(gw);
            lo[j] = std::min(lo[j], c);
            hi[j] = std::max(hi[j], c);
        }
    }

    // Enumerate semigroup elements up to the bound, in grade order.
    std::map<IntVec, char> reachable; // 1 = representable, 0 = not yet
    std::vector<IntVec> elements;
    IntVec x(n);
    auto scan = [&](auto&& self, std::size_t coord) -> void {
        if (coord == n) {
            if (in_dual_cone(x) && grade(x) <= bound) elements.push_back(x);
            return;
        }
        for (Int c = zlinalg::rat_floor(lo[coord]); c <= zlinalg::rat_ceil(hi[coord]); ++c) {
            x[coord] = c;
            self(self, coord + 1);
        }
    };
    scan(scan, 0);
    std::sort(elements.begin(), elements.end(), [&](const IntVec& p, const IntVec& q) {
        Int gp = grade(p), gq = grade(q);
        if (gp != gq) return gp < gq;
        return p < q;
    });

    for (const IntVec& e : elements) {
        bool zero = std::all_of(e.begin(), e.end(), [](const Int& c) { return c == 0; });
        if (zero) {
            reachable[e] = 1;
            continue;
        }
        char ok = 0;
        for (const IntVec& g : gens) {
            IntVec rest(n);
            for (std::size_t j = 0; j < n; ++j) rest[j] = e[j] - g[j];
            auto it = reachable.find(rest);
            if (it != reachable.end() && it->second) {
                ok = 1;
                break;
            }
        }
        reachable[e] = ok;
        if (!ok) return false;
    }
    return true;
}

} // namespace

bool is_very_ample(const NormalFan& f, const TorusDivisor& d) {
    CartierData cd = cartier_data(f, d); // throws NotCartier / NonSimplicialFan

    // Ample iff the support function is strictly convex: each local character
    // must satisfy the inequalities of all other rays strictly.
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        std::vector<bool> in_cone(f.rays.size(), false);
        for (std::size_t r : f.max_cones[c]) in_cone[r] = true;
        for (std::size_t r = 0; r < f.rays.size(); ++r) {
            if (in_cone[r]) continue;
            if (zlinalg::dot(cd.m_sigma[c], f.rays[r]) + d.coeffs[r] <= 0) return false;
        }
    }

    // P_d = conv of the local characters (ample case); the lattice points
    // feed the per-vertex semigroup test.
    std::vector<IntVec> corner_pts = cd.m_sigma;
    LatticePolytope pd = LatticePolytope::from_vertices(corner_pts);
    std::vector<CharacterPoint> pts = poly::lattice_points(pd);

    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        if (!semigroup_generated(f, f.max_cones[c], cd.m_sigma[c], pts)) return false;
    return true;
}

EmbeddingData embedding(const LatticePolytope& p) {
    if (!poly::is_reflexive(p)) throw NonReflexive("embedding: polytope is not reflexive");
    if (p.dim() < 2) throw DegeneratePolytope("embedding: dimension must be at least 2");
    EmbeddingData e;
    e.polytope = poly::dilate(p, Int(p.dim() - 1));
    e.monomials = poly::lattice_points(e.polytope);
    e.count = e.monomials.size();
    e.target_dim = e.count - 1;
    return e;
}

RatVec evaluate_embedding(const EmbeddingData& e, const RatVec& z) {
    if (z.size() != e.polytope.dim())
        throw std::invalid_argument("evaluate_embedding: wrong point dimension");
    for (const Rat& c : z)
        if (c == 0) throw NotInTorus("evaluate_embedding: coordinate vanishes");
    RatVec out;
    out.reserve(e.monomials.size());
    for (const CharacterPoint& mono : e.monomials) {
        Rat val(1);
        for (std::size_t j = 0; j < z.size(); ++j) {
            Int exp = mono.m[j];
            Rat base = exp >= 0 ? z[j] : Rat(1) / z[j];
            Int reps = abs(exp);
            for (Int k = 0; k < reps; ++k) val *= base;
        }
        out.push_back(std::move(val));
    }
    return out;
}

} // namespace branescope::toric
