#include <doctest.h>

#include <random>

#include "branescope/errors.hpp"
#include "branescope/sheafcoh.hpp"
#include "support/cech_oracle.hpp"
#include "support/fixtures.hpp"

using namespace branescope;
using namespace branescope::sheafcoh;
using zlinalg::Int;
using zlinalg::IntVec;
using zlinalg::RatMatrix;

namespace {

NormalFan fan_of(const char* name) { return toric::normal_fan(fixtures::load(name)); }

using fixtures::product_line_bundle;

std::size_t binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::size_t r = 1;
    for (long long i = 0; i < k; ++i) r = r * static_cast<std::size_t>(n - i) / (i + 1);
    return r;
}

} // namespace

TEST_SUITE("sheafcoh") {

    TEST_CASE("downward closure of support complexes") {
        auto c = SupportComplex::from_faces({{0, 1, 2}});
        CHECK(c.vertices == std::vector<int>{0, 1, 2});
        CHECK(c.faces.size() == 7);
        CHECK(c.max_level() == 3);

        auto d = SupportComplex::from_faces({{1, 3}}, {7});
        CHECK(d.vertices == std::vector<int>{1, 3, 7});
        CHECK(d.faces.size() == 4);
        CHECK(d.subcomplex_of(SupportComplex::from_faces({{1, 3}, {3, 7}})));
        CHECK_FALSE(SupportComplex::from_faces({{1, 3}, {3, 7}}).subcomplex_of(d));
    }

    TEST_CASE("reduced cohomology of model complexes") {
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({})) ==
              std::vector<std::size_t>{1});
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({}, {4})) ==
              std::vector<std::size_t>{0, 0});
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({}, {0, 1})) ==
              std::vector<std::size_t>{0, 1});
        // hollow triangle: a circle
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({{0, 1}, {1, 2}, {0, 2}})) ==
              std::vector<std::size_t>{0, 0, 1});
        // filled triangle: contractible
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({{0, 1, 2}})) ==
              std::vector<std::size_t>{0, 0, 0, 0});
        // two disjoint edges
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces({{0, 1}, {2, 3}})) ==
              std::vector<std::size_t>{0, 1, 0});
        // hollow square: a circle
        CHECK(reduced_cohomology_dims(
                  SupportComplex::from_faces({{0, 1}, {1, 2}, {2, 3}, {0, 3}})) ==
              std::vector<std::size_t>{0, 0, 1});
        // boundary of the tetrahedron: a two-sphere
        CHECK(reduced_cohomology_dims(SupportComplex::from_faces(
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})) ==
              std::vector<std::size_t>{0, 0, 0, 1});
    }

    TEST_CASE("fan complex of the plane") {
        auto fc = fan_complex(fan_of("p2.json"));
        CHECK(fc.nrays == 3);
        CHECK(fc.faces == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 6});
        CHECK(fc.has_face(0));
        CHECK(fc.has_face(5));
        CHECK_FALSE(fc.has_face(7));

        CHECK_THROWS_AS(fan_complex(fan_of("octahedron.json")), NonSimplicialFan);
    }

    TEST_CASE("full subcomplexes of the fan boundary") {
        auto fc = fan_complex(fan_of("p2.json"));
        CHECK(reduced_cohomology_dims(full_subcomplex(fc, 0b111)) ==
              std::vector<std::size_t>{0, 0, 1});
        CHECK(reduced_cohomology_dims(full_subcomplex(fc, 0b011)) ==
              std::vector<std::size_t>{0, 0, 0});
        CHECK(reduced_cohomology_dims(full_subcomplex(fc, 0)) == std::vector<std::size_t>{1});

        // opposite rays on the product fan induce two isolated points
        auto sq = fan_complex(fan_of("square.json"));
        CHECK(reduced_cohomology_dims(full_subcomplex(sq, 0b1001)) ==
              std::vector<std::size_t>{0, 1});
    }

    TEST_CASE("violated ray sets") {
        auto f = fan_of("p2.json");
        CHECK(negative_rays(f, TorusDivisor{{0, 0, -1}}, IntVec{0, 0}) == 0b100);
        CHECK(negative_rays(f, TorusDivisor{{0, 0, 0}}, IntVec{0, 0}) == 0);
        CHECK(negative_rays(f, TorusDivisor{{-1, -1, -1}}, IntVec{0, 0}) == 0b111);
    }

    TEST_CASE("plane line bundles match the closed form") {
        auto f = fan_of("p2.json");
        for (long long d = 0; d <= 6; ++d) {
            auto g = divisor_cohomology(f, TorusDivisor{{0, 0, d}});
            CHECK(g.totals == std::vector<std::size_t>{binom(d + 2, 2), 0, 0});
        }
        for (long long d = -1; d >= -8; --d) {
            auto g = divisor_cohomology(f, TorusDivisor{{0, 0, d}});
            CHECK(g.totals == std::vector<std::size_t>{0, 0, binom(-d - 1, 2)});
        }
    }

    TEST_CASE("product fans match the factorized counts") {
        auto sq = fan_of("square.json");
        auto h1 = [](long long a) {
            return std::pair<std::size_t, std::size_t>{a >= 0 ? a + 1 : 0,
                                                       a <= -2 ? -a - 1 : 0};
        };
        for (long long a = -3; a <= 3; ++a)
            for (long long b = -3; b <= 3; ++b) {
                auto [a0, a1] = h1(a);
                auto [b0, b1] = h1(b);
                auto g = divisor_cohomology(sq, product_line_bundle({a, b}));
                CHECK(g.totals == std::vector<std::size_t>{a0 * b0, a0 * b1 + a1 * b0, a1 * b1});
            }

        auto cube = fan_of("cube.json");
        auto g = divisor_cohomology(cube, product_line_bundle({1, -2, -3}));
        CHECK(g.totals == std::vector<std::size_t>{0, 0, 4, 0});
        g = divisor_cohomology(cube, product_line_bundle({-2, 1, -2}));
        CHECK(g.totals == std::vector<std::size_t>{0, 0, 2, 0});
        g = divisor_cohomology(cube, product_line_bundle({1, 1, 1}));
        CHECK(g.totals == std::vector<std::size_t>{8, 0, 0, 0});
        g = divisor_cohomology(cube, product_line_bundle({-2, -2, -2}));
        CHECK(g.totals == std::vector<std::size_t>{0, 0, 0, 1});
    }

    TEST_CASE("nonsimplicial fans are rejected") {
        auto oct = fan_of("octahedron.json");
        CHECK_THROWS_AS(divisor_cohomology(oct, TorusDivisor{IntVec(8, Int(1))}),
                        NonSimplicialFan);
    }

    TEST_CASE("independent affine-cover reference") {
        std::mt19937_64 gen(271);
        struct Plan {
            const char* name;
            long long lo, hi;
            int trials;
        };
        for (const Plan& plan : {Plan{"p2.json", -4, 4, 10}, Plan{"square.json", -3, 3, 10},
                                 Plan{"p112.json", -3, 3, 10}, Plan{"p3.json", -2, 2, 6},
                                 Plan{"cube.json", -2, 2, 4}}) {
            auto f = fan_of(plan.name);
            for (int t = 0; t < plan.trials; ++t) {
                auto d = fixtures::random_divisor(gen, f.rays.size(), plan.lo, plan.hi);
                auto got = divisor_cohomology(f, d);
                auto ref = cech_oracle::divisor_cohomology(f, d);
                CHECK_MESSAGE(got.totals == ref.totals, plan.name);
                CHECK_MESSAGE(got.pieces == ref.pieces, plan.name);
            }
        }
    }

    TEST_CASE("global duality on the smooth fixtures") {
        std::mt19937_64 gen(137);
        for (const char* name : {"p2.json", "square.json", "p3.json"}) {
            auto f = fan_of(name);
            const std::size_t n = f.dim;
            for (int t = 0; t < 8; ++t) {
                auto d = fixtures::random_divisor(gen, f.rays.size(), -3, 3);
                IntVec kd;
                for (std::size_t r = 0; r < f.rays.size(); ++r)
                    kd.push_back(-1 - d.coeffs[r]);
                auto a = divisor_cohomology(f, d);
                auto b = divisor_cohomology(f, TorusDivisor{kd});
                for (std::size_t i = 0; i <= n; ++i)
                    CHECK_MESSAGE(a.totals[i] == b.totals[n - i], name);
            }
        }
    }

    TEST_CASE("sections of a npath-connected support region count lattice points") {
        auto f = fan_of("square.json");
        for (long long a = 0; a <= 3; ++a)
            for (long long b = 0; b <= 3; ++b) {
                auto g = divisor_cohomology(f, product_line_bundle({a, b}));
                CHECK(g.totals[0] == static_cast<std::size_t>((a + 1) * (b + 1)));
                CHECK(g.pieces.size() == g.totals[0]);
            }
    }

    TEST_CASE("parallel and serial scans agree") {
        std::mt19937_64 gen(555);
        for (const char* name : {"p2.json", "p3.json"}) {
            auto f = fan_of(name);
            for (int t = 0; t < 5; ++t) {
                auto d = fixtures::random_divisor(gen, f.rays.size(), -4, 4);
                auto a = divisor_cohomology(f, d);
                auto b = divisor_cohomology_serial(f, d);
                CHECK(a.totals == b.totals);
                CHECK(a.pieces == b.pieces);
                CHECK(a.divisor.coeffs == d.coeffs);
            }
        }
    }

    TEST_CASE("restriction maps compose and respect containment") {
        auto two_edges = SupportComplex::from_faces({{0, 1}, {2, 3}});
        auto two_points = SupportComplex::from_faces({}, {0, 2});
        REQUIRE(two_points.subcomplex_of(two_edges));
        auto maps = inclusion_map(two_points, two_edges);
        REQUIRE(maps.size() >= 2);
        // both carry one reduced class in degree zero and the restriction is invertible
        REQUIRE(maps[1].rows() == 1);
        REQUIRE(maps[1].cols() == 1);
        CHECK(maps[1].at(0, 0) != 0);

        CHECK_THROWS_AS(inclusion_map(two_edges, two_points), NotASubcomplex);

        SubcomplexCache cache(fan_of("square.json"));
        const std::uint32_t a = 0b1001, b = 0b1101, c = 0b1111;
        for (std::size_t level = 0; level <= cache.dim(); ++level) {
            const RatMatrix& ab = cache.block(a, b, level);
            const RatMatrix& bc = cache.block(b, c, level);
            const RatMatrix& ac = cache.block(a, c, level);
            CHECK(ab.mul(bc) == ac);
        }
        const auto& dims = cache.dims(a);
        const RatMatrix& id = cache.block(a, a, 1);
        REQUIRE(dims[1] == 1);
        CHECK(id == RatMatrix::identity(1));
    }
}
