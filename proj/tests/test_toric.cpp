#include <doctest.h>

#include <random>

#include "branescope/errors.hpp"
#include "branescope/toric.hpp"
#include "support/fixtures.hpp"

using namespace branescope;
using namespace branescope::toric;
using zlinalg::Int;
using zlinalg::IntVec;
using zlinalg::Rat;
using zlinalg::RatVec;

TEST_SUITE("toric") {

    TEST_CASE("normal fan of the projective plane triangle") {
        auto f = normal_fan(fixtures::load("p2.json"));
        CHECK(f.dim == 2);
        CHECK(f.rays == std::vector<IntVec>{{-1, -1}, {0, 1}, {1, 0}});
        CHECK(f.facet_offsets == IntVec{1, 1, 1});
        CHECK(f.max_cones ==
              std::vector<std::vector<std::size_t>>{{1, 2}, {0, 2}, {0, 1}});
        CHECK(f.cone_vertex == std::vector<IntVec>{{-1, -1}, {-1, 2}, {2, -1}});
        CHECK(f.ray_index({0, 1}) == 1);
    }

    TEST_CASE("simpliciality") {
        CHECK(is_simplicial(normal_fan(fixtures::load("p2.json"))));
        CHECK(is_simplicial(normal_fan(fixtures::load("p3.json"))));
        CHECK(is_simplicial(normal_fan(fixtures::load("square.json"))));
        CHECK(is_simplicial(normal_fan(fixtures::load("cube.json"))));
        CHECK(is_simplicial(normal_fan(fixtures::load("p112.json"))));
        CHECK_FALSE(is_simplicial(normal_fan(fixtures::load("octahedron.json"))));
    }

    TEST_CASE("canonical divisor") {
        auto f = normal_fan(fixtures::load("p3.json"));
        CHECK(canonical_divisor(f).coeffs == IntVec{-1, -1, -1, -1});
    }

    TEST_CASE("polytope divisor trivializes at the vertices") {
        for (const char* name : {"p2.json", "p3.json", "square.json", "cube.json"}) {
            auto f = normal_fan(fixtures::load(name));
            TorusDivisor d{f.facet_offsets};
            auto cd = cartier_data(f, d);
            CHECK_MESSAGE(cd.m_sigma == f.cone_vertex, name);
        }
    }

    TEST_CASE("local characters of a hyperplane bundle") {
        auto f = normal_fan(fixtures::load("p2.json"));
        auto cd = cartier_data(f, TorusDivisor{{0, 0, 1}});
        CHECK(cd.m_sigma == std::vector<IntVec>{{-1, 0}, {-1, 1}, {0, 0}});
    }

    TEST_CASE("cartier data is linear in the divisor") {
        auto f = normal_fan(fixtures::load("p3.json"));
        std::mt19937_64 gen(9);
        for (int trial = 0; trial < 10; ++trial) {
            auto d1 = fixtures::random_divisor(gen, 4, -3, 3);
            auto d2 = fixtures::random_divisor(gen, 4, -3, 3);
            IntVec sum;
            for (std::size_t i = 0; i < 4; ++i) sum.push_back(d1.coeffs[i] + d2.coeffs[i]);
            auto a = cartier_data(f, d1), b = cartier_data(f, d2),
                 c = cartier_data(f, TorusDivisor{sum});
            for (std::size_t k = 0; k < a.m_sigma.size(); ++k)
                for (std::size_t i = 0; i < 3; ++i)
                    CHECK(a.m_sigma[k][i] + b.m_sigma[k][i] == c.m_sigma[k][i]);
        }
    }

    TEST_CASE("non-integral local character on the weighted plane") {
        auto f = normal_fan(fixtures::load("p112.json"));
        CHECK_THROWS_AS(cartier_data(f, TorusDivisor{{0, 0, 1}}), NotCartier);
        CHECK_NOTHROW(cartier_data(f, TorusDivisor{{1, 1, 1}}));
    }

    TEST_CASE("rational corners solve every cone exactly") {
        auto f = normal_fan(fixtures::load("p112.json"));
        auto corners = rational_corners(f, TorusDivisor{{0, 0, 1}});
        REQUIRE(corners.size() == f.max_cones.size());
        for (std::size_t k = 0; k < corners.size(); ++k)
            for (std::size_t r : f.max_cones[k]) {
                Rat lhs = 0;
                for (std::size_t i = 0; i < f.dim; ++i)
                    lhs += corners[k][i] * Rat(f.rays[r][i]);
                CHECK(lhs == -Rat(r == 2 ? 1 : 0));
            }
    }

    TEST_CASE("very ampleness") {
        auto p2 = normal_fan(fixtures::load("p2.json"));
        CHECK(is_very_ample(p2, TorusDivisor{{1, 1, 1}}));
        CHECK(is_very_ample(p2, TorusDivisor{{0, 0, 1}}));
        CHECK_FALSE(is_very_ample(p2, TorusDivisor{{0, 0, 0}}));
        CHECK_FALSE(is_very_ample(p2, TorusDivisor{{0, 0, -1}}));

        auto sq = normal_fan(fixtures::load("square.json"));
        CHECK(is_very_ample(sq, TorusDivisor{{1, 1, 1, 1}}));
        // strictly convex in one factor only
        CHECK_FALSE(is_very_ample(sq, TorusDivisor{{1, 0, 0, 1}}));

        auto p3 = normal_fan(fixtures::load("p3.json"));
        CHECK(is_very_ample(p3, TorusDivisor{{1, 1, 1, 1}}));
    }

    TEST_CASE("embedding data of the anticanonical model") {
        auto e2 = embedding(fixtures::load("p2.json"));
        CHECK(e2.count == 10);
        CHECK(e2.target_dim == 9);
        CHECK(e2.polytope.vertices() == fixtures::load("p2.json").vertices());

        auto e3 = embedding(fixtures::load("p3.json"));
        CHECK(e3.count == 165);
        CHECK(e3.target_dim == 164);
        CHECK(e3.monomials.size() == 165);
    }

    TEST_CASE("embedding evaluation on torus points") {
        auto e = embedding(fixtures::load("p2.json"));
        RatVec ones = evaluate_embedding(e, RatVec{Rat(1), Rat(1)});
        REQUIRE(ones.size() == 10);
        for (const Rat& v : ones) CHECK(v == 1);

        RatVec z = evaluate_embedding(e, RatVec{Rat(1, 2), Rat(-3)});
        for (const Rat& v : z) CHECK(v != 0);

        CHECK_THROWS_AS(evaluate_embedding(e, RatVec{Rat(0), Rat(1)}), NotInTorus);
    }
}
