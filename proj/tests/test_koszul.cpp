#include "homalg/failure.hpp"
#include "homalg/koszul/koszul.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace homalg;
using namespace testing_support;

namespace {

std::map<Bidegree, std::size_t> nonzero_ranks(const RankTable& t, int s_max = 100)
{
    std::map<Bidegree, std::size_t> out;
    for (const auto& [b, e] : t)
        if (e.group.free_rank && b.s <= s_max)
            out[b] = e.group.free_rank;
    return out;
}

const FreeGenerator* find_generator(const FreeComplex& c, std::vector<int> ext, std::vector<int> ut,
                                    std::size_t* index = nullptr)
{
    for (std::size_t g = 0; g < c.generators.size(); ++g)
        if (c.generators[g].label.exterior == ext && c.generators[g].label.utilde == ut) {
            if (index)
                *index = g;
            return &c.generators[g];
        }
    return nullptr;
}

std::map<std::string, Polynomial> image_of(const FreeComplex& c, const std::vector<Term>& img)
{
    std::map<std::string, Polynomial> out;
    for (const auto& t : img)
        out[c.generators[t.target].label.to_string()] = t.coefficient;
    return out;
}

}  // namespace

TEST_CASE("build_koszul examples")
{
    auto r1 = poly_ring(F2, {2}, window(10, 3));
    auto k1 = build_koszul(r1, all_variables(r1), r1.window);
    CHECK(k1.complex.generators.size() == 2);
    auto a1 = analyze(k1.complex, {}, r1.window);
    CHECK(nonzero_ranks(a1.homology) == std::map<Bidegree, std::size_t>{{{0, 0}, 1}});

    auto r2 = poly_ring(F2, {2, 4}, window(12, 3));
    auto ideal2 = all_variables(r2);
    auto a2 = analyze(build_koszul(r2, ideal2, r2.window).complex, {}, r2.window);
    for (int t = 0; t <= 12; ++t)
        CHECK(a2.homology.at({0, t}).group.free_rank ==
              power_quotient_dimension(r2, ideal2, 1, t).quotient.free_rank);
    CHECK(nonzero_ranks(a2.homology) == std::map<Bidegree, std::size_t>{{{0, 0}, 1}});
}

TEST_CASE("build_koszul rejects a non-regular sequence with its index")
{
    auto r = poly_ring(F2, {2}, window(10, 3));
    IdealSpec twice{{var(r, 0), var(r, 0)}};
    try {
        build_koszul(r, twice, r.window);
        FAIL("expected a regularity failure");
    } catch (const MathFailure& e) {
        CHECK(e.witness()["index"] == 2);
        CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
}

TEST_CASE("exterior generators beyond the window are cut and reported")
{
    auto r = poly_ring(F2, {2, 20}, window(12, 3));
    auto k = build_koszul(r, all_variables(r), r.window);
    CHECK(k.included == std::vector<std::size_t>{0});
    CHECK(k.cut == std::vector<std::size_t>{1});
    CHECK(k.cut_report().find("u_2") != std::string::npos);
}

TEST_CASE("exterior degrees above s_max + 1 are truncated")
{
    auto r = poly_ring(F2, {2, 2, 2, 2}, window(12, 1));
    auto k = build_koszul(r, all_variables(r), r.window);
    CHECK(k.complex.s_hi == 2);
    CHECK(k.complex.truncated_top);
    auto a = analyze(k.complex, {}, r.window);
    CHECK(a.homology.at({2, 4}).edge_uncertain);
    CHECK_FALSE(a.homology.at({1, 4}).edge_uncertain);
}

TEST_CASE("tor_diagonal examples")
{
    auto r1 = poly_ring(F2, {2}, window(10, 3));
    auto t1 = tor_diagonal(r1, all_variables(r1), r1.window);
    CHECK(t1.ok());
    CHECK(nonzero_ranks(t1.computed) == std::map<Bidegree, std::size_t>{{{0, 0}, 1}, {{1, 2}, 1}});

    auto r2 = poly_ring(F2, {2, 4}, window(12, 3));
    auto t2 = tor_diagonal(r2, all_variables(r2), r2.window);
    CHECK(t2.ok());
    CHECK(nonzero_ranks(t2.computed) ==
          std::map<Bidegree, std::size_t>{{{0, 0}, 1}, {{1, 2}, 1}, {{1, 4}, 1}, {{2, 6}, 1}});

    auto t0 = tor_diagonal(r2, IdealSpec{}, r2.window);
    CHECK(t0.ok());
    for (int t = 0; t <= 12; ++t)
        CHECK(t0.computed.at({0, t}).group.free_rank == monomial_basis(r2, t).size());

    auto z = poly_ring(Coefficients::integers(), {2}, window(6, 2));
    CHECK_THROWS_WITH(tor_diagonal(z, all_variables(z), z.window), doctest::Contains("field coefficients"));
}

TEST_CASE("tor_diagonal over Q on a non-monomial regular sequence")
{
    auto r = poly_ring(Coefficients::rationals(), {2, 2}, window(10, 3));
    IdealSpec seq{{var(r, 0) + var(r, 1), var(r, 0, 2) - constant(r, 3) * var(r, 1, 2)}};
    auto t = tor_diagonal(r, seq, r.window);
    CHECK(t.ok());
    // R/I has basis {1, x2}; e1 at t=2, e2 at t=4.
    CHECK(nonzero_ranks(t.computed) == std::map<Bidegree, std::size_t>{{{0, 0}, 1},
                                                                       {{0, 2}, 1},
                                                                       {{1, 2}, 1},
                                                                       {{1, 4}, 2},
                                                                       {{1, 6}, 1},
                                                                       {{2, 6}, 1},
                                                                       {{2, 8}, 1}});
}

TEST_CASE("Q-complex boundary examples")
{
    auto r = poly_ring(F3, {2, 4}, window(12, 3));
    auto ideal = all_variables(r);
    auto q0 = build_q_complex(0, r, ideal, r.window);
    std::size_t e1 = 0;
    REQUIRE(find_generator(q0.complex, {1}, {}, &e1));
    auto img = image_of(q0.next, q0.boundary.images[e1]);
    CHECK(img.size() == 1);
    CHECK(img["u~(1)"] == constant(r, -1));

    auto q1 = build_q_complex(1, r, ideal, r.window);
    std::size_t e1u2 = 0;
    REQUIRE(find_generator(q1.complex, {1}, {2}, &e1u2));
    auto img2 = image_of(q1.next, q1.boundary.images[e1u2]);
    CHECK(img2.size() == 1);
    CHECK(img2["u~(1,2)"] == constant(r, -1));

    std::size_t u2 = 0;
    REQUIRE(find_generator(q1.complex, {}, {2}, &u2));
    CHECK(q1.boundary.images[u2].empty());

    // ∂(e1 e2) = -e2 u~(1) + e1 u~(2)
    std::size_t e12 = 0;
    REQUIRE(find_generator(q0.complex, {1, 2}, {}, &e12));
    auto img3 = image_of(q0.next, q0.boundary.images[e12]);
    CHECK(img3["e2*u~(1)"] == constant(r, -1));
    CHECK(img3["e1*u~(2)"] == constant(r, 1));
    // Q^(1) itself has d_Q = d ⊗ 1
    auto a = analyze(q1.complex, {}, r.window);
    CHECK(a.differential.ok());
}

TEST_CASE("tower differential on generators")
{
    auto r = poly_ring(F3, {2, 4}, window(12, 3));
    auto ideal = all_variables(r);
    auto tower = build_tower_resolution(2, r, ideal, r.window);
    std::size_t e1 = 0;
    REQUIRE(find_generator(tower.complex, {1}, {}, &e1));
    auto img = image_of(tower.complex, tower.complex.differential[e1]);
    CHECK(img["1"] == var(r, 0));
    CHECK(img["u~(1)"] == constant(r, -1));
    std::size_t u1 = 0;
    REQUIRE(find_generator(tower.complex, {}, {1}, &u1));
    CHECK(augmentation_image(tower, ideal, u1) == var(r, 0));
    CHECK(tower.complex.convention.find("(-1)^k") != std::string::npos);
}

TEST_CASE("tower resolutions resolve R/I^s")
{
    auto r1 = poly_ring(F2, {2}, window(10, 3));
    auto ideal1 = all_variables(r1);
    auto t2 = build_tower_resolution(2, r1, ideal1, r1.window);
    auto c2 = verify_tower_resolution(t2, r1, ideal1, r1.window);
    CHECK_MESSAGE(c2.ok(), c2.summary());
    CHECK(nonzero_ranks(c2.homology) == std::map<Bidegree, std::size_t>{{{0, 0}, 1}, {{0, 2}, 1}});

    auto r2 = poly_ring(F3, {2, 4}, window(14, 3));
    auto ideal2 = all_variables(r2);
    for (std::size_t s = 1; s <= 4; ++s) {
        auto tower = build_tower_resolution(s, r2, ideal2, r2.window);
        auto check = verify_tower_resolution(tower, r2, ideal2, r2.window);
        CHECK_MESSAGE(check.ok(), check.summary());
        CHECK(check.augmentation_rank_checked);
    }

    // s = 1 is the Koszul complex.
    auto k = build_koszul(r2, ideal2, r2.window);
    auto t1 = build_tower_resolution(1, r2, ideal2, r2.window);
    CHECK(t1.complex.generators.size() == k.complex.generators.size());
    CHECK_THROWS(build_tower_resolution(0, r2, ideal2, r2.window));
}

TEST_CASE("tower resolutions over Q and Z")
{
    auto q = poly_ring(Coefficients::rationals(), {2, 2}, window(8, 2));
    IdealSpec seq{{var(q, 0) + var(q, 1), var(q, 1, 2)}};
    for (std::size_t s = 1; s <= 3; ++s) {
        auto tower = build_tower_resolution(s, q, seq, q.window);
        CHECK(verify_tower_resolution(tower, q, seq, q.window).ok());
    }
    auto z = poly_ring(Coefficients::integers(), {2}, window(6, 2));
    IdealSpec zseq{{constant(z, 3), var(z, 0)}};
    for (std::size_t s = 1; s <= 3; ++s) {
        auto tower = build_tower_resolution(s, z, zseq, z.window);
        auto check = verify_tower_resolution(tower, z, zseq, z.window);
        CHECK_MESSAGE(check.ok(), check.summary());
        CHECK_FALSE(check.augmentation_rank_checked);
    }
}

TEST_CASE("partial exactness")
{
    auto r1 = poly_ring(F2, {2}, window(12, 3));
    for (std::size_t s = 2; s <= 4; ++s) {
        auto rep = verify_partial_exactness(s, r1, all_variables(r1), r1.window);
        CHECK_MESSAGE(rep.ok(), rep.summary());
        CHECK(rep.checks > 0);
    }
    auto r2 = poly_ring(F3, {2, 4}, window(14, 3));
    auto rep = verify_partial_exactness(3, r2, all_variables(r2), r2.window);
    CHECK_MESSAGE(rep.ok(), rep.summary());
    CHECK_THROWS(verify_partial_exactness(1, r2, all_variables(r2), r2.window));
}

TEST_CASE("Tor against powers")
{
    auto r1 = poly_ring(F2, {2}, window(12, 3));
    auto rep = tor_against_power(2, r1, all_variables(r1), r1.window);
    CHECK_MESSAGE(rep.ok(), rep.summary());
    CHECK(nonzero_ranks(rep.brute_force) == std::map<Bidegree, std::size_t>{{{0, 0}, 1}, {{1, 4}, 1}});
    CHECK(rep.freeness_checked);

    auto r2 = poly_ring(F3, {2, 4}, window(14, 3));
    for (std::size_t s = 2; s <= 3; ++s) {
        auto rp = tor_against_power(s, r2, all_variables(r2), r2.window);
        CHECK_MESSAGE(rp.ok(), rp.summary());
        CHECK(rp.products_checked > 0);
        CHECK(rp.freeness_failures.empty());
    }
}
