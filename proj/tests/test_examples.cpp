#include "homalg/examples/adams.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace homalg;
using namespace testing_support;

namespace {

ExampleConfig config(ExampleKind k, std::uint64_t p, int n, int j_max, DegreeWindow w = {0, 20, 4, 4})
{
    return {k, p, n, j_max, w};
}

Integer power_of(long p, int s)
{
    return boost::multiprecision::pow(Integer(p), static_cast<unsigned>(s));
}

}  // namespace

TEST_CASE("Kunneth index sets")
{
    CHECK(kunneth_indices(config(ExampleKind::A, 2, 1, 3)) == std::vector<int>{0, 1, 2, 3});
    CHECK(kunneth_indices(config(ExampleKind::B, 3, 1, 6)) == std::vector<int>{1, 3, 4, 5, 6});
    CHECK(kunneth_indices(config(ExampleKind::C, 2, 2, 5)) == std::vector<int>{0, 1, 2, 4, 5});
}

TEST_CASE("Kunneth presentation bidegrees")
{
    auto p = kunneth_presentation(config(ExampleKind::A, 2, 1, 3));
    REQUIRE(p.generators.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(p.generators[j].name == "tau_" + std::to_string(j));
        CHECK(p.generators[j].bidegree == Bidegree{1, 2 * static_cast<int>(j)});
    }
    CHECK(p.kind == PresentationKind::Exterior);
    CHECK(collapse_audit(p, DifferentialPattern::Kunneth).collapses());
}

TEST_CASE("config validation")
{
    CHECK_THROWS(config(ExampleKind::A, 4, 1, 3).validate());
    CHECK_THROWS(config(ExampleKind::B, 3, 0, 3).validate());
    CHECK_THROWS(config(ExampleKind::C, 2, 3, 2).validate());
    CHECK(parse_example_kind("B") == ExampleKind::B);
    CHECK_THROWS(parse_example_kind("D"));
}

TEST_CASE("Adams E2 table for Example A")
{
    auto p = adams_e2_table(config(ExampleKind::A, 2, 1, 2));
    std::map<int, std::size_t> row1;
    for (const auto& [b, n] : p.ranks)
        if (b.s == 1)
            row1[b.t] = n;
    CHECK(row1 == std::map<int, std::size_t>{{1, 1}, {3, 1}, {5, 1}});
    std::map<int, std::size_t> row0;
    for (const auto& [b, n] : p.ranks)
        if (b.s == 0)
            row0[b.t] = n;
    CHECK(row0 == std::map<int, std::size_t>{{0, 1}});
    REQUIRE(p.collapse);
    CHECK(p.collapse->collapses());
    CHECK(p.pipeline == "closed form, cobar agrees");
    CHECK(p.base_name == "F_2");
}

TEST_CASE("Adams E2 tables of all three examples collapse")
{
    for (const auto& c : {config(ExampleKind::A, 2, 1, 4), config(ExampleKind::B, 3, 1, 6),
                          config(ExampleKind::C, 2, 2, 5), config(ExampleKind::B, 2, 2, 5),
                          config(ExampleKind::A, 3, 1, 3)}) {
        auto p = adams_e2_table(c);
        REQUIRE(p.collapse);
        CHECK(p.collapse->text() == "collapses at E_2 within window");
        CHECK(parity_holds(p));
        CHECK_FALSE(p.ranks.empty());
    }
}

TEST_CASE("Example C base is K(n)_*")
{
    auto p = adams_e2_table(config(ExampleKind::C, 2, 2, 5, {-12, 12, 3, 3}));
    CHECK(p.base_name == "K(2)_*");
    // K(2)_* = F_2[v2^{±1}], |v2| = 6: rank 1 at every multiple of 6
    for (int t = -12; t <= 12; ++t)
        CHECK(p.rank({0, t}) == (t % 6 == 0 ? 1u : 0u));
    REQUIRE(p.generators.size() == 5);
    CHECK(p.generators[3].name == "U_4");
    CHECK(p.generators[3].bidegree == Bidegree{1, 9});
}

TEST_CASE("Example B base is E(n)_*")
{
    auto p = adams_e2_table(config(ExampleKind::B, 3, 1, 6, {-8, 16, 2, 3}));
    CHECK(p.base_name == "E(1)_*");
    for (int t = -8; t <= 16; ++t)
        CHECK(p.rank({0, t}) == (t % 4 == 0 ? 1u : 0u));
    CHECK(p.generators.front().name == "U_1");
    CHECK(p.generators.front().bidegree == Bidegree{1, 3});
}

TEST_CASE("Adams E2 of Example A agrees with cobar cohomology")
{
    for (int j_max : {0, 1, 2}) {
        auto c = config(ExampleKind::A, 2, 1, j_max, {0, 12, 3, 3});
        auto setup = example_setup(c);
        auto cobar = cotor_ranks(setup.hopf, c.window);
        CHECK_MESSAGE(cobar.ok(), cobar.summary());
        auto p = adams_e2_table(c);
        for (const auto& [b, e] : cobar.computed)
            if (b.s <= 3 && !e.edge_uncertain)
                CHECK(e.group.free_rank == p.rank(b));
    }
}

TEST_CASE("completion tower of Z at 3")
{
    RingSpec z;
    z.coefficients = Coefficients::integers();
    z.window = {0, 0, 1, 6};
    IdealSpec three{{Polynomial::constant(3, 0)}};
    auto rep = completion_tower(z, three, z.window);
    const auto& d = rep.degrees.at(0);
    REQUIRE(d.stages.size() == 6);
    for (int s = 1; s <= 6; ++s)
        CHECK(d.stages[s - 1] == ZModule{0, {power_of(3, s)}});
    CHECK_FALSE(d.stabilized_at);
    CHECK_FALSE(rep.stabilization_certified);
    CHECK(rep.surjective());
    CHECK(rep.summary().find("no stabilization") != std::string::npos);
}

TEST_CASE("completion tower of F_2[x1] at x1")
{
    auto r = poly_ring(F2, {2}, window(10, 1, 3));
    auto rep = completion_tower(r, all_variables(r), r.window);
    CHECK(rep.stabilization_certified);
    CHECK(rep.surjective());
    for (int d = 0; d <= 5; ++d) {
        const auto& deg = rep.degrees.at(2 * d);
        REQUIRE(deg.stabilized_at);
        CHECK(*deg.stabilized_at == static_cast<std::size_t>(d + 1));
        CHECK(deg.stable_value->free_rank == 1);
        for (std::size_t s = 1; s <= deg.stages.size(); ++s)
            CHECK(deg.stages[s - 1].free_rank == (s > static_cast<std::size_t>(d) ? 1u : 0u));
    }
    CHECK_THROWS(completion_tower(r, all_variables(r), window(10, 1, 1)));
}

TEST_CASE("completion tower of truncated Example A in degree 0")
{
    auto c = config(ExampleKind::A, 2, 1, 2, {0, 4, 2, 4});
    auto setup = example_setup(c);
    auto rep = completion_tower(setup.mu, setup.ideal, c.window);
    for (int s = 1; s <= 4; ++s)
        CHECK(rep.degrees.at(0).stages[s - 1] == ZModule{0, {power_of(2, s)}});
    CHECK(rep.warnings.size() == 2);
    CHECK(rep.surjective());
}

TEST_CASE("module completion over shifts")
{
    auto r = poly_ring(F2, {2}, window(10, 1, 4));
    auto base = completion_tower(r, all_variables(r), r.window);
    auto same = module_completion({0}, base);
    for (const auto& [t, d] : base.degrees)
        CHECK(same.degrees.at(t).stages == d.stages);

    auto two = module_completion({0, 2}, base);
    for (int t = 0; t <= 10; ++t)
        for (std::size_t s = 0; s < 4; ++s) {
            std::size_t expected = base.degrees.at(t).stages[s].free_rank;
            if (t >= 2)
                expected += base.degrees.at(t - 2).stages[s].free_rank;
            CHECK(two.degrees.at(t).stages[s].free_rank == expected);
        }

    auto shifted = module_completion({4}, base);
    for (const auto& [t, d] : base.degrees) {
        CHECK(shifted.degrees.at(t + 4).stages == d.stages);
        CHECK(shifted.degrees.at(t + 4).stabilized_at == d.stabilized_at);
    }
}
