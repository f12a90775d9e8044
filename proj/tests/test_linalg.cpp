#include "homalg/linalg/elimination.hpp"
#include "homalg/linalg/integer.hpp"

#include <doctest.h>

#include <random>

using namespace homalg;

namespace {

SparseMatrix<Integer> int_matrix(const std::vector<std::vector<long>>& rows)
{
    std::vector<Triplet<Integer>> ts;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c])
                ts.push_back({r, c, Integer(rows[r][c])});
    return SparseMatrix<Integer>::from_triplets(rows.size(), cols, std::move(ts));
}

// Determinant-free rank oracle: brute force over all subsets of rows over F_p
// for tiny matrices, by checking linear independence of row combinations.
std::size_t brute_rank_mod(const std::vector<std::vector<long>>& rows, long p)
{
    std::size_t best = 0;
    const std::size_t n = rows.size();
    const std::size_t m = n ? rows[0].size() : 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                pick.push_back(i);
        // independent iff no nonzero coefficient vector in F_p^k sums to 0
        std::size_t k = pick.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i)
            total *= static_cast<std::size_t>(p);
        bool indep = true;
        for (std::size_t code = 1; code < total && indep; ++code) {
            std::vector<long> coeff(k);
            std::size_t c = code;
            for (auto& x : coeff) {
                x = static_cast<long>(c % p);
                c /= p;
            }
            bool zero = true;
            for (std::size_t col = 0; col < m && zero; ++col) {
                long acc = 0;
                for (std::size_t i = 0; i < k; ++i)
                    acc += coeff[i] * rows[pick[i]][col];
                zero = ((acc % p) + p) % p == 0;
            }
            indep = !zero;
        }
        if (indep)
            best = std::max(best, k);
    }
    return best;
}

}  // namespace

TEST_CASE("rank over prime fields")
{
    CHECK(rank_over_field(int_matrix({{1, 0}, {0, 1}}), Coefficients::prime_field(2)) == 2);
    CHECK(rank_over_field(SparseMatrix<Integer>(3, 4), Coefficients::prime_field(3)) == 0);
    CHECK(rank_over_field(int_matrix({{1, 1}, {1, 1}}), Coefficients::prime_field(2)) == 1);
    CHECK(rank_over_field(int_matrix({{2, 0}, {0, 3}}), Coefficients::prime_field(2)) == 1);
    CHECK(rank_over_field(int_matrix({{2, 0}, {0, 3}}), Coefficients::rationals()) == 2);
    CHECK_THROWS(rank_over_field(int_matrix({{1}}), Coefficients::integers()));
}

TEST_CASE("rank agrees with brute force on random small matrices")
{
    std::mt19937 gen(7);
    for (long p : {2L, 3L, 5L})
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<int> dim(1, 4);
            std::uniform_int_distribution<long> val(-3, 3);
            std::vector<std::vector<long>> rows(dim(gen), std::vector<long>(dim(gen)));
            for (auto& r : rows)
                for (auto& x : r)
                    x = val(gen);
            CHECK(rank_over_field(int_matrix(rows), Coefficients::prime_field(p)) == brute_rank_mod(rows, p));
        }
}

TEST_CASE("kernel basis vectors are annihilated and have the right count")
{
    std::mt19937 gen(11);
    Domain<Fp> dom{5};
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<long> val(0, 4);
        std::vector<std::vector<long>> rows(3, std::vector<long>(5));
        for (auto& r : rows)
            for (auto& x : r)
                x = trial % 3 == 0 ? 0 : val(gen);
        auto m = convert_matrix(int_matrix(rows), dom);
        auto ker = kernel_basis(m, dom);
        CHECK(ker.size() + rank(m, dom) == m.cols());
        for (const auto& v : ker)
            CHECK(homalg::apply(m, v).empty());
    }
}

TEST_CASE("smith normal form")
{
    CHECK(smith_normal_form(int_matrix({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
    CHECK(smith_normal_form(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == std::vector<Integer>{1, 1, 1});
    CHECK(smith_normal_form(SparseMatrix<Integer>(2, 3)).empty());
    CHECK(smith_normal_form(int_matrix({{2, 4}, {6, 8}})) == std::vector<Integer>{2, 4});
    CHECK(smith_normal_form(int_matrix({{0, 3}, {9, 0}})) == std::vector<Integer>{3, 9});
}

TEST_CASE("smith invariants divide each other and multiply to the determinant")
{
    std::mt19937 gen(3);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<long>> a(2, std::vector<long>(2));
        for (auto& r : a)
            for (auto& x : r)
                x = val(gen);
        const long det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        auto inv = smith_normal_form(int_matrix(a));
        for (std::size_t i = 1; i < inv.size(); ++i)
            CHECK(inv[i] % inv[i - 1] == 0);
        if (det != 0) {
            REQUIRE(inv.size() == 2);
            CHECK(inv[0] * inv[1] == Integer(det < 0 ? -det : det));
        }
    }
}

TEST_CASE("quotient modules and lattices")
{
    auto q = quotient_module(2, {{{0, Integer(3)}}, {{1, Integer(9)}}});
    CHECK(q.free_rank == 0);
    CHECK(q.to_string() == "Z/3 + Z/9");
    CHECK(q.torsion_string() == "3;9");
    CHECK(quotient_module(3, {{{0, Integer(1)}}}).to_string() == "Z^2");
    CHECK(quotient_module(0, {}).to_string() == "0");
    Lattice l(2, {{{0, Integer(2)}, {1, Integer(1)}}, {{1, Integer(3)}}});
    CHECK(l.contains({{0, Integer(2)}, {1, Integer(4)}}));
    CHECK_FALSE(l.contains({{0, Integer(1)}}));
}

TEST_CASE("integer kernel")
{
    auto m = int_matrix({{2, 4, 6}});
    auto k = integer_kernel(m);
    CHECK(k.size() == 2);
    for (const auto& v : k)
        CHECK(homalg::apply(m, v).empty());
    // The kernel lattice is saturated: (1,1,-1) lies in it.
    Lattice l(3, k);
    CHECK(l.contains({{0, Integer(1)}, {1, Integer(1)}, {2, Integer(-1)}}));
}

TEST_CASE("prime field arithmetic")
{
    Fp a(3, 7), b(5, 7);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((a * a.inverse()).value() == 1);
    CHECK(Fp(-1, 7).value() == 6);
    CHECK_THROWS(Fp(0, 7).inverse());
    CHECK(Coefficients::parse("F_3") == Coefficients::prime_field(3));
    CHECK(Coefficients::parse("F2").name() == "F2");
    CHECK_THROWS(Coefficients::parse("F4"));
}
