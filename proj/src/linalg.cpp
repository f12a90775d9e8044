#include "homalg/linalg/elimination.hpp"
#include "homalg/linalg/integer.hpp"

#include <fmt/format.h>

#include <utility>

namespace homalg {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Coefficients Coefficients::prime_field(std::uint64_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument(fmt::format("{} is not prime", p));
    if (p >= (std::uint64_t{1} << 32))
        throw std::invalid_argument("prime too large");
    return {Kind::PrimeField, p};
}

std::string Coefficients::name() const
{
    switch (kind) {
    case Kind::PrimeField:
        return fmt::format("F{}", p);
    case Kind::Rationals:
        return "Q";
    case Kind::Integers:
        break;
    }
    return "Z";
}

Coefficients Coefficients::parse(const std::string& text)
{
    if (text == "Q")
        return rationals();
    if (text == "Z")
        return integers();
    std::string digits;
    if (text.size() > 1 && text[0] == 'F')
        digits = text.substr(text[1] == '_' ? 2 : 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        throw std::invalid_argument("unknown coefficients '" + text + "' (expected F<p>, Q or Z)");
    return prime_field(std::stoull(digits));
}

std::size_t rank_over_field(const SparseMatrix<Integer>& m, const Coefficients& c)
{
    if (!c.is_field())
        throw std::invalid_argument("rank_over_field: integer coefficients; use smith_normal_form");
    return dispatch(c, [&](auto dom) -> std::size_t {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field)
            return rank(convert_matrix(m, dom), dom);
        else
            return 0;
    });
}

namespace {

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Floor division so that remainders land in [0, |b|).
Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// g = gcd(a,b) = a*x + b*y, g > 0.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

using Dense = std::vector<std::vector<Integer>>;

void normalise_chain(std::vector<Integer>& d)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            Integer g = boost::multiprecision::gcd(d[i], d[j]);
            Integer l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
}

// Combines (b, v) -> (x b + y v, (c/g) b - (a/g) v) so that the second vector
// vanishes at `col`; a unimodular step.
void gcd_combine(SparseVector<Integer>& b, SparseVector<Integer>& v, std::size_t col)
{
    Integer a = coefficient_at(b, col, Integer(0));
    Integer c = coefficient_at(v, col, Integer(0));
    Integer x, y;
    Integer g = extended_gcd(a, c, x, y);
    SparseVector<Integer> nb;
    axpy(nb, x, b);
    axpy(nb, y, v);
    SparseVector<Integer> nv;
    axpy(nv, Integer(c / g), b);
    axpy(nv, Integer(-(a / g)), v);
    b = std::move(nb);
    v = std::move(nv);
}

}  // namespace

std::vector<Integer> smith_normal_form(const SparseMatrix<Integer>& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    Dense a(rows, std::vector<Integer>(cols, Integer(0)));
    for (const auto& t : m.triplets())
        a[t.row][t.col] = t.value;

    std::vector<Integer> d;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        auto place_min = [&]() -> bool {
            bool found = false;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (!found || abs_value(a[i][j]) < abs_value(a[bi][bj]))) {
                        found = true;
                        bi = i;
                        bj = j;
                    }
            if (!found)
                return false;
            std::swap(a[t], a[bi]);
            for (auto& row : a)
                std::swap(row[t], row[bj]);
            return true;
        };
        if (!place_min())
            break;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean) {
                place_min();
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        d.push_back(abs_value(a[t][t]));
    }
    normalise_chain(d);
    return d;
}

std::string ZModule::to_string() const
{
    std::vector<std::string> parts;
    if (free_rank == 1)
        parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back(fmt::format("Z^{}", free_rank));
    for (const auto& q : torsion)
        parts.push_back("Z/" + q.str());
    if (parts.empty())
        return "0";
    return fmt::format("{}", fmt::join(parts, " + "));
}

std::string ZModule::torsion_string() const
{
    std::vector<std::string> parts;
    for (const auto& q : torsion)
        parts.push_back(q.str());
    return fmt::format("{}", fmt::join(parts, ";"));
}

ZModule quotient_module(std::size_t ambient, const std::vector<SparseVector<Integer>>& relations)
{
    SparseMatrix<Integer> m(relations.size(), ambient);
    for (std::size_t r = 0; r < relations.size(); ++r)
        m.row(r) = relations[r];
    auto d = smith_normal_form(m);
    ZModule out;
    out.free_rank = ambient - d.size();
    for (auto& q : d)
        if (q > 1)
            out.torsion.push_back(q);
    return out;
}

ZModule direct_sum(const ZModule& a, const ZModule& b)
{
    ZModule out;
    out.free_rank = a.free_rank + b.free_rank;
    std::vector<Integer> all = a.torsion;
    all.insert(all.end(), b.torsion.begin(), b.torsion.end());
    normalise_chain(all);
    for (auto& q : all)
        if (q > 1)
            out.torsion.push_back(q);
    return out;
}

Lattice::Lattice(std::size_t ambient, std::vector<SparseVector<Integer>> generators) : ambient_(ambient)
{
    for (auto& v : generators) {
        std::size_t pos = 0;
        while (!v.empty()) {
            std::size_t lead = v.front().index;
            while (pos < basis_.size() && basis_[pos].front().index < lead)
                ++pos;
            if (pos == basis_.size() || basis_[pos].front().index > lead) {
                basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
                break;
            }
            gcd_combine(basis_[pos], v, lead);
        }
    }
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (basis_[j].front().value < 0)
            for (auto& e : basis_[j])
                e.value = -e.value;
        std::size_t p = basis_[j].front().index;
        const Integer& piv = basis_[j].front().value;
        for (std::size_t i = 0; i < j; ++i) {
            Integer c = coefficient_at(basis_[i], p, Integer(0));
            Integer q = floor_div(c, piv);
            if (q != 0)
                axpy(basis_[i], Integer(-q), basis_[j]);
        }
    }
}

bool Lattice::contains(const SparseVector<Integer>& v0) const
{
    SparseVector<Integer> v = v0;
    for (const auto& row : basis_) {
        if (v.empty())
            return true;
        std::size_t p = row.front().index;
        if (v.front().index < p)
            return false;
        Integer c = coefficient_at(v, p, Integer(0));
        if (c == 0)
            continue;
        if (c % row.front().value != 0)
            return false;
        axpy(v, Integer(-(c / row.front().value)), row);
    }
    return v.empty();
}

std::vector<SparseVector<Integer>> integer_kernel(const SparseMatrix<Integer>& m)
{
    SparseMatrix<Integer> cols = transpose(m);
    const std::size_t n = cols.rows();
    // Each working row is (image | combination), encoded in one vector with
    // the combination offset past the image coordinates.
    const std::size_t offset = m.rows();
    std::vector<SparseVector<Integer>> echelon;
    std::vector<SparseVector<Integer>> kernel;
    for (std::size_t j = 0; j < n; ++j) {
        SparseVector<Integer> v = cols.row(j);
        v.push_back({offset + j, Integer(1)});
        std::size_t pos = 0;
        for (;;) {
            std::size_t lead = v.front().index;
            if (lead >= offset) {
                SparseVector<Integer> k;
                for (auto& e : v)
                    k.push_back({e.index - offset, e.value});
                kernel.push_back(std::move(k));
                break;
            }
            while (pos < echelon.size() && echelon[pos].front().index < lead)
                ++pos;
            if (pos == echelon.size() || echelon[pos].front().index > lead) {
                echelon.insert(echelon.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
                break;
            }
            gcd_combine(echelon[pos], v, lead);
        }
    }
    return kernel;
}

}  // namespace homalg
