#pragma once

#include "homalg/graded/ring.hpp"
#include "homalg/linalg/elimination.hpp"

#include <fmt/format.h>

#include <map>
#include <stdexcept>

namespace homalg {

// The graded quotient R/J of a ring spec by the ideal generated by `relations`,
// tabulated degree by degree over [lo, hi]. With no relations it is R itself,
// which also works over the integers; proper quotients need a field.
//
// Each degree keeps its monomial basis, the reduced echelon form of J_d, and
// the standard monomials (non-pivot columns) that form the quotient basis.
template <class S>
class GradedQuotient
{
public:
    GradedQuotient(const RingSpec& ring, std::vector<Polynomial> relations, Domain<S> dom, int lo, int hi)
        : ring_(ring), relations_(std::move(relations)), dom_(dom), lo_(lo), hi_(std::max(lo - 1, hi))
    {
        if constexpr (!Domain<S>::is_field) {
            if (!relations_.empty())
                throw std::invalid_argument("quotients by nonzero ideals need field coefficients");
        }
        for (int d = lo_; d <= hi_; ++d)
            degrees_.push_back(build(d));
    }

    const RingSpec& ring() const { return ring_; }
    const Domain<S>& domain() const { return dom_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool in_range(int d) const { return d >= lo_ && d <= hi_; }

    std::size_t dim(int d) const { return in_range(d) ? at(d).standard.size() : 0; }

    const Monomial& basis_monomial(int d, std::size_t j) const
    {
        const auto& deg = at(d);
        return deg.monomials[deg.standard[j]];
    }

    std::string label(int d, std::size_t j) const { return monomial_to_string(basis_monomial(d, j), ring_); }

    // Quotient coordinates of a vector given in monomial coordinates of degree d.
    SparseVector<S> reduce(int d, SparseVector<S> v) const
    {
        const auto& deg = at(d);
        if constexpr (Domain<S>::is_field)
            v = deg.relations.reduce(std::move(v));
        SparseVector<S> out;
        for (auto& e : v) {
            auto it = deg.position.find(e.index);
            if (it == deg.position.end())
                throw std::logic_error("reduced vector has support on a pivot monomial");
            out.push_back({it->second, std::move(e.value)});
        }
        return out;
    }

    // f * b_j with b_j the j-th basis element of degree d; result in degree d + |f|.
    SparseVector<S> multiply(const Polynomial& f, int d, std::size_t j) const
    {
        return multiply_monomial(f, basis_monomial(d, j), d);
    }

    SparseVector<S> multiply_monomial(const Polynomial& f, const Monomial& m, int d) const
    {
        if (f.is_zero())
            return {};
        auto fd = f.degree(ring_);
        if (!fd)
            throw std::invalid_argument("multiplication by an inhomogeneous polynomial");
        const int target = d + *fd;
        if (!in_range(target))
            throw std::out_of_range(fmt::format("degree {} outside tabulated range [{}, {}]", target, lo_, hi_));
        const auto& deg = at(target);
        std::vector<Entry<S>> v;
        for (const auto& [mono, c] : f.terms()) {
            Monomial prod = mono * m;
            auto it = deg.index.find(prod);
            if (it == deg.index.end())
                throw std::out_of_range("product monomial falls outside the truncated basis");
            v.push_back({it->second, dom_.from(c)});
        }
        return reduce(target, from_unsorted(std::move(v)));
    }

    // b_i (degree d1) * b_j (degree d2).
    SparseVector<S> product(int d1, std::size_t i, int d2, std::size_t j) const
    {
        Polynomial f = Polynomial::from_terms({{basis_monomial(d1, i), Integer(1)}});
        return multiply(f, d2, j);
    }

    // Matrix of multiplication by f from degree d to degree d + |f|.
    SparseMatrix<S> multiplication_matrix(const Polynomial& f, int d) const
    {
        int target = d + f.degree(ring_).value_or(0);
        std::vector<Triplet<S>> ts;
        for (std::size_t j = 0; j < dim(d); ++j)
            for (auto& e : multiply(f, d, j))
                ts.push_back({e.index, j, std::move(e.value)});
        return SparseMatrix<S>::from_triplets(dim(target), dim(d), std::move(ts));
    }

private:
    struct Degree
    {
        std::vector<Monomial> monomials;
        std::map<Monomial, std::size_t> index;
        Subspace<S> relations;
        std::vector<std::size_t> standard;            // monomial indices of the basis
        std::map<std::size_t, std::size_t> position;  // monomial index -> basis index
    };

    const Degree& at(int d) const
    {
        if (!in_range(d))
            throw std::out_of_range(fmt::format("degree {} outside tabulated range [{}, {}]", d, lo_, hi_));
        return degrees_[static_cast<std::size_t>(d - lo_)];
    }

    Degree build(int d) const
    {
        Degree deg;
        deg.relations = Subspace<S>(dom_);
        deg.monomials = enumerate_monomials(ring_, d);
        for (std::size_t k = 0; k < deg.monomials.size(); ++k)
            deg.index.emplace(deg.monomials[k], k);
        if constexpr (Domain<S>::is_field) {
            for (const auto& g : relations_) {
                auto gd = g.degree(ring_);
                if (!gd)
                    throw std::invalid_argument("ideal generator is not homogeneous");
                if (*gd > d - ring_.lowest_degree())
                    continue;
                for (const auto& m : enumerate_monomials(ring_, d - *gd)) {
                    std::vector<Entry<S>> v;
                    bool inside = true;
                    for (const auto& [mono, c] : g.terms()) {
                        auto it = deg.index.find(mono * m);
                        if (it == deg.index.end()) {
                            inside = false;
                            break;
                        }
                        v.push_back({it->second, dom_.from(c)});
                    }
                    if (inside)
                        deg.relations.insert(from_unsorted(std::move(v)));
                }
            }
        }
        for (std::size_t k = 0; k < deg.monomials.size(); ++k)
            if (!deg.relations.is_pivot(k)) {
                deg.position.emplace(k, deg.standard.size());
                deg.standard.push_back(k);
            }
        return deg;
    }

    RingSpec ring_;
    std::vector<Polynomial> relations_;
    Domain<S> dom_;
    int lo_;
    int hi_;
    std::vector<Degree> degrees_;
};

}  // namespace homalg
