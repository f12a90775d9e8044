#pragma once

#include "homalg/linalg/sparse_matrix.hpp"

#include <map>

namespace homalg {

template <class S>
S coefficient_at(const SparseVector<S>& v, std::size_t index, const S& zero)
{
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const Entry<S>& e, std::size_t k) { return e.index < k; });
    return (it != v.end() && it->index == index) ? it->value : zero;
}

// A subspace of S^n kept in reduced row echelon form: every basis row has
// leading coefficient 1 and is zero in the pivot columns of the other rows.
template <class S>
class Subspace
{
public:
    Subspace() = default;
    explicit Subspace(Domain<S> dom) : dom_(dom) {}

    std::size_t dim() const { return rows_.size(); }
    const std::map<std::size_t, SparseVector<S>>& rows() const { return rows_; }
    bool is_pivot(std::size_t c) const { return rows_.contains(c); }

    SparseVector<S> reduce(SparseVector<S> v) const
    {
        for (const auto& [pivot, row] : rows_) {
            S c = coefficient_at(v, pivot, dom_.zero());
            if (!is_zero(c))
                axpy(v, -c, row);
        }
        return v;
    }

    bool contains(const SparseVector<S>& v) const { return reduce(v).empty(); }

    // Returns true when v enlarged the subspace.
    bool insert(const SparseVector<S>& v)
    {
        static_assert(Domain<S>::is_field, "Subspace requires a field");
        SparseVector<S> r = reduce(v);
        if (r.empty())
            return false;
        std::size_t pivot = r.front().index;
        S inv = inverse(r.front().value);
        for (auto& e : r)
            e.value = e.value * inv;
        for (auto& [p, row] : rows_) {
            S c = coefficient_at(row, pivot, dom_.zero());
            if (!is_zero(c))
                axpy(row, -c, r);
        }
        rows_.emplace(pivot, std::move(r));
        return true;
    }

private:
    Domain<S> dom_{};
    std::map<std::size_t, SparseVector<S>> rows_;
};

template <class S>
Subspace<S> row_space(const SparseMatrix<S>& m, Domain<S> dom)
{
    Subspace<S> sub(dom);
    for (std::size_t r = 0; r < m.rows(); ++r)
        sub.insert(m.row(r));
    return sub;
}

template <class S>
Subspace<S> column_space(const SparseMatrix<S>& m, Domain<S> dom)
{
    return row_space(transpose(m), dom);
}

template <class S>
std::size_t rank(const SparseMatrix<S>& m, Domain<S> dom)
{
    // Eliminate along the shorter side.
    if (m.rows() <= m.cols())
        return row_space(m, dom).dim();
    return column_space(m, dom).dim();
}

// Basis of {x : m x = 0}, by column elimination with a tracked combination
// vector; shares no code path with rank().
template <class S>
std::vector<SparseVector<S>> kernel_basis(const SparseMatrix<S>& m, Domain<S> dom)
{
    static_assert(Domain<S>::is_field, "kernel_basis requires a field");
    SparseMatrix<S> cols = transpose(m);
    struct Reduced
    {
        SparseVector<S> image;
        SparseVector<S> combination;
    };
    std::map<std::size_t, Reduced> by_lead;
    std::vector<SparseVector<S>> kernel;
    for (std::size_t j = 0; j < cols.rows(); ++j) {
        SparseVector<S> image = cols.row(j);
        SparseVector<S> comb{{j, dom.one()}};
        while (!image.empty()) {
            auto it = by_lead.find(image.front().index);
            if (it == by_lead.end())
                break;
            S c = image.front().value * inverse(it->second.image.front().value);
            axpy(image, -c, it->second.image);
            axpy(comb, -c, it->second.combination);
        }
        if (image.empty())
            kernel.push_back(std::move(comb));
        else {
            std::size_t lead = image.front().index;
            by_lead.emplace(lead, Reduced{std::move(image), std::move(comb)});
        }
    }
    return kernel;
}

template <class S>
SparseMatrix<S> convert_matrix(const SparseMatrix<Integer>& m, Domain<S> dom)
{
    std::vector<Triplet<S>> ts;
    for (const auto& t : m.triplets())
        ts.push_back({t.row, t.col, dom.from(t.value)});
    return SparseMatrix<S>::from_triplets(m.rows(), m.cols(), std::move(ts));
}

// Rank of an integer-entry matrix read over a field. Integer coefficients are
// rejected; use smith_normal_form for those.
std::size_t rank_over_field(const SparseMatrix<Integer>& m, const Coefficients& c);

}  // namespace homalg
