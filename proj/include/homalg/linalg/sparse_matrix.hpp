#pragma once

#include "homalg/linalg/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homalg {

template <class S>
struct Entry
{
    std::size_t index;
    S value;
};

// Sorted by index, no explicit zeros.
template <class S>
using SparseVector = std::vector<Entry<S>>;

template <class S>
struct Triplet
{
    std::size_t row;
    std::size_t col;
    S value;
};

template <class S>
void axpy(SparseVector<S>& y, const S& a, const SparseVector<S>& x)
{
    // y += a*x
    SparseVector<S> out;
    out.reserve(y.size() + x.size());
    auto i = y.begin();
    auto j = x.begin();
    while (i != y.end() || j != x.end()) {
        if (j == x.end() || (i != y.end() && i->index < j->index)) {
            out.push_back(*i++);
        } else if (i == y.end() || j->index < i->index) {
            S v = a * j->value;
            if (!is_zero(v))
                out.push_back({j->index, std::move(v)});
            ++j;
        } else {
            S v = i->value + a * j->value;
            if (!is_zero(v))
                out.push_back({i->index, std::move(v)});
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

template <class S>
SparseVector<S> from_unsorted(std::vector<Entry<S>> entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    SparseVector<S> out;
    for (auto& e : entries) {
        if (!out.empty() && out.back().index == e.index)
            out.back().value = out.back().value + e.value;
        else
            out.push_back(std::move(e));
    }
    std::erase_if(out, [](const auto& e) { return is_zero(e.value); });
    return out;
}

// Row-compressed sparse matrix with exact entries.
template <class S>
class SparseMatrix
{
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet<S>> ts)
    {
        SparseMatrix m(rows, cols);
        std::vector<std::vector<Entry<S>>> buckets(rows);
        for (auto& t : ts) {
            if (t.row >= rows || t.col >= cols)
                throw std::out_of_range("triplet outside matrix shape");
            buckets[t.row].push_back({t.col, std::move(t.value)});
        }
        for (std::size_t r = 0; r < rows; ++r)
            m.data_[r] = from_unsorted(std::move(buckets[r]));
        return m;
    }

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }

    const SparseVector<S>& row(std::size_t r) const { return data_[r]; }
    SparseVector<S>& row(std::size_t r) { return data_[r]; }
    const std::vector<SparseVector<S>>& row_data() const { return data_; }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& r : data_)
            n += r.size();
        return n;
    }
    bool is_zero_matrix() const { return nonzeros() == 0; }

    // Column c as a sparse vector indexed by row.
    SparseVector<S> column(std::size_t c) const
    {
        SparseVector<S> out;
        for (std::size_t r = 0; r < data_.size(); ++r) {
            auto it = std::lower_bound(data_[r].begin(), data_[r].end(), c,
                                       [](const Entry<S>& e, std::size_t k) { return e.index < k; });
            if (it != data_[r].end() && it->index == c)
                out.push_back({r, it->value});
        }
        return out;
    }

    std::vector<Triplet<S>> triplets() const
    {
        std::vector<Triplet<S>> out;
        for (std::size_t r = 0; r < data_.size(); ++r)
            for (const auto& e : data_[r])
                out.push_back({r, e.index, e.value});
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            return false;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (a.data_[r].size() != b.data_[r].size())
                return false;
            for (std::size_t k = 0; k < a.data_[r].size(); ++k)
                if (a.data_[r][k].index != b.data_[r][k].index || !(a.data_[r][k].value == b.data_[r][k].value))
                    return false;
        }
        return true;
    }

private:
    std::size_t cols_ = 0;
    std::vector<SparseVector<S>> data_;
};

template <class S>
SparseMatrix<S> transpose(const SparseMatrix<S>& m)
{
    std::vector<Triplet<S>> ts;
    for (auto& t : m.triplets())
        ts.push_back({t.col, t.row, std::move(t.value)});
    return SparseMatrix<S>::from_triplets(m.cols(), m.rows(), std::move(ts));
}

template <class S>
SparseMatrix<S> operator*(const SparseMatrix<S>& a, const SparseMatrix<S>& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix<S> out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseVector<S> acc;
        for (const auto& e : a.row(r))
            axpy(acc, e.value, b.row(e.index));
        out.row(r) = std::move(acc);
    }
    return out;
}

// y = m x for a column vector x.
template <class S>
SparseVector<S> apply(const SparseMatrix<S>& m, const SparseVector<S>& x)
{
    std::vector<Entry<S>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto& row = m.row(r);
        auto i = row.begin();
        auto j = x.begin();
        bool any = false;
        S acc{};
        while (i != row.end() && j != x.end()) {
            if (i->index < j->index)
                ++i;
            else if (j->index < i->index)
                ++j;
            else {
                S v = i->value * j->value;
                acc = any ? S(acc + v) : v;
                any = true;
                ++i;
                ++j;
            }
        }
        if (any && !is_zero(acc))
            out.push_back({r, std::move(acc)});
    }
    return out;
}

template <class S>
SparseMatrix<S> map_entries(const SparseMatrix<S>& m, auto&& f)
{
    SparseMatrix<S> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVector<S> row;
        for (const auto& e : m.row(r)) {
            S v = f(e.value);
            if (!is_zero(v))
                row.push_back({e.index, std::move(v)});
        }
        out.row(r) = std::move(row);
    }
    return out;
}

}  // namespace homalg
