#pragma once

#include "homalg/complex/free_complex.hpp"
#include "homalg/graded/quotient.hpp"
#include "homalg/linalg/integer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace homalg {

// Degreewise-finite bigraded complex over a scalar domain: a basis and a
// differential matrix d: C_{s,t} -> C_{s-1,t} (or C_{s+1,t} when
// cohomological) for every bidegree of the window.
template <class S>
struct BigradedComplex
{
    Direction direction = Direction::Homological;
    Domain<S> domain{};
    int s_lo = 0;
    int s_hi = 0;
    int t_lo = 0;
    int t_hi = 0;
    bool truncated_top = false;
    std::map<Bidegree, std::vector<std::string>> basis;
    std::map<Bidegree, SparseMatrix<S>> differential;

    int d_degree() const { return direction == Direction::Homological ? -1 : 1; }
    std::size_t dim(Bidegree b) const
    {
        auto it = basis.find(b);
        return it == basis.end() ? 0 : it->second.size();
    }
    const SparseMatrix<S>* d_from(Bidegree b) const
    {
        auto it = differential.find(b);
        return it == differential.end() ? nullptr : &it->second;
    }
};

// Basis cells (generator, module basis index) of a free complex tensored with
// a coefficient module, at bidegree (s, t).
struct ExpandedBasis
{
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};

template <class S>
ExpandedBasis expanded_basis(const std::vector<FreeGenerator>& gens, const GradedQuotient<S>& module, int s, int t)
{
    ExpandedBasis b;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].s != s)
            continue;
        const int d = t - gens[g].t;
        for (std::size_t j = 0; j < module.dim(d); ++j) {
            b.index.emplace(std::make_pair(g, j), b.cells.size());
            b.cells.emplace_back(g, j);
        }
    }
    return b;
}

// Matrix of an R-linear map (given by images of source generators) after
// tensoring with the module, from bidegree (s_src, t) to (s_tgt, t).
template <class S>
SparseMatrix<S> expand_map(const std::vector<FreeGenerator>& src_gens, const std::vector<std::vector<Term>>& images,
                           const std::vector<FreeGenerator>& tgt_gens, int s_src, int s_tgt, int t,
                           const GradedQuotient<S>& module)
{
    auto src = expanded_basis(src_gens, module, s_src, t);
    auto tgt = expanded_basis(tgt_gens, module, s_tgt, t);
    std::vector<Triplet<S>> ts;
    for (std::size_t col = 0; col < src.cells.size(); ++col) {
        auto [g, j] = src.cells[col];
        const int d = t - src_gens[g].t;
        for (const auto& term : images[g]) {
            if (tgt_gens[term.target].s != s_tgt)
                continue;
            for (auto& e : module.multiply(term.coefficient, d, j)) {
                auto it = tgt.index.find({term.target, e.index});
                if (it == tgt.index.end())
                    throw std::logic_error("expanded image outside target basis");
                ts.push_back({it->second, col, std::move(e.value)});
            }
        }
    }
    return SparseMatrix<S>::from_triplets(tgt.cells.size(), src.cells.size(), std::move(ts));
}

template <class S>
std::string cell_label(const std::vector<FreeGenerator>& gens, const GradedQuotient<S>& module, int t,
                       std::pair<std::size_t, std::size_t> cell)
{
    const auto& g = gens[cell.first];
    std::string m = module.label(t - g.t, cell.second);
    std::string l = g.label.to_string();
    if (m == "1")
        return l;
    if (l == "1")
        return m;
    return l + "*" + m;
}

template <class S>
BigradedComplex<S> expand(const FreeComplex& fc, const GradedQuotient<S>& module, int t_lo, int t_hi)
{
    BigradedComplex<S> c;
    c.direction = fc.direction;
    c.domain = module.domain();
    c.s_lo = fc.s_lo;
    c.s_hi = fc.s_hi;
    c.t_lo = t_lo;
    c.t_hi = t_hi;
    c.truncated_top = fc.truncated_top;
    for (int s = fc.s_lo; s <= fc.s_hi; ++s)
        for (int t = t_lo; t <= t_hi; ++t) {
            auto b = expanded_basis(fc.generators, module, s, t);
            std::vector<std::string> labels;
            for (const auto& cell : b.cells)
                labels.push_back(cell_label(fc.generators, module, t, cell));
            c.basis[{s, t}] = std::move(labels);
            const int target = s + fc.differential_degree();
            if (target >= fc.s_lo && target <= fc.s_hi)
                c.differential[{s, t}] = expand_map(fc.generators, fc.differential, fc.generators, s, target, t, module);
        }
    return c;
}

struct Violation
{
    Bidegree at;
    std::string source;
    std::string target;
    std::string value;
};

struct DifferentialReport
{
    std::vector<Violation> violations;
    std::vector<std::string> shape_errors;
    std::size_t checked_pairs = 0;

    bool ok() const { return violations.empty() && shape_errors.empty(); }
    std::string summary() const
    {
        std::string out = fmt::format("d^2 = 0 checked on {} composable pairs: {}\n", checked_pairs,
                                      ok() ? "pass" : "FAIL");
        for (const auto& e : shape_errors)
            out += "shape: " + e + "\n";
        for (const auto& v : violations)
            out += fmt::format("violation at (s={}, t={}): d^2({}) has coefficient {} on {}\n", v.at.s, v.at.t,
                               v.source, v.value, v.target);
        return out;
    }
};

template <class S>
std::string scalar_string(const S& v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

template <class S>
DifferentialReport verify_differential(const BigradedComplex<S>& c)
{
    DifferentialReport rep;
    for (const auto& [b, d1] : c.differential) {
        const Bidegree mid{b.s + c.d_degree(), b.t};
        const Bidegree end{mid.s + c.d_degree(), b.t};
        if (d1.cols() != c.dim(b) || d1.rows() != c.dim(mid)) {
            rep.shape_errors.push_back(fmt::format("d at (s={}, t={}) is {}x{}, expected {}x{}", b.s, b.t, d1.rows(),
                                                   d1.cols(), c.dim(mid), c.dim(b)));
            continue;
        }
        const auto* d2 = c.d_from(mid);
        if (!d2)
            continue;
        if (d2->cols() != d1.rows()) {
            rep.shape_errors.push_back(fmt::format("d at (s={}, t={}) does not compose", mid.s, mid.t));
            continue;
        }
        ++rep.checked_pairs;
        SparseMatrix<S> sq = (*d2) * d1;
        for (const auto& t : sq.triplets()) {
            const auto& src = c.basis.at(b);
            const auto& tgt = c.basis.at(end);
            rep.violations.push_back({b, src[t.col], tgt[t.row], scalar_string(t.value)});
        }
    }
    return rep;
}

struct HomologyEntry
{
    ZModule group;  // over a field: free_rank is the dimension
    std::size_t chain_dim = 0;
    bool edge_uncertain = false;
};

using RankTable = std::map<Bidegree, HomologyEntry>;

inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f)
{
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

template <class S>
std::size_t matrix_rank(const SparseMatrix<S>& m, const Domain<S>& dom)
{
    if constexpr (Domain<S>::is_field)
        return rank(m, dom);
    else
        return smith_normal_form(m).size();
}

// H at every bidegree of the window. A bidegree whose neighbour in the
// s-direction was not built is flagged edge-uncertain.
template <class S>
RankTable homology_ranks(const BigradedComplex<S>& c, unsigned jobs = 1)
{
    std::vector<Bidegree> keys;
    for (const auto& [b, labels] : c.basis)
        keys.push_back(b);
    std::vector<HomologyEntry> results(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t k) {
        const Bidegree b = keys[k];
        const Bidegree prev{b.s - c.d_degree(), b.t};  // source of the incoming map
        HomologyEntry e;
        e.chain_dim = c.dim(b);
        std::size_t out_rank = 0, in_rank = 0;
        if (const auto* d = c.d_from(b))
            out_rank = matrix_rank(*d, c.domain);
        const SparseMatrix<S>* din = c.d_from(prev);
        if (din)
            in_rank = matrix_rank(*din, c.domain);
        e.group.free_rank = e.chain_dim - out_rank - in_rank;
        if constexpr (!Domain<S>::is_field) {
            if (din)
                for (auto& q : smith_normal_form(*din))
                    if (q > 1)
                        e.group.torsion.push_back(q);
        }
        e.edge_uncertain = c.truncated_top && b.s == c.s_hi;
        results[k] = std::move(e);
    });
    RankTable table;
    for (std::size_t k = 0; k < keys.size(); ++k)
        table.emplace(keys[k], std::move(results[k]));
    return table;
}

// Cycle representatives of a basis of H at b, and the boundary subspace.
template <class S>
struct HomologyBasis
{
    std::vector<SparseVector<S>> representatives;
    Subspace<S> boundaries;
};

template <class S>
HomologyBasis<S> homology_basis(const BigradedComplex<S>& c, Bidegree b)
{
    static_assert(Domain<S>::is_field, "homology_basis requires a field");
    HomologyBasis<S> hb{{}, Subspace<S>(c.domain)};
    const Bidegree prev{b.s - c.d_degree(), b.t};
    if (const auto* din = c.d_from(prev))
        hb.boundaries = column_space(*din, c.domain);
    std::vector<SparseVector<S>> cycles;
    if (const auto* d = c.d_from(b))
        cycles = kernel_basis(*d, c.domain);
    else
        for (std::size_t j = 0; j < c.dim(b); ++j)
            cycles.push_back({{j, c.domain.one()}});
    Subspace<S> span = hb.boundaries;
    for (auto& z : cycles)
        if (span.insert(z))
            hb.representatives.push_back(z);
    return hb;
}

}  // namespace homalg
