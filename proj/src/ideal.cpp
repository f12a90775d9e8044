#include "homalg/graded/ideal.hpp"
#include "homalg/graded/quotient.hpp"

#include <fmt/format.h>

#include <map>
#include <stdexcept>

namespace homalg {

void IdealSpec::validate(const RingSpec& r) const
{
    for (std::size_t k = 0; k < sequence.size(); ++k) {
        const auto& u = sequence[k];
        if (u.is_zero())
            throw std::invalid_argument(fmt::format("sequence entry {} is zero", k + 1));
        for (const auto& [m, c] : u.terms()) {
            if (m.size() != r.size())
                throw std::invalid_argument(fmt::format("sequence entry {} uses unknown generators", k + 1));
            for (int e : m)
                if (e < 0)
                    throw std::invalid_argument(fmt::format("sequence entry {} has a negative exponent", k + 1));
        }
        auto d = u.degree(r);
        if (!d)
            throw std::invalid_argument(fmt::format("sequence entry {} ({}) is not homogeneous", k + 1, u.to_string(r)));
        if (*d % 2 != 0)
            throw std::invalid_argument(fmt::format("sequence entry {} has odd degree {}", k + 1, *d));
    }
}

std::vector<int> IdealSpec::degrees(const RingSpec& r) const
{
    std::vector<int> out;
    for (const auto& u : sequence)
        out.push_back(u.degree(r).value_or(0));
    return out;
}

std::vector<std::vector<std::size_t>> multi_indices(std::size_t g, std::size_t s)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == s) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < g; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Polynomial sequence_monomial(const RingSpec& r, const IdealSpec& ideal, const std::vector<std::size_t>& idx)
{
    Polynomial p = Polynomial::constant(1, r.size());
    for (auto i : idx)
        p = p * ideal.sequence.at(i);
    return p;
}

std::vector<Polynomial> power_generators(const RingSpec& r, const IdealSpec& ideal, std::size_t s)
{
    std::vector<Polynomial> out;
    for (const auto& idx : multi_indices(ideal.size(), s))
        out.push_back(sequence_monomial(r, ideal, idx));
    return out;
}

namespace {

std::string prefix_name(std::size_t k)
{
    if (k == 0)
        return "R";
    return k == 1 ? "R/(u_1)" : fmt::format("R/(u_1..u_{})", k);
}

std::map<Monomial, std::size_t> index_monomials(const std::vector<Monomial>& ms)
{
    std::map<Monomial, std::size_t> idx;
    for (std::size_t k = 0; k < ms.size(); ++k)
        idx.emplace(ms[k], k);
    return idx;
}

// Integer relation vectors spanning J_t in monomial coordinates.
std::vector<SparseVector<Integer>> integer_relations(const RingSpec& r, const std::vector<Polynomial>& relations,
                                                     int t, const std::map<Monomial, std::size_t>& index)
{
    std::vector<SparseVector<Integer>> out;
    for (const auto& g : relations) {
        auto gd = g.degree(r);
        if (!gd || *gd > t - r.lowest_degree())
            continue;
        for (const auto& m : enumerate_monomials(r, t - *gd)) {
            std::vector<Entry<Integer>> v;
            bool inside = true;
            for (const auto& [mono, c] : g.terms()) {
                auto it = index.find(mono * m);
                if (it == index.end()) {
                    inside = false;
                    break;
                }
                v.push_back({it->second, c});
            }
            if (inside) {
                auto sv = from_unsorted(std::move(v));
                if (!sv.empty())
                    out.push_back(std::move(sv));
            }
        }
    }
    return out;
}

// Is multiplication by u injective from (R/J)_t to (R/J)_{t+|u|}, over Z?
bool integer_injective(const RingSpec& r, const std::vector<Polynomial>& relations, const Polynomial& u, int t)
{
    const int du = *u.degree(r);
    auto src = enumerate_monomials(r, t);
    auto dst = enumerate_monomials(r, t + du);
    auto src_idx = index_monomials(src);
    auto dst_idx = index_monomials(dst);
    auto src_rel = integer_relations(r, relations, t, src_idx);
    auto dst_rel = integer_relations(r, relations, t + du, dst_idx);

    // Columns: the n source monomials mapped by u, then the target relations
    // negated. Kernel vectors project onto {x : u x in J}.
    const std::size_t n = src.size();
    std::vector<Triplet<Integer>> ts;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [mono, c] : u.terms()) {
            auto it = dst_idx.find(mono * src[j]);
            if (it == dst_idx.end())
                throw std::out_of_range("product outside truncated basis");
            ts.push_back({it->second, j, c});
        }
    for (std::size_t k = 0; k < dst_rel.size(); ++k)
        for (const auto& e : dst_rel[k])
            ts.push_back({e.index, n + k, Integer(-e.value)});
    auto m = SparseMatrix<Integer>::from_triplets(dst.size(), n + dst_rel.size(), std::move(ts));
    Lattice source_relations(n, src_rel);
    for (const auto& k : integer_kernel(m)) {
        SparseVector<Integer> x;
        for (const auto& e : k)
            if (e.index < n)
                x.push_back(e);
        if (!source_relations.contains(x))
            return false;
    }
    return true;
}

}  // namespace

std::string RegularityReport::summary() const
{
    std::string out;
    for (std::size_t k = 0; k < checked.size(); ++k) {
        auto [from, to] = checked[k];
        if (from > to)
            out += fmt::format("u_{}: no source degree fits in the window\n", k + 1);
        else
            out += fmt::format("u_{}: injective checks in source degrees {}..{}\n", k + 1, from, to);
    }
    if (regular())
        out += fmt::format("regular within window t <= {} (certified only inside the window)\n", window.t_max);
    for (const auto& f : failures)
        out += fmt::format("FAILURE at index {} (degree {}): {}\n", f.index, f.t, f.detail);
    return out;
}

RegularityReport check_regular_sequence(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w)
{
    r.validate();
    ideal.validate(r);
    RegularityReport report;
    report.window = w;
    const int lowest = std::max(w.t_min, r.lowest_degree());

    dispatch(r.coefficients, [&](auto dom) {
        using S = std::decay_t<decltype(dom.zero())>;
        std::vector<Polynomial> prefix;
        for (std::size_t k = 0; k < ideal.size(); ++k) {
            const Polynomial& u = ideal.sequence[k];
            const int du = *u.degree(r);
            const int hi = w.t_max - du;
            report.checked.emplace_back(lowest, hi);
            if constexpr (Domain<S>::is_field) {
                GradedQuotient<S> q(r, prefix, dom, r.lowest_degree(), w.t_max);
                for (int t = lowest; t <= hi; ++t) {
                    auto m = q.multiplication_matrix(u, t);
                    std::size_t rk = rank(m, dom);
                    if (rk < q.dim(t))
                        report.failures.push_back(
                            {k + 1, t,
                             fmt::format("multiplication by {} has kernel of dimension {} on {}",
                                         u.to_string(r), q.dim(t) - rk, prefix_name(k))});
                }
            } else {
                for (int t = lowest; t <= hi; ++t)
                    if (!integer_injective(r, prefix, u, t))
                        report.failures.push_back(
                            {k + 1, t,
                             fmt::format("multiplication by {} is not injective on {}", u.to_string(r), prefix_name(k))});
            }
            prefix.push_back(u);
        }
        // A regular sequence must not generate the unit ideal.
        if (!r.inverted && !ideal.sequence.empty() && w.contains_t(0) &&
            quotient_in_degree(r, ideal.sequence, 0).is_zero())
            report.failures.push_back({ideal.size(), 0, "the sequence generates the unit ideal"});
    });
    return report;
}

ZModule quotient_in_degree(const RingSpec& r, const std::vector<Polynomial>& relations, int t)
{
    return dispatch(r.coefficients, [&](auto dom) -> ZModule {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field) {
            GradedQuotient<S> q(r, relations, dom, t, t);
            return {q.dim(t), {}};
        } else {
            auto ms = enumerate_monomials(r, t);
            auto rel = integer_relations(r, relations, t, index_monomials(ms));
            return quotient_module(ms.size(), rel);
        }
    });
}

namespace {

Integer order(const ZModule& m)
{
    Integer o = 1;
    for (const auto& q : m.torsion)
        o *= q;
    return o;
}

}  // namespace

PowerQuotientReport power_quotient_dimension(const RingSpec& r, const IdealSpec& ideal, std::size_t s, int t)
{
    if (!r.window.contains_t(t))
        throw std::out_of_range(fmt::format("degree {} outside window", t));
    PowerQuotientReport rep;
    rep.s = s;
    rep.t = t;
    rep.quotient = s == 0 ? ZModule{} : quotient_in_degree(r, power_generators(r, ideal, s), t);
    rep.next = quotient_in_degree(r, power_generators(r, ideal, s + 1), t);
    auto classes = multi_indices(ideal.size(), s);
    rep.monomial_classes = classes.size();
    for (const auto& idx : classes) {
        int shift = 0;
        for (auto i : idx)
            shift += *ideal.sequence[i].degree(r);
        if (t - shift < r.lowest_degree())
            continue;
        rep.graded_piece = direct_sum(rep.graded_piece, quotient_in_degree(r, ideal.sequence, t - shift));
    }
    rep.consistent = rep.next.free_rank == rep.quotient.free_rank + rep.graded_piece.free_rank;
    if (rep.next.free_rank == 0 && rep.quotient.free_rank == 0 && rep.graded_piece.free_rank == 0)
        rep.consistent = rep.consistent && order(rep.next) == order(rep.quotient) * order(rep.graded_piece);
    return rep;
}

}  // namespace homalg
