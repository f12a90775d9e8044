#include "homalg/koszul/koszul.hpp"
#include "homalg/failure.hpp"
#include "homalg/graded/quotient.hpp"
#include "koszul_family.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace homalg {

namespace detail {

Selection select_generators(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w)
{
    Selection sel;
    auto degs = ideal.degrees(r);
    for (std::size_t i = 0; i < degs.size(); ++i) {
        if (degs[i] <= w.t_max - w.t_min)
            sel.included.push_back(i);
        else
            sel.cut.push_back(i);
    }
    sel.cap = std::min<std::size_t>(sel.included.size(), static_cast<std::size_t>(w.s_max) + 1);
    sel.truncated = sel.included.size() > sel.cap;
    return sel;
}

std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& items, std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < items.size(); ++i) {
            cur.push_back(items[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

std::vector<int> one_based(const std::vector<std::size_t>& v)
{
    std::vector<int> out;
    for (auto i : v)
        out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<int> without(const std::vector<int>& v, std::size_t pos)
{
    std::vector<int> out = v;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

std::vector<int> inserted(std::vector<int> v, int i)
{
    v.insert(std::upper_bound(v.begin(), v.end(), i), i);
    return v;
}

Integer alternating(std::size_t k)
{
    return k % 2 == 0 ? Integer(1) : Integer(-1);
}

}  // namespace

Family build_family(const RingSpec& r, const IdealSpec& ideal, const Selection& sel, std::size_t k_lo,
                    std::size_t k_hi, bool with_boundary)
{
    Family f;
    f.complex.ring = r;
    f.complex.s_lo = 0;
    f.complex.s_hi = static_cast<int>(sel.cap);
    f.complex.truncated_top = sel.truncated;
    const auto degs = ideal.degrees(r);
    const std::size_t nv = r.size();
    for (std::size_t k = k_lo; k <= k_hi; ++k)
        for (const auto& jpos : multi_indices(sel.included.size(), k)) {
            std::vector<std::size_t> J;
            for (auto p : jpos)
                J.push_back(sel.included[p]);
            int tj = 0;
            for (auto j : J)
                tj += degs[j];
            for (std::size_t n = 0; n <= sel.cap; ++n)
                for (const auto& I : subsets(sel.included, n)) {
                    int t = tj;
                    for (auto i : I)
                        t += degs[i];
                    BasisLabel label{one_based(I), one_based(J), {}};
                    f.index.emplace(label, f.complex.add_generator({label, static_cast<int>(n), t}));
                    f.stage.push_back(k);
                }
        }
    for (std::size_t g = 0; g < f.complex.generators.size(); ++g) {
        const BasisLabel label = f.complex.generators[g].label;
        const auto& I = label.exterior;
        for (std::size_t pos = 0; pos < I.size(); ++pos) {
            const std::size_t i = static_cast<std::size_t>(I[pos] - 1);
            f.complex.add_term(g, f.index.at({without(I, pos), label.utilde, {}}),
                               alternating(pos) * ideal.sequence[i]);
            if (with_boundary) {
                auto it = f.index.find({without(I, pos), inserted(label.utilde, I[pos]), {}});
                if (it != f.index.end())
                    f.complex.add_term(g, it->second, Polynomial::constant(alternating(pos + 1), nv));
            }
        }
    }
    return f;
}

FreeMap boundary_between(const Family& src, const Family& tgt)
{
    FreeMap m;
    m.degree = -1;
    const std::size_t nv = src.complex.ring.size();
    for (const auto& g : src.complex.generators) {
        std::vector<Term> img;
        const auto& I = g.label.exterior;
        for (std::size_t pos = 0; pos < I.size(); ++pos) {
            auto it = tgt.index.find({without(I, pos), inserted(g.label.utilde, I[pos]), {}});
            if (it != tgt.index.end())
                img.push_back({it->second, Polynomial::constant(alternating(pos + 1), nv)});
        }
        m.images.push_back(std::move(img));
    }
    return m;
}

}  // namespace detail

namespace {

std::string names(const std::vector<std::size_t>& idx)
{
    std::vector<std::string> out;
    for (auto i : idx)
        out.push_back(fmt::format("u_{}", i + 1));
    return fmt::format("{}", fmt::join(out, ", "));
}

const char* tower_convention =
    "D = d_Q + ∂; d_Q(e_I u~_J) = sum_k (-1)^(k-1) u_{i_k} e_{I-i_k} u~_J; "
    "∂(e_I u~_J) = sum_k (-1)^k e_{I-i_k} u~_{J+i_k}, k = 1..|I|, multi-index sorted without sign";

}  // namespace

std::string KoszulComplex::cut_report() const
{
    if (cut.empty())
        return "all sequence entries carry an exterior generator";
    return fmt::format("exterior generators cut by the window (|u_i| > t_max - t_min): {}", names(cut));
}

KoszulComplex build_koszul(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w)
{
    r.validate();
    w.validate();
    ideal.validate(r);
    KoszulComplex k;
    k.regularity = check_regular_sequence(r, ideal, w);
    if (!k.regularity.regular()) {
        const auto& f = k.regularity.failures.front();
        throw MathFailure(fmt::format("sequence is not regular at index {}: {}", f.index, f.detail),
                          {{"kind", "regularity"}, {"index", f.index}, {"t", f.t}, {"detail", f.detail}});
    }
    auto sel = detail::select_generators(r, ideal, w);
    auto fam = detail::build_family(r, ideal, sel, 0, 0, false);
    k.complex = std::move(fam.complex);
    k.complex.convention = "d(e_I) = sum_k (-1)^(k-1) u_{i_k} e_{I-i_k}";
    k.included = sel.included;
    k.cut = sel.cut;
    return k;
}

QComplex build_q_complex(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w)
{
    r.validate();
    ideal.validate(r);
    auto sel = detail::select_generators(r, ideal, w);
    auto here = detail::build_family(r, ideal, sel, s, s, false);
    auto next = detail::build_family(r, ideal, sel, s + 1, s + 1, false);
    QComplex q;
    q.stage = s;
    q.boundary = detail::boundary_between(here, next);
    q.complex = std::move(here.complex);
    q.next = std::move(next.complex);
    q.complex.convention = q.next.convention = tower_convention;
    return q;
}

namespace {

std::string term_string(const FreeComplex& c, const Term& t)
{
    return fmt::format("({})*{}", t.coefficient.to_string(c.ring), c.generators[t.target].label.to_string());
}

}  // namespace

TowerResolution build_tower_resolution(std::size_t s, const RingSpec& r, const IdealSpec& ideal,
                                       const DegreeWindow& w)
{
    if (s < 1)
        throw std::invalid_argument("tower stage must be at least 1");
    auto k = build_koszul(r, ideal, w);
    auto sel = detail::select_generators(r, ideal, w);
    auto fam = detail::build_family(r, ideal, sel, 0, s - 1, true);
    TowerResolution t;
    t.stage = s;
    t.complex = std::move(fam.complex);
    t.complex.convention = tower_convention;
    t.stage_of_generator = std::move(fam.stage);
    t.included = k.included;
    t.cut = k.cut;
    auto bad = symbolic_d_squared(t.complex);
    if (!bad.empty()) {
        nlohmann::json wit{{"kind", "d_squared"}, {"stage", s}, {"violations", nlohmann::json::array()}};
        for (const auto& v : bad) {
            std::vector<std::string> img;
            for (const auto& term : v.image)
                img.push_back(term_string(t.complex, term));
            const auto& g = t.complex.generators[v.generator];
            wit["violations"].push_back({{"generator", g.label.to_string()},
                                         {"bidegree", to_json(Bidegree{g.s, g.t})},
                                         {"d_squared", img}});
        }
        throw MathFailure(fmt::format("D^2 != 0 on the tower complex K^({})", s - 1), wit);
    }
    return t;
}

Polynomial augmentation_image(const TowerResolution& tower, const IdealSpec& ideal, std::size_t generator)
{
    const auto& g = tower.complex.generators.at(generator);
    if (g.s != 0)
        throw std::invalid_argument("augmentation is defined on s-degree 0 generators");
    Polynomial p = Polynomial::constant(1, tower.complex.ring.size());
    for (int j : g.label.utilde)
        p = p * ideal.sequence.at(static_cast<std::size_t>(j - 1));
    return p;
}

namespace {

template <class S>
void check_augmentation(const TowerResolution& tower, const IdealSpec& ideal, const DegreeWindow& w,
                        const Domain<S>& dom, TowerCheck& out)
{
    const RingSpec& r = tower.complex.ring;
    GradedQuotient<S> ring(r, {}, dom, r.lowest_degree(), w.t_max);
    GradedQuotient<S> target(r, power_generators(r, ideal, tower.stage), dom, r.lowest_degree(), w.t_max);
    const auto& gens = tower.complex.generators;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        auto b0 = expanded_basis(gens, ring, 0, t);
        std::vector<Triplet<S>> ts;
        for (std::size_t col = 0; col < b0.cells.size(); ++col) {
            auto [g, j] = b0.cells[col];
            const int d = t - gens[g].t;
            for (auto& e : target.multiply_monomial(augmentation_image(tower, ideal, g), ring.basis_monomial(d, j), d))
                ts.push_back({e.index, col, std::move(e.value)});
        }
        auto eps = SparseMatrix<S>::from_triplets(target.dim(t), b0.cells.size(), std::move(ts));
        const std::size_t rk = rank(eps, dom);
        if (rk != target.dim(t))
            out.mismatches.push_back(fmt::format("augmentation not surjective at t={}: rank {} < {}", t, rk,
                                                 target.dim(t)));
        std::size_t rk1 = 0;
        if (tower.complex.s_hi >= 1) {
            auto d1 = expand_map(gens, tower.complex.differential, gens, 1, 0, t, ring);
            if (!(eps * d1).is_zero_matrix())
                out.mismatches.push_back(fmt::format("augmentation does not vanish on boundaries at t={}", t));
            rk1 = rank(d1, dom);
        }
        if (b0.cells.size() - rk != rk1)
            out.mismatches.push_back(fmt::format("ker(augmentation) has dimension {} but im(d) has rank {} at t={}",
                                                 b0.cells.size() - rk, rk1, t));
    }
    out.augmentation_rank_checked = true;
}

}  // namespace

TowerCheck verify_tower_resolution(const TowerResolution& tower, const RingSpec& r, const IdealSpec& ideal,
                                   const DegreeWindow& w, unsigned jobs)
{
    TowerCheck out;
    out.stage = tower.stage;
    auto a = analyze(tower.complex, {}, w, jobs);
    out.differential = a.differential;
    out.homology = a.homology;
    const auto powers = power_generators(r, ideal, tower.stage);
    for (int t = w.t_min; t <= w.t_max; ++t) {
        ++out.degrees_checked;
        for (int s = 0; s <= std::min(w.s_max, tower.complex.s_hi); ++s) {
            auto it = out.homology.find({s, t});
            if (it == out.homology.end() || it->second.edge_uncertain)
                continue;
            const ZModule expected = s == 0 ? quotient_in_degree(r, powers, t) : ZModule{};
            if (!(it->second.group == expected))
                out.mismatches.push_back(fmt::format("H_{} at t={}: computed {}, expected {}", s, t,
                                                     it->second.group.to_string(), expected.to_string()));
        }
    }
    dispatch(r.coefficients, [&](auto dom) {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field)
            check_augmentation(tower, ideal, w, dom, out);
    });
    return out;
}

std::string TowerCheck::summary() const
{
    std::string out = fmt::format("tower K^({}) resolving R/I^{}\n", stage - 1, stage);
    out += differential.summary();
    out += fmt::format("homology checked in {} internal degrees against R/I^{}: {}\n", degrees_checked, stage,
                       mismatches.empty() ? "pass" : "FAIL");
    if (!augmentation_rank_checked)
        out += "augmentation rank checks skipped (integer coefficients; H_0 invariants compared instead)\n";
    for (const auto& m : mismatches)
        out += "mismatch: " + m + "\n";
    return out;
}

nlohmann::json TowerCheck::witness() const
{
    return {{"kind", "tower"}, {"stage", stage}, {"differential", to_json(differential)}, {"mismatches", mismatches}};
}

}  // namespace homalg
