#include "homalg/graded/quotient.hpp"
#include "homalg/koszul/koszul.hpp"
#include "koszul_family.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace homalg {

namespace {

void require_field(const RingSpec& r, const char* op)
{
    if (!r.coefficients.is_field())
        throw std::invalid_argument(fmt::format("{} requires field coefficients", op));
}

std::size_t rank_of(const HomologyEntry* e)
{
    return e ? e->group.free_rank : 0;
}

nlohmann::json bidegrees(const std::vector<Bidegree>& bs)
{
    auto out = nlohmann::json::array();
    for (const auto& b : bs)
        out.push_back(to_json(b));
    return out;
}

template <class S>
TorComparison tor_diagonal_over(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w,
                                const Domain<S>& dom, unsigned jobs)
{
    auto k = build_koszul(r, ideal, w);
    GradedQuotient<S> quotient(r, ideal.sequence, dom, r.lowest_degree(), w.t_max);
    auto c = expand(k.complex, quotient, w.t_min, w.t_max);
    TorComparison out;
    out.cut = k.cut;
    out.computed = homology_ranks(c, jobs);
    const auto degs = ideal.degrees(r);
    const std::size_t top = std::min<std::size_t>(k.complex.s_hi, static_cast<std::size_t>(w.s_max));
    for (std::size_t n = 0; n <= top; ++n)
        for (const auto& I : detail::subsets(k.included, n)) {
            int shift = 0;
            for (auto i : I)
                shift += degs[i];
            for (int t = w.t_min; t <= w.t_max; ++t)
                if (auto d = quotient.dim(t - shift))
                    out.closed_form[{static_cast<int>(n), t}] += d;
        }
    for (const auto& [b, e] : out.computed) {
        if (b.s > w.s_max || e.edge_uncertain)
            continue;
        auto it = out.closed_form.find(b);
        const std::size_t expected = it == out.closed_form.end() ? 0 : it->second;
        if (e.group.free_rank != expected)
            out.mismatches.push_back(b);
    }
    return out;
}

}  // namespace

TorComparison tor_diagonal(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w, unsigned jobs)
{
    require_field(r, "tor_diagonal");
    return dispatch(r.coefficients, [&](auto dom) -> TorComparison {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field)
            return tor_diagonal_over(r, ideal, w, dom, jobs);
        else
            throw std::logic_error("unreachable");
    });
}

std::string TorComparison::summary() const
{
    std::string out = fmt::format("Tor(R/I, R/I) against the exterior closed form: {} ({} mismatches)\n",
                                  ok() ? "pass" : "FAIL", mismatches.size());
    for (const auto& b : mismatches) {
        auto it = closed_form.find(b);
        out += fmt::format("mismatch at (s={}, t={}): computed {}, closed form {}\n", b.s, b.t,
                           computed.at(b).group.free_rank, it == closed_form.end() ? 0 : it->second);
    }
    return out;
}

nlohmann::json TorComparison::witness() const
{
    nlohmann::json out{{"kind", "tor_diagonal"}, {"mismatches", nlohmann::json::array()}};
    for (const auto& b : mismatches) {
        auto it = closed_form.find(b);
        out["mismatches"].push_back({{"bidegree", to_json(b)},
                                     {"computed", computed.at(b).group.free_rank},
                                     {"closed_form", it == closed_form.end() ? 0 : it->second}});
    }
    return out;
}

namespace {

// T_k = Q^(k) ⊗ R/I for k = 0..count-1, with the boundaries between them.
template <class S>
struct Nodes
{
    std::vector<detail::Family> families;
    std::vector<FreeMap> maps;  // maps[k]: T_k -> T_{k+1}
    detail::Selection sel;
};

template <class S>
Nodes<S> build_nodes(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w, std::size_t first,
                     std::size_t last)
{
    Nodes<S> n;
    n.sel = detail::select_generators(r, ideal, w);
    for (std::size_t k = first; k <= last; ++k)
        n.families.push_back(detail::build_family(r, ideal, n.sel, k, k, false));
    for (std::size_t k = 0; k + 1 < n.families.size(); ++k)
        n.maps.push_back(detail::boundary_between(n.families[k], n.families[k + 1]));
    return n;
}

template <class S>
SparseMatrix<S> node_map(const Nodes<S>& nodes, std::size_t k, int n, int t, const GradedQuotient<S>& module)
{
    return expand_map(nodes.families[k].complex.generators, nodes.maps[k].images,
                      nodes.families[k + 1].complex.generators, n, n - 1, t, module);
}

template <class S>
std::size_t node_dim(const Nodes<S>& nodes, std::size_t k, int n, int t, const GradedQuotient<S>& module)
{
    return expanded_basis(nodes.families[k].complex.generators, module, n, t).cells.size();
}

template <class S>
ExactnessReport exactness_over(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w,
                               const Domain<S>& dom)
{
    build_koszul(r, ideal, w);
    GradedQuotient<S> E(r, ideal.sequence, dom, r.lowest_degree(), w.t_max);
    auto nodes = build_nodes<S>(r, ideal, w, 0, s - 1);
    const int cap = static_cast<int>(nodes.sel.cap);
    ExactnessReport out;
    out.s = s;
    auto fail = [&](Bidegree b, std::string what) {
        out.failures.push_back(fmt::format("(s={}, t={}): {}", b.s, b.t, what));
        out.witnesses.push_back(b);
    };
    for (std::size_t k = 0; k < s; ++k) {
        auto c = expand(nodes.families[k].complex, E, w.t_min, w.t_max);
        for (const auto& [b, m] : c.differential)
            if (!m.is_zero_matrix())
                fail(b, fmt::format("differential of T_{} does not vanish over R/I", k));
    }
    for (int t = w.t_min; t <= w.t_max; ++t)
        for (int n = 0; n <= cap; ++n) {
            // End node: ker ∂^(1)_* is E_* in s-degree 0 and zero above.
            if (n >= 1) {
                ++out.checks;
                const auto rk = rank(node_map(nodes, 0, n, t, E), dom);
                if (rk != node_dim(nodes, 0, n, t, E))
                    fail({n, t}, fmt::format("∂^(1)_* is not injective ({} of {})", rk, node_dim(nodes, 0, n, t, E)));
            }
            for (std::size_t k = 1; k + 1 < s; ++k) {
                if (n >= 1 && n - 1 >= 1) {
                    auto comp = node_map(nodes, k, n - 1, t, E) * node_map(nodes, k - 1, n, t, E);
                    ++out.checks;
                    if (!comp.is_zero_matrix())
                        fail({n, t}, fmt::format("∂^({})_* ∂^({})_* is nonzero", k + 1, k));
                }
                if (n + 1 > cap && nodes.sel.truncated)
                    continue;
                ++out.checks;
                const std::size_t dim = node_dim(nodes, k, n, t, E);
                const std::size_t kernel = n >= 1 ? dim - rank(node_map(nodes, k, n, t, E), dom) : dim;
                const std::size_t image = n + 1 <= cap ? rank(node_map(nodes, k - 1, n + 1, t, E), dom) : 0;
                if (kernel != image)
                    fail({n, t}, fmt::format("node T_{}: ker ∂^({})_* has dimension {} but im ∂^({})_* has rank {}",
                                             k, k + 1, kernel, k, image));
            }
        }
    return out;
}

}  // namespace

ExactnessReport verify_partial_exactness(std::size_t s, const RingSpec& r, const IdealSpec& ideal,
                                         const DegreeWindow& w, unsigned)
{
    if (s < 2)
        throw std::invalid_argument("verify_partial_exactness needs s >= 2");
    require_field(r, "verify_partial_exactness");
    return dispatch(r.coefficients, [&](auto dom) -> ExactnessReport {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field)
            return exactness_over(s, r, ideal, w, dom);
        else
            throw std::logic_error("unreachable");
    });
}

std::string ExactnessReport::summary() const
{
    std::string out = fmt::format("∂-complex T_0 -> ... -> T_{}: {} checks, {}\n", s - 1, checks,
                                  ok() ? "exact at interior nodes, ker ∂^(1)_* = E_*" : "FAIL");
    for (const auto& f : failures)
        out += "failure " + f + "\n";
    return out;
}

nlohmann::json ExactnessReport::witness() const
{
    return {{"kind", "exactness"}, {"s", s}, {"failures", failures}, {"bidegrees", bidegrees(witnesses)}};
}

namespace {

std::pair<int, std::vector<int>> merge_exterior(const std::vector<int>& a, const std::vector<int>& b)
{
    int inversions = 0;
    for (int x : a)
        for (int y : b) {
            if (x == y)
                return {0, {}};
            if (x > y)
                ++inversions;
        }
    std::vector<int> m = a;
    m.insert(m.end(), b.begin(), b.end());
    std::sort(m.begin(), m.end());
    return {inversions % 2 == 0 ? 1 : -1, m};
}

template <class S>
TorPowerReport tor_power_over(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w,
                              const Domain<S>& dom, unsigned jobs)
{
    TorPowerReport out;
    out.s = s;
    auto k = build_koszul(r, ideal, w);
    GradedQuotient<S> E(r, ideal.sequence, dom, r.lowest_degree(), w.t_max);
    GradedQuotient<S> Es(r, power_generators(r, ideal, s), dom, r.lowest_degree(), w.t_max);
    auto c = expand(k.complex, Es, w.t_min, w.t_max);
    out.brute_force = homology_ranks(c, jobs);

    // Closed form R/I + coker(∂^(s-1)_*: T_{s-2} -> T_{s-1}).
    auto nodes = build_nodes<S>(r, ideal, w, s - 2, s - 1);
    const int cap = static_cast<int>(nodes.sel.cap);
    const int top = std::min(cap, w.s_max);
    for (int n = 0; n <= top; ++n) {
        if (n + 1 > cap && nodes.sel.truncated)
            continue;
        for (int t = w.t_min; t <= w.t_max; ++t) {
            std::size_t v = node_dim(nodes, 1, n, t, E);
            if (n + 1 <= cap)
                v -= rank(node_map(nodes, 0, n + 1, t, E), dom);
            if (n == 0)
                v += E.dim(t);
            if (v)
                out.closed_form[{n, t}] = v;
        }
    }
    for (const auto& [b, e] : out.brute_force) {
        if (b.s > top || e.edge_uncertain)
            continue;
        auto it = out.closed_form.find(b);
        if (e.group.free_rank != (it == out.closed_form.end() ? 0 : it->second))
            out.mismatches.push_back(b);
    }

    // Freeness over R/I: peel shifted copies of the R/I Hilbert function.
    out.freeness_checked = !r.inverted && w.t_min == r.lowest_degree() && E.dim(w.t_min) == 1;
    if (out.freeness_checked)
        for (int n = 0; n <= top; ++n) {
            std::map<int, long long> mult;
            for (int t = w.t_min; t <= w.t_max; ++t) {
                auto it = out.brute_force.find({n, t});
                if (it != out.brute_force.end() && it->second.edge_uncertain)
                    break;
                long long m = static_cast<long long>(rank_of(it == out.brute_force.end() ? nullptr : &it->second));
                for (const auto& [t0, m0] : mult)
                    m -= m0 * static_cast<long long>(E.dim(t - t0));
                if (m < 0)
                    out.freeness_failures.push_back({n, t});
                if (m != 0) {
                    mult[t] = m;
                    out.free_multiplicities[{n, t}] = m;
                }
            }
        }

    // Products of positive-degree classes in Λ_{R/I^s}(e).
    const auto& gens = k.complex.generators;
    std::map<std::vector<int>, std::size_t> by_exterior;
    for (std::size_t g = 0; g < gens.size(); ++g)
        by_exterior.emplace(gens[g].label.exterior, g);
    std::map<Bidegree, HomologyBasis<S>> bases;
    auto basis_at = [&](Bidegree b) -> const HomologyBasis<S>& {
        auto it = bases.find(b);
        if (it == bases.end())
            it = bases.emplace(b, homology_basis(c, b)).first;
        return it->second;
    };
    std::vector<Bidegree> positive;
    for (const auto& [b, e] : out.brute_force)
        if (b.s >= 1 && e.group.free_rank > 0 && !e.edge_uncertain)
            positive.push_back(b);
    for (std::size_t x = 0; x < positive.size(); ++x)
        for (std::size_t y = x; y < positive.size(); ++y) {
            const Bidegree b1 = positive[x], b2 = positive[y];
            const Bidegree target{b1.s + b2.s, b1.t + b2.t};
            if (target.s > cap || target.t > w.t_max)
                continue;
            const auto& h1 = basis_at(b1);
            const auto& h2 = basis_at(b2);
            const auto& ht = basis_at(target);
            auto src1 = expanded_basis(gens, Es, b1.s, b1.t);
            auto src2 = expanded_basis(gens, Es, b2.s, b2.t);
            auto tgt = expanded_basis(gens, Es, target.s, target.t);
            for (std::size_t i = 0; i < h1.representatives.size(); ++i)
                for (std::size_t j = (b1 == b2 ? i : 0); j < h2.representatives.size(); ++j) {
                    std::vector<Entry<S>> prod;
                    for (const auto& a : h1.representatives[i])
                        for (const auto& bb : h2.representatives[j]) {
                            auto [g1, j1] = src1.cells[a.index];
                            auto [g2, j2] = src2.cells[bb.index];
                            auto [sign, merged] = merge_exterior(gens[g1].label.exterior, gens[g2].label.exterior);
                            if (sign == 0)
                                continue;
                            const std::size_t gt = by_exterior.at(merged);
                            const int d1 = b1.t - gens[g1].t, d2 = b2.t - gens[g2].t;
                            S coeff = a.value * bb.value;
                            if (sign < 0)
                                coeff = -coeff;
                            for (const auto& e : Es.product(d1, j1, d2, j2))
                                prod.push_back({tgt.index.at({gt, e.index}), coeff * e.value});
                        }
                    ++out.products_checked;
                    auto v = from_unsorted(std::move(prod));
                    if (!ht.boundaries.contains(v))
                        out.nonzero_products.push_back(fmt::format("class {} at (s={}, t={}) times class {} at (s={}, t={})",
                                                                   i, b1.s, b1.t, j, b2.s, b2.t));
                }
        }
    return out;
}

}  // namespace

TorPowerReport tor_against_power(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w,
                                 unsigned jobs)
{
    if (s < 2)
        throw std::invalid_argument("tor_against_power needs s >= 2");
    require_field(r, "tor_against_power");
    return dispatch(r.coefficients, [&](auto dom) -> TorPowerReport {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field)
            return tor_power_over(s, r, ideal, w, dom, jobs);
        else
            throw std::logic_error("unreachable");
    });
}

std::string TorPowerReport::summary() const
{
    std::string out = fmt::format("Tor(R/I, R/I^{}): brute force vs R/I + coker: {} ({} mismatches)\n", s,
                                  mismatches.empty() ? "agree" : "DISAGREE", mismatches.size());
    for (const auto& b : mismatches)
        out += fmt::format("mismatch at (s={}, t={})\n", b.s, b.t);
    if (!freeness_checked)
        out += "freeness over R/I not checked (window does not start at the base's lowest degree)\n";
    else
        out += fmt::format("free over R/I: {} ({} shifted summands)\n", freeness_failures.empty() ? "yes" : "NO",
                           free_multiplicities.size());
    out += fmt::format("products of positive-degree classes: {} checked, {} nonzero\n", products_checked,
                       nonzero_products.size());
    for (const auto& p : nonzero_products)
        out += "nonzero product: " + p + "\n";
    return out;
}

nlohmann::json TorPowerReport::witness() const
{
    return {{"kind", "tor_against_power"},
            {"s", s},
            {"mismatches", bidegrees(mismatches)},
            {"freeness_failures", bidegrees(freeness_failures)},
            {"nonzero_products", nonzero_products}};
}

}  // namespace homalg
