#include "homalg/examples/adams.hpp"
#include "homalg/graded/quotient.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace homalg {

std::string to_string(ExampleKind k)
{
    switch (k) {
    case ExampleKind::A:
        return "A";
    case ExampleKind::B:
        return "B";
    case ExampleKind::C:
        break;
    }
    return "C";
}

ExampleKind parse_example_kind(const std::string& s)
{
    if (s == "A")
        return ExampleKind::A;
    if (s == "B")
        return ExampleKind::B;
    if (s == "C")
        return ExampleKind::C;
    throw std::invalid_argument("example must be A, B or C, got '" + s + "'");
}

void ExampleConfig::validate() const
{
    window.validate();
    if (!is_prime(p))
        throw std::invalid_argument(fmt::format("p = {} is not prime", p));
    if (which != ExampleKind::A && n < 1)
        throw std::invalid_argument("height n must be at least 1");
    if (j_max < 0 || (which != ExampleKind::A && j_max < n))
        throw std::invalid_argument(fmt::format("j_max = {} must be at least n = {}", j_max, n));
}

RingSpec mu_ring(Coefficients c, int j_max, const DegreeWindow& w)
{
    RingSpec r;
    r.coefficients = c;
    r.window = w;
    for (int j = 1; j <= j_max; ++j)
        r.generators.push_back({fmt::format("x{}", j), 2 * j});
    return r;
}

namespace {

long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

}  // namespace

std::vector<int> kunneth_indices(const ExampleConfig& c)
{
    c.validate();
    std::vector<int> out;
    const long long p = static_cast<long long>(c.p);
    for (int j = 0; j <= c.j_max; ++j) {
        switch (c.which) {
        case ExampleKind::A:
            out.push_back(j);
            break;
        case ExampleKind::B: {
            bool excluded = j == 0;
            for (int k = 1; k <= c.n; ++k)
                excluded = excluded || j == ipow(p, k) - 1;
            if (!excluded)
                out.push_back(j);
            break;
        }
        case ExampleKind::C:
            if (j != ipow(p, c.n) - 1)
                out.push_back(j);
            break;
        }
    }
    return out;
}

ExampleSetup example_setup(const ExampleConfig& c)
{
    c.validate();
    ExampleSetup s;
    const auto& w = c.window;
    s.mu = mu_ring(Coefficients::integers(), c.j_max, w);
    RingSpec base;
    base.window = w;
    const int word_budget = w.s_max * (2 * c.j_max + 1);
    switch (c.which) {
    case ExampleKind::A: {
        s.ideal.sequence.push_back(Polynomial::constant(Integer(c.p), s.mu.size()));
        for (std::size_t j = 0; j < s.mu.size(); ++j)
            s.ideal.sequence.push_back(Polynomial::variable(j, s.mu.size()));
        s.ideal.truncated = true;
        base.coefficients = Coefficients::prime_field(c.p);
        s.base_name = fmt::format("F_{}", c.p);
        s.notes.push_back(fmt::format("sequence (p, x_1..x_{}) truncated at j_max", c.j_max));
        break;
    }
    case ExampleKind::B: {
        base.coefficients = Coefficients::integers();
        for (int k = 1; k <= c.n; ++k)
            base.generators.push_back({fmt::format("v{}", k), static_cast<int>(2 * (ipow(c.p, k) - 1))});
        base.inverted = base.generators.size() - 1;
        s.base_name = fmt::format("E({})_*", c.n);
        break;
    }
    case ExampleKind::C: {
        base.coefficients = Coefficients::prime_field(c.p);
        base.generators.push_back({fmt::format("v{}", c.n), static_cast<int>(2 * (ipow(c.p, c.n) - 1))});
        base.inverted = 0;
        s.base_name = fmt::format("K({})_*", c.n);
        break;
    }
    }
    if (base.inverted) {
        const int d = base.generators[*base.inverted].degree;
        base.negative_bound = (w.t_max - w.t_min + word_budget + d - 1) / d;
        s.notes.push_back(fmt::format("{} tabulated with v_{} exponents >= -{}", s.base_name, c.n, *base.negative_bound));
        if (c.which == ExampleKind::B && c.n >= 2)
            s.notes.push_back("E(n)_* is not degreewise finite for n >= 2; base ranks depend on the exponent floor");
    }
    s.hopf.ring = base;
    for (int j : kunneth_indices(c))
        s.hopf.primitives.push_back({std::to_string(j), 2 * j + 1});
    return s;
}

E2Presentation kunneth_presentation(const ExampleConfig& c)
{
    auto s = example_setup(c);
    E2Presentation p;
    p.kind = PresentationKind::Exterior;
    p.base_name = s.base_name;
    p.window = c.window;
    p.base_dims = base_dimensions(s.hopf, s.hopf.ring.lowest_degree(), c.window.t_max);
    for (const auto& pr : s.hopf.primitives)
        p.generators.push_back({"tau_" + pr.label, {1, pr.degree - 1}});
    p.notes = s.notes;
    tabulate(p);
    return p;
}

E2Presentation adams_e2_table(const ExampleConfig& c, unsigned jobs)
{
    auto s = example_setup(c);
    auto p = e2_closed_form(s.hopf, c.window);
    p.base_name = s.base_name;
    p.notes = s.notes;
    p.collapse = collapse_audit(p, DifferentialPattern::Adams);
    if (!s.hopf.ring.inverted && s.hopf.primitives.size() <= 3) {
        auto cobar = cotor_ranks(s.hopf, c.window, jobs);
        p.pipeline = cobar.ok() ? "closed form, cobar agrees" : "closed form, COBAR DISAGREES";
    } else {
        p.pipeline = "closed form";
    }
    return p;
}

namespace {

template <class S>
bool surjective_in_degree(const GradedQuotient<S>& finer, const GradedQuotient<S>& coarser, int t)
{
    const std::size_t n = finer.dim(t);
    std::vector<Triplet<S>> ts;
    const Polynomial one = Polynomial::constant(1, finer.ring().size());
    for (std::size_t j = 0; j < n; ++j)
        for (auto& e : coarser.multiply_monomial(one, finer.basis_monomial(t, j), t))
            ts.push_back({e.index, j, std::move(e.value)});
    auto m = SparseMatrix<S>::from_triplets(coarser.dim(t), n, std::move(ts));
    return rank(m, coarser.domain()) == coarser.dim(t);
}

Integer order(const ZModule& m)
{
    Integer o = 1;
    for (const auto& q : m.torsion)
        o *= q;
    return o;
}

}  // namespace

CompletionReport completion_tower(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w)
{
    r.validate();
    w.validate();
    ideal.validate(r);
    if (w.stage_max < 2)
        throw std::invalid_argument("completion_tower needs stage_max >= 2");
    CompletionReport rep;
    rep.window = w;
    rep.zero_below = !r.inverted && w.t_min <= 0;
    auto degs = ideal.degrees(r);
    if (!degs.empty())
        rep.min_degree = *std::min_element(degs.begin(), degs.end());
    rep.stabilization_certified = !rep.min_degree || *rep.min_degree > 0;
    if (!rep.stabilization_certified)
        rep.warnings.push_back("the sequence contains a degree-0 element: degreewise stabilization is not expected");
    if (ideal.truncated)
        rep.warnings.push_back(fmt::format(
            "the sequence is the leading part of an infinite one (truncated after {} terms); the tower is exact only "
            "in degrees below the first omitted generator",
            ideal.size()));
    const int lowest = r.lowest_degree();
    auto bound = [&](int t) -> std::size_t {
        if (!rep.min_degree)
            return 1;
        return static_cast<std::size_t>((t - lowest) / *rep.min_degree) + 1;
    };
    std::size_t top = static_cast<std::size_t>(w.stage_max);
    if (rep.stabilization_certified)
        top = std::max(top, bound(w.t_max));

    dispatch(r.coefficients, [&](auto dom) {
        using S = std::decay_t<decltype(dom.zero())>;
        std::vector<std::vector<ZModule>> values(static_cast<std::size_t>(w.t_max - w.t_min + 1));
        std::vector<bool> onto(values.size(), true);
        if constexpr (Domain<S>::is_field) {
            std::vector<GradedQuotient<S>> towers;
            for (std::size_t s = 1; s <= top + 1; ++s)
                towers.emplace_back(r, power_generators(r, ideal, s), dom, lowest, w.t_max);
            for (int t = w.t_min; t <= w.t_max; ++t) {
                const auto i = static_cast<std::size_t>(t - w.t_min);
                for (std::size_t s = 1; s <= top; ++s) {
                    values[i].push_back({towers[s - 1].dim(t), {}});
                    if (s <= static_cast<std::size_t>(w.stage_max))
                        onto[i] = onto[i] && surjective_in_degree(towers[s], towers[s - 1], t);
                }
            }
        } else {
            for (int t = w.t_min; t <= w.t_max; ++t) {
                const auto i = static_cast<std::size_t>(t - w.t_min);
                for (std::size_t s = 1; s <= top + 1; ++s)
                    values[i].push_back(quotient_in_degree(r, power_generators(r, ideal, s), t));
                // Z-quotients of the same free module by nested lattices: ranks
                // cannot grow and finite orders divide.
                for (std::size_t s = 0; s + 1 < values[i].size(); ++s) {
                    const auto& coarse = values[i][s];
                    const auto& fine = values[i][s + 1];
                    bool ok = fine.free_rank >= coarse.free_rank;
                    if (ok && fine.free_rank == 0 && coarse.free_rank == 0)
                        ok = order(fine) % order(coarse) == 0;
                    onto[i] = onto[i] && ok;
                }
                values[i].pop_back();
            }
        }
        for (int t = w.t_min; t <= w.t_max; ++t) {
            const auto i = static_cast<std::size_t>(t - w.t_min);
            CompletionDegree d;
            d.t = t;
            d.surjective = onto[i];
            d.stages.assign(values[i].begin(), values[i].begin() + w.stage_max);
            if (rep.stabilization_certified) {
                const std::size_t b = bound(t);
                const ZModule stable = values[i][b - 1];
                std::size_t first = b;
                while (first > 1 && values[i][first - 2] == stable)
                    --first;
                d.stabilized_at = first;
                d.stable_value = stable;
            }
            rep.degrees.emplace(t, std::move(d));
        }
    });
    return rep;
}

bool CompletionReport::surjective() const
{
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& kv) { return kv.second.surjective; });
}

std::string CompletionReport::summary() const
{
    std::string out;
    for (const auto& w : warnings)
        out += "warning: " + w + "\n";
    out += fmt::format("tower maps surjective: {}\n", surjective() ? "yes" : "NO");
    for (const auto& [t, d] : degrees) {
        std::vector<std::string> st;
        for (const auto& m : d.stages)
            st.push_back(m.to_string());
        out += fmt::format("t={}: {}", t, fmt::join(st, " <- "));
        if (d.stabilized_at)
            out += fmt::format("  (stable from s={}: {})", *d.stabilized_at, d.stable_value->to_string());
        else
            out += "  (no stabilization)";
        out += "\n";
    }
    return out;
}

CompletionReport module_completion(const std::vector<int>& shifts, const CompletionReport& base)
{
    if (shifts.empty())
        throw std::invalid_argument("module_completion needs at least one generator degree");
    CompletionReport out;
    out.window = base.window;
    out.stabilization_certified = base.stabilization_certified;
    out.min_degree = base.min_degree;
    out.zero_below = base.zero_below;
    out.warnings = base.warnings;
    const int lo_shift = *std::min_element(shifts.begin(), shifts.end());
    const std::size_t stages = static_cast<std::size_t>(base.window.stage_max);
    for (int t = base.window.t_min + lo_shift; t <= base.window.t_max + lo_shift; ++t) {
        CompletionDegree d;
        d.t = t;
        d.stages.assign(stages, ZModule{});
        bool known = true;
        bool stable = base.stabilization_certified;
        std::size_t stable_from = 1;
        ZModule stable_value;
        for (int k : shifts) {
            const int u = t - k;
            auto it = base.degrees.find(u);
            if (it == base.degrees.end()) {
                known = known && u < base.window.t_min && base.zero_below;
                continue;
            }
            const auto& src = it->second;
            for (std::size_t s = 0; s < stages; ++s)
                d.stages[s] = direct_sum(d.stages[s], src.stages[s]);
            d.surjective = d.surjective && src.surjective;
            if (src.stabilized_at) {
                stable_from = std::max(stable_from, *src.stabilized_at);
                stable_value = direct_sum(stable_value, *src.stable_value);
            } else {
                stable = false;
            }
        }
        if (!known)
            continue;
        if (stable) {
            d.stabilized_at = stable_from;
            d.stable_value = stable_value;
        }
        out.degrees.emplace(t, std::move(d));
    }
    return out;
}

}  // namespace homalg
