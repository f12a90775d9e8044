#include "homalg/hopf/cotor.hpp"

#include <fmt/format.h>

#include <bit>
#include <functional>

namespace homalg {

void HopfSpec::validate() const
{
    ring.validate();
    for (const auto& p : primitives)
        if (p.degree <= 0 || p.degree % 2 == 0)
            throw std::invalid_argument(
                fmt::format("primitive tau_{} has degree {}: odd positive degree required", p.label, p.degree));
}

HopfSpec hopf_from_quotient(const RingSpec& r, const IdealSpec& ideal, int first_label)
{
    HopfSpec h;
    h.ring = r;
    h.base_relations = ideal.sequence;
    auto degs = ideal.degrees(r);
    for (std::size_t i = 0; i < degs.size(); ++i)
        h.primitives.push_back({std::to_string(static_cast<int>(i) + first_label), degs[i] + 1});
    return h;
}

namespace {

using Letter = std::uint64_t;  // bitmask of primitives
using Word = std::vector<Letter>;

int letter_degree(const HopfSpec& h, Letter a)
{
    int d = 0;
    for (std::size_t i = 0; i < h.primitives.size(); ++i)
        if (a >> i & 1)
            d += h.primitives[i].degree;
    return d;
}

std::string letter_name(const HopfSpec& h, Letter a)
{
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < h.primitives.size(); ++i)
        if (a >> i & 1)
            parts.push_back("tau_" + h.primitives[i].label);
    return fmt::format("{}", fmt::join(parts, "*"));
}

BasisLabel word_label(const HopfSpec& h, const Word& w)
{
    if (w.empty())
        return {};
    std::vector<std::string> parts;
    for (auto a : w)
        parts.push_back(letter_name(h, a));
    return BasisLabel::text(fmt::format("[{}]", fmt::join(parts, "|")));
}

// Sign of τ_J ⊗ τ_K in Δ(τ_{J∪K}): one factor per pair k ∈ K, j ∈ J with k < j.
int shuffle_sign(Letter J, Letter K)
{
    int pairs = 0;
    for (Letter k = K; k; k &= k - 1) {
        const int kb = std::countr_zero(k);
        pairs += std::popcount(J >> (kb + 1));
    }
    return pairs % 2 == 0 ? 1 : -1;
}

}  // namespace

FreeComplex cobar_complex(const HopfSpec& h, const DegreeWindow& w)
{
    h.validate();
    if (h.primitives.size() >= 63)
        throw std::invalid_argument("too many primitives");
    FreeComplex c;
    c.ring = h.ring;
    c.direction = Direction::Cohomological;
    c.s_lo = 0;
    c.s_hi = w.s_max + 1;
    c.truncated_top = !h.primitives.empty();
    c.convention = "d[a_1|...|a_s] = sum_i (-1)^i [a_1|...|Δ̄a_i|...|a_s]; Δ̄(τ_I) = sum ± τ_J ⊗ τ_K, "
                   "sign (-1)^#{(k in K, j in J): k < j}";
    const int budget = w.t_max - h.ring.lowest_degree();
    const Letter letters = (Letter{1} << h.primitives.size()) - 1;
    std::map<Word, std::size_t> index;
    Word cur;
    auto rec = [&](auto&& self, int deg) -> void {
        index.emplace(cur, c.add_generator({word_label(h, cur), static_cast<int>(cur.size()), deg}));
        if (static_cast<int>(cur.size()) == c.s_hi)
            return;
        for (Letter a = 1; a <= letters; ++a) {
            const int d = letter_degree(h, a);
            if (deg + d > budget)
                continue;
            cur.push_back(a);
            self(self, deg + d);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    const std::size_t nv = h.ring.size();
    for (const auto& [word, src] : index) {
        if (static_cast<int>(word.size()) == c.s_hi)
            continue;
        for (std::size_t i = 0; i < word.size(); ++i) {
            const Letter a = word[i];
            const int position_sign = (i + 1) % 2 == 0 ? 1 : -1;
            // proper nonempty submasks J of a
            for (Letter J = (a - 1) & a; J; J = (J - 1) & a) {
                const Letter K = a ^ J;
                Word target(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
                target.push_back(J);
                target.push_back(K);
                target.insert(target.end(), word.begin() + static_cast<std::ptrdiff_t>(i) + 1, word.end());
                c.add_term(src, index.at(target),
                           Polynomial::constant(Integer(position_sign * shuffle_sign(J, K)), nv));
            }
        }
    }
    return c;
}

std::map<int, std::size_t> base_dimensions(const HopfSpec& h, int lo, int hi)
{
    std::map<int, std::size_t> out;
    dispatch(h.ring.coefficients, [&](auto dom) {
        using S = std::decay_t<decltype(dom.zero())>;
        if constexpr (Domain<S>::is_field) {
            GradedQuotient<S> q(h.ring, h.base_relations, dom, lo, hi);
            for (int t = lo; t <= hi; ++t)
                if (q.dim(t))
                    out[t] = q.dim(t);
        } else {
            for (int t = lo; t <= hi; ++t)
                if (auto n = quotient_in_degree(h.ring, h.base_relations, t).free_rank)
                    out[t] = n;
        }
    });
    return out;
}

void tabulate(E2Presentation& p)
{
    const auto& w = p.window;
    const int lo = p.base_dims.empty() ? 0 : std::min(0, p.base_dims.begin()->first);
    const int T = w.t_max - lo;
    const int S = w.s_max;
    if (T < 0 || S < 0) {
        p.ranks.clear();
        return;
    }
    std::vector<std::vector<std::size_t>> cnt(S + 1, std::vector<std::size_t>(T + 1, 0));
    cnt[0][0] = 1;
    for (const auto& g : p.generators) {
        const int gs = g.bidegree.s, gt = g.bidegree.t;
        const int t_floor = p.kind == PresentationKind::Polynomial ? 1 : 0;
        if (gs < 1 || gt < t_floor)
            throw std::invalid_argument(fmt::format("generator {} needs s >= 1 and t >= {}", g.name, t_floor));
        if (p.kind == PresentationKind::Polynomial) {
            for (int s = gs; s <= S; ++s)
                for (int t = gt; t <= T; ++t)
                    cnt[s][t] += cnt[s - gs][t - gt];
        } else {
            for (int s = S; s >= gs; --s)
                for (int t = T; t >= gt; --t)
                    cnt[s][t] += cnt[s - gs][t - gt];
        }
    }
    p.ranks.clear();
    for (int s = 0; s <= S; ++s)
        for (int t = w.t_min; t <= w.t_max; ++t) {
            std::size_t total = 0;
            for (const auto& [d, n] : p.base_dims) {
                const int tw = t - d;
                if (tw >= 0 && tw <= T)
                    total += cnt[s][tw] * n;
            }
            if (total)
                p.ranks[{s, t}] = total;
        }
}

E2Presentation e2_closed_form(const HopfSpec& h, const DegreeWindow& w)
{
    h.validate();
    E2Presentation p;
    p.kind = PresentationKind::Polynomial;
    p.window = w;
    p.base_dims = base_dimensions(h, h.ring.lowest_degree(), w.t_max);
    std::vector<std::string> dual;
    for (const auto& pr : h.primitives) {
        p.generators.push_back({"U_" + pr.label, {1, pr.degree}});
        dual.push_back(fmt::format("Q^{} (degree {}, dual to tau_{})", pr.label, -pr.degree, pr.label));
    }
    p.dual_presentation = dual.empty() ? "dual: E_*" : fmt::format("dual: completed exterior algebra over E_* on {}",
                                                                      fmt::join(dual, ", "));
    tabulate(p);
    return p;
}

CotorReport cotor_ranks(const HopfSpec& h, const DegreeWindow& w, unsigned jobs)
{
    CotorReport rep;
    auto cobar = cobar_complex(h, w);
    auto a = analyze(cobar, h.base_relations, w, jobs);
    rep.differential = a.differential;
    rep.computed = std::move(a.homology);
    rep.closed_form = e2_closed_form(h, w).ranks;
    for (const auto& [b, e] : rep.computed) {
        if (b.s > w.s_max || e.edge_uncertain)
            continue;
        auto it = rep.closed_form.find(b);
        const std::size_t expected = it == rep.closed_form.end() ? 0 : it->second;
        if (e.group.free_rank != expected || !e.group.torsion.empty())
            rep.mismatches.push_back(b);
    }
    return rep;
}

std::string CotorReport::summary() const
{
    std::string out = differential.summary();
    out += fmt::format("cobar cohomology against E_*[U_i]: {} ({} mismatches)\n", ok() ? "pass" : "FAIL",
                       mismatches.size());
    for (const auto& b : mismatches) {
        auto it = closed_form.find(b);
        out += fmt::format("mismatch at (s={}, t={}): cobar {}, closed form {}\n", b.s, b.t,
                           computed.at(b).group.to_string(), it == closed_form.end() ? 0 : it->second);
    }
    return out;
}

nlohmann::json CotorReport::witness() const
{
    nlohmann::json out{{"kind", "cotor"}, {"differential", to_json(differential)}, {"mismatches", nlohmann::json::array()}};
    for (const auto& b : mismatches) {
        auto it = closed_form.find(b);
        out["mismatches"].push_back({{"bidegree", to_json(b)},
                                     {"cobar", to_json(computed.at(b).group)},
                                     {"closed_form", it == closed_form.end() ? 0 : it->second}});
    }
    return out;
}

bool parity_holds(const E2Presentation& p)
{
    for (const auto& [b, n] : p.ranks)
        if (n && (b.t - b.s) % 2 != 0)
            return false;
    return true;
}

CollapseVerdict collapse_audit(const E2Presentation& p, DifferentialPattern pattern, std::optional<AuditScope> scope)
{
    CollapseVerdict v;
    v.pattern = pattern;
    v.scope = scope.value_or(pattern == DifferentialPattern::Adams ? AuditScope::AllEntries : AuditScope::Generators);
    v.parity_holds = parity_holds(p);
    std::vector<Bidegree> sources;
    if (v.scope == AuditScope::AllEntries)
        for (const auto& [b, n] : p.ranks)
            sources.push_back(b);
    else
        for (const auto& g : p.generators)
            sources.push_back(g.bidegree);
    const auto& w = p.window;
    for (const auto& src : sources) {
        ++v.sources_checked;
        const int r_max = pattern == DifferentialPattern::Adams ? w.s_max - src.s : src.s;
        for (int r = 2; r <= r_max; ++r) {
            const Bidegree tgt = pattern == DifferentialPattern::Adams ? Bidegree{src.s + r, src.t + r - 1}
                                                                       : Bidegree{src.s - r, src.t + r - 1};
            if (!w.contains_t(tgt.t)) {
                ++v.targets_outside_window;
                continue;
            }
            if (p.rank(tgt))
                v.candidates.push_back({r, src, tgt, p.rank(src), p.rank(tgt)});
        }
    }
    return v;
}

std::string CollapseVerdict::text() const
{
    if (collapses())
        return "collapses at E_2 within window";
    std::vector<std::string> parts;
    for (const auto& c : candidates)
        parts.push_back(fmt::format("d_{}: (s={}, t={}) -> (s={}, t={})", c.r, c.source.s, c.source.t, c.target.s,
                                    c.target.t));
    return fmt::format("potentially nonzero differentials: {}", fmt::join(parts, "; "));
}

}  // namespace homalg
