#include "homalg/graded/ring.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace homalg {

void DegreeWindow::validate() const
{
    if (t_min > t_max)
        throw std::invalid_argument(fmt::format("window: t_min {} exceeds t_max {}", t_min, t_max));
    if (s_max < 0 || stage_max < 0)
        throw std::invalid_argument("window: s_max and stage_max must be non-negative");
}

void RingSpec::validate() const
{
    window.validate();
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (g.degree <= 0 || g.degree % 2 != 0)
            throw std::invalid_argument(
                fmt::format("generator {} has degree {}: even degree required", g.name, g.degree));
        if (!names.insert(g.name).second)
            throw std::invalid_argument("duplicate generator name " + g.name);
    }
    if (inverted && *inverted >= generators.size())
        throw std::invalid_argument("inverted generator out of range");
    if (negative_bound && *negative_bound < 0)
        throw std::invalid_argument("negative exponent bound must be >= 0");
}

std::optional<std::size_t> RingSpec::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name)
            return i;
    return std::nullopt;
}

int RingSpec::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * generators[i].degree;
    return d;
}

int RingSpec::inverted_floor() const
{
    if (!inverted)
        return 0;
    if (negative_bound)
        return *negative_bound;
    int span = window.t_max - window.t_min;
    int d = generators[*inverted].degree;
    return (span + d - 1) / d;
}

int RingSpec::min_exponent(std::size_t i) const
{
    return (inverted && *inverted == i) ? -inverted_floor() : 0;
}

int RingSpec::lowest_degree() const
{
    if (!inverted)
        return 0;
    return -inverted_floor() * generators[*inverted].degree;
}

std::vector<Monomial> enumerate_monomials(const RingSpec& r, int t)
{
    const std::size_t n = r.size();
    std::vector<Monomial> out;
    if (n == 0) {
        if (t == 0)
            out.push_back({});
        return out;
    }
    // floor_tail[i] = sum_{j >= i} min_exponent(j) * degree(j)
    std::vector<int> floor_tail(n + 1, 0);
    for (std::size_t i = n; i-- > 0;)
        floor_tail[i] = floor_tail[i + 1] + r.min_exponent(i) * r.generators[i].degree;

    Monomial cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        const int d = r.generators[i].degree;
        if (i + 1 == n) {
            if (remaining % d == 0 && remaining / d >= r.min_exponent(i)) {
                cur[i] = remaining / d;
                out.push_back(cur);
            }
            return;
        }
        int slack = remaining - floor_tail[i + 1];
        // largest e with e*d <= slack
        int hi = slack >= 0 ? slack / d : -((-slack + d - 1) / d);
        for (int e = hi; e >= r.min_exponent(i); --e) {
            cur[i] = e;
            self(self, i + 1, remaining - e * d);
        }
    };
    rec(rec, 0, t);
    return out;
}

std::vector<Monomial> monomial_basis(const RingSpec& r, int t)
{
    if (!r.window.contains_t(t))
        throw std::out_of_range(
            fmt::format("degree {} outside window [{}, {}]", t, r.window.t_min, r.window.t_max));
    return enumerate_monomials(r, t);
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

namespace {

std::vector<Polynomial::Term> normalise(std::vector<Polynomial::Term> terms)
{
    std::map<Monomial, Integer, std::greater<>> acc;
    for (auto& [m, c] : terms)
        acc[m] += c;
    std::vector<Polynomial::Term> out;
    for (auto& [m, c] : acc)
        if (c != 0)
            out.emplace_back(m, c);
    return out;
}

}  // namespace

Polynomial Polynomial::constant(const Integer& c, std::size_t nvars)
{
    return from_terms({{Monomial(nvars, 0), c}});
}

Polynomial Polynomial::variable(std::size_t i, std::size_t nvars, int exponent)
{
    Monomial m(nvars, 0);
    m[i] = exponent;
    return from_terms({{m, Integer(1)}});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
    Polynomial p;
    p.terms_ = normalise(std::move(terms));
    return p;
}

std::optional<int> Polynomial::degree(const RingSpec& r) const
{
    if (terms_.empty())
        return std::nullopt;
    int d = r.degree(terms_.front().first);
    for (const auto& [m, c] : terms_)
        if (r.degree(m) != d)
            return std::nullopt;
    return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Polynomial::from_terms(std::move(t));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Integer(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    std::vector<Polynomial::Term> t;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            t.emplace_back(ma * mb, ca * cb);
    return Polynomial::from_terms(std::move(t));
}

Polynomial operator*(const Integer& c, const Polynomial& a)
{
    auto t = a.terms_;
    for (auto& term : t)
        term.second *= c;
    return Polynomial::from_terms(std::move(t));
}

Polynomial Polynomial::pow(unsigned e) const
{
    std::size_t n = terms_.empty() ? 0 : terms_.front().first.size();
    Polynomial acc = constant(1, n);
    for (unsigned i = 0; i < e; ++i)
        acc = acc * *this;
    return acc;
}

std::string monomial_to_string(const Monomial& m, const RingSpec& r)
{
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        const std::string& name = i < r.size() ? r.generators[i].name : fmt::format("g{}", i);
        parts.push_back(m[i] == 1 ? name : fmt::format("{}^{}", name, m[i]));
    }
    if (parts.empty())
        return "1";
    return fmt::format("{}", fmt::join(parts, "*"));
}

std::string Polynomial::to_string(const RingSpec& r) const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Integer mag = c < 0 ? Integer(-c) : c;
        bool unit_monomial = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        std::string body;
        if (unit_monomial)
            body = mag.str();
        else if (mag == 1)
            body = monomial_to_string(m, r);
        else
            body = mag.str() + "*" + monomial_to_string(m, r);
        if (first)
            out += (c < 0 ? "-" : "") + body;
        else
            out += (c < 0 ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

std::vector<std::size_t> hilbert_series_by_generating_function(const std::vector<int>& degrees, int t_max)
{
    if (t_max < 0)
        return {};
    std::vector<std::size_t> coeff(static_cast<std::size_t>(t_max) + 1, 0);
    coeff[0] = 1;
    // Multiply by 1/(1 - q^d) one factor at a time.
    for (int d : degrees)
        for (int t = d; t <= t_max; ++t)
            coeff[static_cast<std::size_t>(t)] += coeff[static_cast<std::size_t>(t - d)];
    return coeff;
}

}  // namespace homalg
