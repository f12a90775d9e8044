#include "homalg/complex/free_complex.hpp"

#include <fmt/format.h>

#include <map>
#include <stdexcept>

namespace homalg {

std::string BasisLabel::to_string() const
{
    std::string out;
    for (int i : exterior)
        out += fmt::format("e{}", i);
    if (!utilde.empty()) {
        if (!out.empty())
            out += "*";
        out += fmt::format("u~({})", fmt::join(utilde, ","));
    }
    if (!word.empty()) {
        if (!out.empty())
            out += "*";
        out += word;
    }
    return out.empty() ? "1" : out;
}

std::vector<std::size_t> FreeComplex::in_degree(int s) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].s == s)
            out.push_back(i);
    return out;
}

std::size_t FreeComplex::add_generator(FreeGenerator g)
{
    generators.push_back(std::move(g));
    differential.emplace_back();
    return generators.size() - 1;
}

void FreeComplex::add_term(std::size_t source, std::size_t target, Polynomial coefficient)
{
    if (coefficient.is_zero())
        return;
    auto& img = differential.at(source);
    for (auto& term : img)
        if (term.target == target) {
            term.coefficient = term.coefficient + coefficient;
            std::erase_if(img, [](const Term& x) { return x.coefficient.is_zero(); });
            return;
        }
    img.push_back({target, std::move(coefficient)});
}

FreeComplex unit_complex(const RingSpec& r)
{
    FreeComplex c;
    c.ring = r;
    c.add_generator({BasisLabel{}, 0, 0});
    return c;
}

namespace {

BasisLabel tensor_label(const BasisLabel& a, const BasisLabel& b)
{
    auto sa = a.to_string();
    auto sb = b.to_string();
    if (sa == "1")
        return b;
    if (sb == "1")
        return a;
    return BasisLabel::text(sa + "(x)" + sb);
}

}  // namespace

FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b)
{
    if (!(a.ring == b.ring))
        throw std::invalid_argument("tensor_complexes: base rings differ");
    if (a.direction != b.direction)
        throw std::invalid_argument("tensor_complexes: directions differ");
    FreeComplex c;
    c.ring = a.ring;
    c.direction = a.direction;
    c.s_lo = a.s_lo + b.s_lo;
    c.s_hi = a.s_hi + b.s_hi;
    c.truncated_top = a.truncated_top || b.truncated_top;
    const std::size_t nb = b.generators.size();
    auto pair_index = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
    for (const auto& ga : a.generators)
        for (const auto& gb : b.generators)
            c.add_generator({tensor_label(ga.label, gb.label), ga.s + gb.s, ga.t + gb.t});
    for (std::size_t i = 0; i < a.generators.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t src = pair_index(i, j);
            for (const auto& term : a.differential[i])
                c.add_term(src, pair_index(term.target, j), term.coefficient);
            const Integer sign = (a.generators[i].s % 2 == 0) ? 1 : -1;
            for (const auto& term : b.differential[j])
                c.add_term(src, pair_index(i, term.target), sign * term.coefficient);
        }
    return c;
}

FreeComplex shift(const FreeComplex& c, int k)
{
    FreeComplex out = c;
    const Integer sign = (k % 2 == 0) ? 1 : -1;
    for (auto& g : out.generators)
        g.s -= k;
    for (auto& img : out.differential)
        for (auto& term : img)
            term.coefficient = sign * term.coefficient;
    out.s_lo = c.s_lo - k;
    out.s_hi = c.s_hi - k;
    return out;
}

namespace {

Polynomial reduce_coefficients(const Polynomial& p, const Coefficients& c)
{
    if (c.kind != Coefficients::Kind::PrimeField)
        return p;
    std::vector<Polynomial::Term> terms;
    for (auto [m, v] : p.terms()) {
        v %= c.p;
        terms.emplace_back(std::move(m), std::move(v));
    }
    return Polynomial::from_terms(std::move(terms));
}

}  // namespace

std::vector<SymbolicViolation> symbolic_d_squared(const FreeComplex& c)
{
    std::vector<SymbolicViolation> out;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        std::map<std::size_t, Polynomial> acc;
        for (const auto& t1 : c.differential[i])
            for (const auto& t2 : c.differential[t1.target])
                acc[t2.target] = acc[t2.target] + t1.coefficient * t2.coefficient;
        std::vector<Term> image;
        for (auto& [target, poly] : acc) {
            Polynomial r = reduce_coefficients(poly, c.ring.coefficients);
            if (!r.is_zero())
                image.push_back({target, std::move(r)});
        }
        if (!image.empty())
            out.push_back({i, std::move(image)});
    }
    return out;
}

}  // namespace homalg
