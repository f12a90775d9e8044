#pragma once

#include "homalg/linalg/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homalg {

// Truncation of every computation: internal degrees t_min..t_max, homological
// degrees 0..s_max, tower stages 1..stage_max.
struct DegreeWindow
{
    int t_min = 0;
    int t_max = 0;
    int s_max = 0;
    int stage_max = 0;

    bool contains_t(int t) const { return t >= t_min && t <= t_max; }
    void validate() const;
    friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

struct Generator
{
    std::string name;
    int degree = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
};

// Exponent vector; negative entries only on the inverted generator.
using Monomial = std::vector<int>;

// Evenly graded polynomial ring over the coefficients, optionally with one
// generator inverted.
struct RingSpec
{
    Coefficients coefficients;
    std::vector<Generator> generators;
    std::optional<std::size_t> inverted;
    DegreeWindow window;
    // Floor -N for the inverted exponent; derived from the window when unset.
    std::optional<int> negative_bound;

    std::size_t size() const { return generators.size(); }
    void validate() const;
    std::optional<std::size_t> index_of(const std::string& name) const;
    int degree(const Monomial& m) const;
    int min_exponent(std::size_t i) const;
    int inverted_floor() const;  // N, with exponents >= -N
    // Lowest internal degree any window computation touches.
    int lowest_degree() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

// All monomials of internal degree t, graded-lex (descending exponent vectors).
// Throws std::out_of_range when t lies outside the ring's window.
std::vector<Monomial> monomial_basis(const RingSpec& r, int t);
// Same enumeration without the window check.
std::vector<Monomial> enumerate_monomials(const RingSpec& r, int t);

Monomial operator*(const Monomial& a, const Monomial& b);

// Integer-coefficient polynomial; terms sorted by descending monomial, no zeros.
class Polynomial
{
public:
    using Term = std::pair<Monomial, Integer>;

    Polynomial() = default;
    static Polynomial constant(const Integer& c, std::size_t nvars);
    static Polynomial variable(std::size_t i, std::size_t nvars, int exponent = 1);
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Internal degree when homogeneous, nullopt otherwise (or when zero).
    std::optional<int> degree(const RingSpec& r) const;
    std::string to_string(const RingSpec& r) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Integer& c, const Polynomial& a);
    Polynomial pow(unsigned e) const;
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Term> terms_;
};

std::string monomial_to_string(const Monomial& m, const RingSpec& r);

// Coefficient of q^t in prod_i (1 - q^{|g_i|})^{-1}, counted independently of
// the monomial enumeration (used as a cross-check).
std::vector<std::size_t> hilbert_series_by_generating_function(const std::vector<int>& degrees, int t_max);

}  // namespace homalg
