#pragma once

#include "homalg/graded/ring.hpp"

#include <compare>
#include <string>
#include <vector>

namespace homalg {

struct Bidegree
{
    int s = 0;
    int t = 0;
    auto operator<=>(const Bidegree&) const = default;
};

enum class Direction { Homological, Cohomological };

// Name of a free generator: an exterior word e_{i_1}...e_{i_r}, a symmetric
// multi-index ũ_{(j_1,...,j_s)}, and a free-form part (cobar words, tensor
// factors). Indices are 1-based as printed.
struct BasisLabel
{
    std::vector<int> exterior;
    std::vector<int> utilde;
    std::string word;

    std::string to_string() const;
    static BasisLabel text(std::string w) { return {{}, {}, std::move(w)}; }
    auto operator<=>(const BasisLabel&) const = default;
};

struct FreeGenerator
{
    BasisLabel label;
    int s = 0;  // homological (or cohomological) degree
    int t = 0;  // internal degree
};

struct Term
{
    std::size_t target;
    Polynomial coefficient;
};

// A bigraded R-linear map between free modules; images[i] is the image of
// source generator i as a combination of target generators.
struct FreeMap
{
    int degree = -1;  // change in s
    std::vector<std::vector<Term>> images;
};

// Complex of free graded R-modules. The differential has degree -1
// (homological) or +1 (cohomological) in s and preserves internal degree.
struct FreeComplex
{
    RingSpec ring;
    Direction direction = Direction::Homological;
    std::vector<FreeGenerator> generators;
    std::vector<std::vector<Term>> differential;
    int s_lo = 0;
    int s_hi = 0;
    // True when generators beyond s_hi exist but were not built.
    bool truncated_top = false;
    std::string convention;  // human-readable sign convention note

    int differential_degree() const { return direction == Direction::Homological ? -1 : 1; }
    std::vector<std::size_t> in_degree(int s) const;
    std::size_t add_generator(FreeGenerator g);
    void add_term(std::size_t source, std::size_t target, Polynomial coefficient);
};

// Rank-one complex R concentrated at (0,0).
FreeComplex unit_complex(const RingSpec& r);

// Tensor product over R: d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy, |x| the s-degree of x.
FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b);

// C[k]_n = C_{n+k}, d_{C[k]} = (-1)^k d_C.
FreeComplex shift(const FreeComplex& c, int k);

// d∘d computed symbolically over the coefficient ring; returns the generators
// whose image under d² is nonzero, with that image.
struct SymbolicViolation
{
    std::size_t generator;
    std::vector<Term> image;
};
std::vector<SymbolicViolation> symbolic_d_squared(const FreeComplex& c);

}  // namespace homalg
