#pragma once

#include "homalg/graded/ring.hpp"
#include "homalg/linalg/integer.hpp"

#include <string>
#include <vector>

namespace homalg {

// Ordered sequence u_1, u_2, ... of homogeneous even-degree elements.
struct IdealSpec
{
    std::vector<Polynomial> sequence;
    // Set when the sequence is the leading part of an infinite one.
    bool truncated = false;

    std::size_t size() const { return sequence.size(); }
    void validate(const RingSpec& r) const;
    std::vector<int> degrees(const RingSpec& r) const;
    friend bool operator==(const IdealSpec&, const IdealSpec&) = default;
};

// Weakly increasing index vectors of length s with entries in [0, g).
std::vector<std::vector<std::size_t>> multi_indices(std::size_t g, std::size_t s);

// u_{(i_1,...,i_s)} = u_{i_1} ... u_{i_s}.
Polynomial sequence_monomial(const RingSpec& r, const IdealSpec& ideal, const std::vector<std::size_t>& idx);

// The generators u_{(i_1,...,i_s)} of I^s; for s = 0 the unit.
std::vector<Polynomial> power_generators(const RingSpec& r, const IdealSpec& ideal, std::size_t s);

struct RegularityFailure
{
    std::size_t index = 0;  // 1-based position in the sequence
    int t = 0;              // source degree where injectivity fails
    std::string detail;
};

struct RegularityReport
{
    std::vector<RegularityFailure> failures;
    // Per sequence index: the source degrees [from, to] that were checked.
    std::vector<std::pair<int, int>> checked;
    DegreeWindow window;

    bool regular() const { return failures.empty(); }
    std::string summary() const;
};

// Multiplication by u_k injective on R/(u_1..u_{k-1}) for every degree t with
// t + |u_k| <= t_max. Over the integers injectivity is decided on lattices.
RegularityReport check_regular_sequence(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w);

// (R/J)_t for J generated by `relations`; dimension over a field, invariants
// over the integers.
ZModule quotient_in_degree(const RingSpec& r, const std::vector<Polynomial>& relations, int t);

struct PowerQuotientReport
{
    std::size_t s = 0;
    int t = 0;
    ZModule quotient;       // (R/I^s)_t
    ZModule next;           // (R/I^{s+1})_t
    ZModule graded_piece;   // sum over |J| = s of (R/I)_{t - |u_J|}
    std::size_t monomial_classes = 0;  // number of distinct degree-s monomials u_J
    bool consistent = true; // short exact sequence is dimension-exact
};

PowerQuotientReport power_quotient_dimension(const RingSpec& r, const IdealSpec& ideal, std::size_t s, int t);

}  // namespace homalg
