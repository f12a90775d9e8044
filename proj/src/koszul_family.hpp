#pragma once

#include "homalg/complex/free_complex.hpp"
#include "homalg/graded/ideal.hpp"

#include <map>
#include <vector>

namespace homalg::detail {

// Which sequence entries receive an exterior generator, and how many exterior
// degrees are built.
struct Selection
{
    std::vector<std::size_t> included;
    std::vector<std::size_t> cut;
    std::size_t cap = 0;
    bool truncated = false;
};

Selection select_generators(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w);

// Generators e_I ũ_J with k_lo <= |J| <= k_hi and |I| <= cap, differential
// d_Q plus (optionally) the connecting maps ∂ between consecutive stages.
struct Family
{
    FreeComplex complex;
    std::map<BasisLabel, std::size_t> index;
    std::vector<std::size_t> stage;
};

Family build_family(const RingSpec& r, const IdealSpec& ideal, const Selection& sel, std::size_t k_lo,
                    std::size_t k_hi, bool with_boundary);

// ∂ from the generators of `src` to those of `tgt`.
FreeMap boundary_between(const Family& src, const Family& tgt);

std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& items, std::size_t n);

}  // namespace homalg::detail
