#pragma once

#include "homalg/linalg/sparse_matrix.hpp"

#include <string>
#include <vector>

namespace homalg {

// Invariant factors d_1 | d_2 | ... | d_r, all positive. Zero rows/columns
// contribute nothing, so r is the rank over the rationals.
std::vector<Integer> smith_normal_form(const SparseMatrix<Integer>& m);

// A finitely generated abelian group Z^free ⊕ ⊕ Z/torsion_i with
// torsion_i > 1 and torsion_i | torsion_{i+1}.
struct ZModule
{
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;  // e.g. "Z^2 + Z/3 + Z/9", "0"
    std::string torsion_string() const;  // "3;9", empty when torsion-free
    friend bool operator==(const ZModule&, const ZModule&) = default;
};

// Z^ambient modulo the span of the given rows.
ZModule quotient_module(std::size_t ambient, const std::vector<SparseVector<Integer>>& relations);

// Direct sum with invariants re-normalised into divisor-chain form.
ZModule direct_sum(const ZModule& a, const ZModule& b);

// Row Hermite form of a lattice: positive pivots, strictly increasing pivot
// columns, entries above each pivot reduced into [0, pivot).
class Lattice
{
public:
    Lattice() = default;
    Lattice(std::size_t ambient, std::vector<SparseVector<Integer>> generators);

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<SparseVector<Integer>>& basis() const { return basis_; }
    bool contains(const SparseVector<Integer>& v) const;

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVector<Integer>> basis_;
};

// Z-basis of {x in Z^cols : m x = 0}.
std::vector<SparseVector<Integer>> integer_kernel(const SparseMatrix<Integer>& m);

}  // namespace homalg
