#pragma once

#include "homalg/complex/analysis.hpp"
#include "homalg/graded/ideal.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace homalg {

// Koszul complex Λ_R(e_i) with e_i at (1, |u_i|) and d e_i = u_i. Only the
// e_i with |u_i| <= t_max - t_min are built; the rest are listed in `cut`.
// Exterior degrees above s_max + 1 are not built (truncated_top).
struct KoszulComplex
{
    FreeComplex complex;
    std::vector<std::size_t> included;  // 0-based sequence positions
    std::vector<std::size_t> cut;
    RegularityReport regularity;

    std::string cut_report() const;
};

// Throws MathFailure naming the first non-regular index.
KoszulComplex build_koszul(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w);

// Q^(s) = K ⊗ U^(s) on generators e_I ũ_J (|J| = s) with differential d ⊗ 1,
// together with the boundary ∂^(s+1): Q^(s) -> Q^(s+1),
// ∂(e_{i_1}...e_{i_r} ũ_J) = Σ_k (-1)^k e_{i_1}..ê_{i_k}..e_{i_r} ũ_{J + i_k}.
struct QComplex
{
    std::size_t stage = 0;
    FreeComplex complex;
    FreeComplex next;   // Q^(s+1), the target of ∂^(s+1)
    FreeMap boundary;   // images of complex.generators in next.generators
};

QComplex build_q_complex(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w);

// K^(s-1) = Q^(0) + ... + Q^(s-1) with D = d_Q + ∂, resolving R/I^s.
struct TowerResolution
{
    std::size_t stage = 0;  // resolves R/I^stage
    FreeComplex complex;
    std::vector<std::size_t> stage_of_generator;
    std::vector<std::size_t> included;
    std::vector<std::size_t> cut;
};

// Aborts with MathFailure when D² ≠ 0 over the coefficients.
TowerResolution build_tower_resolution(std::size_t s, const RingSpec& r, const IdealSpec& ideal,
                                       const DegreeWindow& w);

// Image ε(ũ_J) = u_J of an s-degree-0 generator.
Polynomial augmentation_image(const TowerResolution& tower, const IdealSpec& ideal, std::size_t generator);

struct TowerCheck
{
    std::size_t stage = 0;
    DifferentialReport differential;
    RankTable homology;
    std::vector<std::string> mismatches;
    std::size_t degrees_checked = 0;
    bool augmentation_rank_checked = false;  // false over the integers

    bool ok() const { return differential.ok() && mismatches.empty(); }
    std::string summary() const;
    nlohmann::json witness() const;
};

// d² = 0, H_0 = R/I^s and H_{>0} = 0 degreewise, ε∘d = 0 and ker ε = im d.
TowerCheck verify_tower_resolution(const TowerResolution& tower, const RingSpec& r, const IdealSpec& ideal,
                                   const DegreeWindow& w, unsigned jobs = 1);

struct TorComparison
{
    RankTable computed;
    std::map<Bidegree, std::size_t> closed_form;
    std::vector<Bidegree> mismatches;
    std::vector<std::size_t> cut;

    bool ok() const { return mismatches.empty(); }
    std::string summary() const;
    nlohmann::json witness() const;
};

// Homology of K ⊗ R/I against Σ_{|I|=n} dim(R/I)_{t - |u_I|}.
TorComparison tor_diagonal(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w, unsigned jobs = 1);

struct ExactnessReport
{
    std::size_t s = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::vector<Bidegree> witnesses;

    bool ok() const { return failures.empty(); }
    std::string summary() const;
    nlohmann::json witness() const;
};

// The sequence T_0 -> T_1 -> ... -> T_{s-1}, T_k = Tor(R/I, I^k/I^{k+1})
// computed as K ⊗ (R/I on ũ_J, |J| = k), with maps induced by ∂.
ExactnessReport verify_partial_exactness(std::size_t s, const RingSpec& r, const IdealSpec& ideal,
                                         const DegreeWindow& w, unsigned jobs = 1);

struct TorPowerReport
{
    std::size_t s = 0;
    RankTable brute_force;                          // K ⊗ R/I^s
    std::map<Bidegree, std::size_t> closed_form;    // R/I + coker ∂^(s-1)_*
    std::vector<Bidegree> mismatches;
    bool freeness_checked = false;
    std::map<Bidegree, long long> free_multiplicities;  // shifted copies of R/I
    std::vector<Bidegree> freeness_failures;
    std::size_t products_checked = 0;
    std::vector<std::string> nonzero_products;

    bool ok() const { return mismatches.empty() && freeness_failures.empty() && nonzero_products.empty(); }
    std::string summary() const;
    nlohmann::json witness() const;
};

TorPowerReport tor_against_power(std::size_t s, const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w,
                                 unsigned jobs = 1);

}  // namespace homalg
