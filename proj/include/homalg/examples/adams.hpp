#pragma once

#include "homalg/hopf/cotor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homalg {

enum class ExampleKind { A, B, C };

std::string to_string(ExampleKind k);
ExampleKind parse_example_kind(const std::string& s);

// A: MU -> HF_p. B: MU -> E(n). C: MU -> K(n). MU_* is truncated at x_{j_max}.
struct ExampleConfig
{
    ExampleKind which = ExampleKind::A;
    std::uint64_t p = 2;
    int n = 1;
    int j_max = 3;
    DegreeWindow window{0, 20, 4, 4};

    void validate() const;
};

// Polynomial ring on x_1..x_{j_max}, |x_j| = 2j.
RingSpec mu_ring(Coefficients c, int j_max, const DegreeWindow& w);

std::vector<int> kunneth_indices(const ExampleConfig& c);

struct ExampleSetup
{
    RingSpec mu;
    IdealSpec ideal;      // the regular sequence in MU_* (A only; empty otherwise)
    HopfSpec hopf;        // τ_j over the quotient base
    std::string base_name;
    std::vector<std::string> notes;
};

ExampleSetup example_setup(const ExampleConfig& c);

// Λ_{base}(τ_j) with τ_j at (1, 2j).
E2Presentation kunneth_presentation(const ExampleConfig& c);

// base[U_j], U_j at (1, 2j + 1), with the Adams collapse audit. Small
// non-localized configurations are cross-checked against the cobar complex.
E2Presentation adams_e2_table(const ExampleConfig& c, unsigned jobs = 1);

struct CompletionDegree
{
    int t = 0;
    std::vector<ZModule> stages;  // R/I^s in degree t, s = 1..stage_max
    std::optional<std::size_t> stabilized_at;
    std::optional<ZModule> stable_value;
    bool surjective = true;  // R/I^{s+1} -> R/I^s onto for every listed s
};

struct CompletionReport
{
    DegreeWindow window;
    std::map<int, CompletionDegree> degrees;
    // Set when every sequence element has positive degree: the degree-t
    // component is then constant for s > (t - lowest) / d_min.
    bool stabilization_certified = false;
    std::optional<int> min_degree;
    bool zero_below = true;  // degrees below the window vanish
    std::vector<std::string> warnings;

    bool surjective() const;
    std::string summary() const;
};

CompletionReport completion_tower(const RingSpec& r, const IdealSpec& ideal, const DegreeWindow& w);

// The report for a free module with generators in the given degrees.
CompletionReport module_completion(const std::vector<int>& shifts, const CompletionReport& base);

}  // namespace homalg
