#pragma once

#include "homalg/complex/analysis.hpp"
#include "homalg/graded/ideal.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homalg {

// A primitive exterior generator τ_label of odd internal degree.
struct Primitive
{
    std::string label;  // printed as tau_<label>, dual generator U_<label>
    int degree = 1;
};

// Λ_{E_*}(τ_i) with every τ_i primitive, over E_* = ring / base_relations.
struct HopfSpec
{
    RingSpec ring;
    std::vector<Polynomial> base_relations;
    std::vector<Primitive> primitives;

    void validate() const;
};

// τ_i of degree |u_i| + 1 over E_* = R/I, labelled first_label, first_label + 1, ...
HopfSpec hopf_from_quotient(const RingSpec& r, const IdealSpec& ideal, int first_label = 1);

// Reduced cobar complex: cochains in filtration s are words [γ_1|...|γ_s] of
// nonempty exterior monomials in the τ's, with
// d[γ_1|...|γ_s] = Σ_i (-1)^i [γ_1|...|Δ̄γ_i|...|γ_s]. Built for s <= s_max + 1.
FreeComplex cobar_complex(const HopfSpec& h, const DegreeWindow& w);

enum class PresentationKind { Polynomial, Exterior };

struct PresentationGenerator
{
    std::string name;
    Bidegree bidegree;
};

enum class DifferentialPattern { Adams, Kunneth };
enum class AuditScope { AllEntries, Generators };

struct CollapseCandidate
{
    int r = 2;
    Bidegree source;
    Bidegree target;
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
};

struct CollapseVerdict
{
    DifferentialPattern pattern = DifferentialPattern::Adams;
    AuditScope scope = AuditScope::AllEntries;
    std::vector<CollapseCandidate> candidates;
    std::size_t sources_checked = 0;
    std::size_t targets_outside_window = 0;
    bool parity_holds = true;

    bool collapses() const { return candidates.empty(); }
    std::string text() const;
};

// Free graded-commutative algebra over E_* on bigraded generators, tabulated
// over a window.
struct E2Presentation
{
    PresentationKind kind = PresentationKind::Polynomial;
    std::string base_name;
    std::map<int, std::size_t> base_dims;  // E_* per internal degree
    std::vector<PresentationGenerator> generators;
    DegreeWindow window;
    std::map<Bidegree, std::size_t> ranks;  // nonzero entries only
    std::string pipeline = "closed form";
    std::string dual_presentation;
    std::vector<std::string> notes;
    std::optional<CollapseVerdict> collapse;

    std::size_t rank(Bidegree b) const
    {
        auto it = ranks.find(b);
        return it == ranks.end() ? 0 : it->second;
    }
};

// Fills `ranks` from base_dims and generators for the window.
void tabulate(E2Presentation& p);

// E_*[U_i] with U_i at (1, |τ_i|).
E2Presentation e2_closed_form(const HopfSpec& h, const DegreeWindow& w);

std::map<int, std::size_t> base_dimensions(const HopfSpec& h, int lo, int hi);

struct CotorReport
{
    RankTable computed;
    std::map<Bidegree, std::size_t> closed_form;
    std::vector<Bidegree> mismatches;
    DifferentialReport differential;

    bool ok() const { return mismatches.empty() && differential.ok(); }
    std::string summary() const;
    nlohmann::json witness() const;
};

CotorReport cotor_ranks(const HopfSpec& h, const DegreeWindow& w, unsigned jobs = 1);

// Every nonzero entry satisfies t ≡ s (mod 2).
bool parity_holds(const E2Presentation& p);

// Adams: d_r: (s,t) -> (s+r, t+r-1). Kunneth: d_r: (s,t) -> (s-r, t+r-1).
// The default scope is all entries for Adams and the generators for Kunneth.
CollapseVerdict collapse_audit(const E2Presentation& p, DifferentialPattern pattern,
                               std::optional<AuditScope> scope = std::nullopt);

}  // namespace homalg
