#pragma once

#include "homalg/complex/bigraded.hpp"
#include "homalg/graded/ring.hpp"

#include <json.hpp>

namespace homalg {

struct Analysis
{
    DifferentialReport differential;
    RankTable homology;
};

// Expands a free complex with coefficients in R/J (J generated by
// `module_relations`) over the window's internal degrees, verifies d² = 0 and
// optionally computes homology. Proper quotients need field coefficients.
Analysis analyze(const FreeComplex& fc, const std::vector<Polynomial>& module_relations, const DegreeWindow& w,
                 unsigned jobs = 1, bool with_homology = true);

nlohmann::json to_json(const Bidegree& b);
nlohmann::json to_json(const DifferentialReport& rep);
nlohmann::json to_json(const ZModule& m);

}  // namespace homalg
