#include "homalg/complex/analysis.hpp"

namespace homalg {

Analysis analyze(const FreeComplex& fc, const std::vector<Polynomial>& module_relations, const DegreeWindow& w,
                 unsigned jobs, bool with_homology)
{
    return dispatch(fc.ring.coefficients, [&](auto dom) {
        using S = std::decay_t<decltype(dom.zero())>;
        GradedQuotient<S> module(fc.ring, module_relations, dom, fc.ring.lowest_degree(), w.t_max);
        auto c = expand(fc, module, w.t_min, w.t_max);
        Analysis a;
        a.differential = verify_differential(c);
        if (with_homology)
            a.homology = homology_ranks(c, jobs);
        return a;
    });
}

nlohmann::json to_json(const Bidegree& b)
{
    return {{"s", b.s}, {"t", b.t}};
}

nlohmann::json to_json(const ZModule& m)
{
    return {{"rank", m.free_rank}, {"torsion", m.torsion_string()}};
}

nlohmann::json to_json(const DifferentialReport& rep)
{
    nlohmann::json out;
    out["checked_pairs"] = rep.checked_pairs;
    out["shape_errors"] = rep.shape_errors;
    out["violations"] = nlohmann::json::array();
    for (const auto& v : rep.violations)
        out["violations"].push_back(
            {{"bidegree", to_json(v.at)}, {"source", v.source}, {"target", v.target}, {"coefficient", v.value}});
    return out;
}

}  // namespace homalg
