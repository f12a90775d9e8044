#pragma once

#include "homalg/graded/ideal.hpp"
#include "homalg/graded/ring.hpp"

#include <string>
#include <vector>

namespace testing_support {

using namespace homalg;

inline DegreeWindow window(int t_max, int s_max, int stage_max = 4, int t_min = 0)
{
    return {t_min, t_max, s_max, stage_max};
}

// Polynomial ring on x1..xn with the given degrees.
inline RingSpec poly_ring(Coefficients c, const std::vector<int>& degrees, DegreeWindow w)
{
    RingSpec r;
    r.coefficients = c;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        r.generators.push_back({"x" + std::to_string(i + 1), degrees[i]});
    r.window = w;
    return r;
}

inline Polynomial var(const RingSpec& r, std::size_t i, int e = 1)
{
    return Polynomial::variable(i, r.size(), e);
}

inline Polynomial constant(const RingSpec& r, long c)
{
    return Polynomial::constant(Integer(c), r.size());
}

// The ideal (x1, ..., xn).
inline IdealSpec all_variables(const RingSpec& r)
{
    IdealSpec i;
    for (std::size_t k = 0; k < r.size(); ++k)
        i.sequence.push_back(var(r, k));
    return i;
}

inline const Coefficients F2 = Coefficients::prime_field(2);
inline const Coefficients F3 = Coefficients::prime_field(3);

}  // namespace testing_support
