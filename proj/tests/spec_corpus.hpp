#pragma once

#include <array>
#include <string_view>

namespace testing_support {

// Valid spec files covering every section, key order, comments and
// polynomial syntax.
inline constexpr std::array<std::string_view, 10> spec_corpus{
    R"([ring]
coefficients = F2
generators = x1:2, x2:4, x3:6
[ideal]
sequence = x1, x2, x3
[window]
t_min = 0
t_max = 16
s_max = 3
stage_max = 4
)",
    R"(# keys out of order, comments everywhere
[window]
stage_max = 3   # tower stages
s_max = 2
t_max = 12
[ring]
generators = a:2 , b:2
coefficients = F_3
[ideal]
sequence = a + b, a - b   # a regular sequence when p is odd
)",
    R"([ring]
coefficients = Q
generators = x:2, y:4
[ideal]
sequence = x^2 + 2*y, (x + x)*x - 4*y + y
)",
    R"([ring]
coefficients = Z
generators =
[ideal]
sequence = 3
[window]
t_max = 0
s_max = 1
stage_max = 6
)",
    R"([ring]
coefficients = F5
generators = v1:8, w:2
invert = v1
[ideal]
sequence = w^4 - 3*v1
)",
    R"([example]
which = A
p = 2
j_max = 4
[window]
t_max = 20
s_max = 4
stage_max = 4
)",
    R"([example]
which = B
p = 3
n = 1
j_max = 6
)",
    R"([example]
j_max = 5
n = 2
which = C
p = 2
)",
    R"(

[ring]
coefficients = F2
generators = x1:2
[ideal]
sequence =
[window]
t_min = -4
t_max = 8
s_max = 0
stage_max = 0
)",
    R"([ring]
coefficients = F7
generators = x_1:2, x_2:2, big:12
[ideal]
sequence = x_1^6 - big, 12*x_1*x_2^5 + (x_2 - x_1)^6
[example]
which = A
p = 7
n = 3
j_max = 2
)",
};

}  // namespace testing_support
