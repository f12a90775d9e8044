#pragma once

#include "homalg/examples/adams.hpp"
#include "homalg/graded/ideal.hpp"
#include "homalg/graded/ring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homalg::cli {

// Plain-text configuration:
//
//   [ring]
//   coefficients = F2            # F<p>, F_<p>, Q or Z
//   generators = x1:2, x2:4      # name:degree, degrees even and positive
//   invert = x2                  # optional
//
//   [ideal]
//   sequence = x1, x2^2 + x1*x2  # homogeneous polynomials in the generators
//
//   [window]
//   t_min = 0
//   t_max = 20
//   s_max = 4
//   stage_max = 4
//
//   [example]
//   which = A                    # A, B or C
//   p = 2
//   n = 1
//   j_max = 3
//
// Keys within a section may come in any order; a missing key takes the value
// shown for [window] and [example]. [ideal] requires [ring].

struct RingSection
{
    Coefficients coefficients;
    std::vector<Generator> generators;
    std::optional<std::string> invert;
    friend bool operator==(const RingSection&, const RingSection&) = default;
};

struct ExampleSection
{
    ExampleKind which = ExampleKind::A;
    std::uint64_t p = 2;
    int n = 1;
    int j_max = 3;
    friend bool operator==(const ExampleSection&, const ExampleSection&) = default;
};

inline constexpr DegreeWindow default_window{0, 20, 4, 4};

struct SpecFile
{
    std::optional<RingSection> ring;
    std::optional<IdealSpec> ideal;
    std::optional<DegreeWindow> window;
    std::optional<ExampleSection> example;
    friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

class ParseError : public std::runtime_error
{
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

SpecFile parse_spec(const std::string& text);
std::string print_spec(const SpecFile& spec);

// Polynomial expression over the ring's generators. Columns in errors are
// offset by `column`.
Polynomial parse_polynomial(const std::string& text, const RingSection& ring, int line = 1, int column = 1);

// The ring with the given window; throws std::invalid_argument without [ring].
RingSpec ring_spec(const SpecFile& spec, const DegreeWindow& w);
IdealSpec ideal_spec(const SpecFile& spec);
ExampleConfig example_config(const ExampleSection& e, const DegreeWindow& w);

}  // namespace homalg::cli
