#pragma once

#include "homalg/complex/bigraded.hpp"
#include "homalg/hopf/cotor.hpp"

#include <string>
#include <vector>

namespace homalg::cli {

struct ChartEntry
{
    Bidegree at;
    ZModule group;
    friend bool operator==(const ChartEntry&, const ChartEntry&) = default;
};

// Nonzero entries sorted by (s, t).
std::vector<ChartEntry> chart_entries(const RankTable& table);
std::vector<ChartEntry> chart_entries(const std::map<Bidegree, std::size_t>& ranks);

// Header "s,t,rank,torsion"; torsion invariants joined by ';'.
std::string write_csv(const std::vector<ChartEntry>& entries);
// Throws ParseError with the offending line and column.
std::vector<ChartEntry> read_csv(const std::string& text);

enum class Axes { Adams, Cartesian };  // (t - s, s) or (t, s)

Axes parse_axes(const std::string& s);

// SVG 1.1 document with one dot per nonzero entry, labelled by rank when the
// rank exceeds one and by torsion invariants when present.
std::string render_svg(const std::vector<ChartEntry>& entries, Axes axes, const std::string& title);

}  // namespace homalg::cli
