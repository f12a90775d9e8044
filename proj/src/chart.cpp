#include "homalg/cli/chart.hpp"
#include "homalg/cli/spec_file.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>

namespace homalg::cli {

std::vector<ChartEntry> chart_entries(const RankTable& table)
{
    std::vector<ChartEntry> out;
    for (const auto& [b, e] : table)
        if (!e.group.is_zero())
            out.push_back({b, e.group});
    return out;
}

std::vector<ChartEntry> chart_entries(const std::map<Bidegree, std::size_t>& ranks)
{
    std::vector<ChartEntry> out;
    for (const auto& [b, r] : ranks)
        if (r > 0)
            out.push_back({b, ZModule{r, {}}});
    return out;
}

std::string write_csv(const std::vector<ChartEntry>& entries)
{
    auto sorted = entries;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    std::string out = "s,t,rank,torsion\n";
    for (const auto& e : sorted) {
        if (e.group.is_zero())
            continue;
        out += fmt::format("{},{},{},{}\n", e.at.s, e.at.t, e.group.free_rank, e.group.torsion_string());
    }
    return out;
}

namespace {

template <class T>
T field_value(const std::string& text, int line, int column, const char* what)
{
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(line, column, fmt::format("{}: expected an integer, got '{}'", what, text));
    return v;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::vector<ChartEntry> read_csv(const std::string& text)
{
    std::vector<ChartEntry> out;
    int line_no = 0;
    std::size_t start = 0;
    bool header_seen = false;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header_seen) {
            if (line != "s,t,rank,torsion" && line != "s,t,rank")
                throw ParseError(line_no, 1, "expected header 's,t,rank,torsion'");
            header_seen = true;
            continue;
        }
        std::vector<std::pair<std::string, int>> fields;
        std::size_t from = 0;
        for (;;) {
            const std::size_t comma = line.find(',', from);
            fields.emplace_back(line.substr(from, comma - from), static_cast<int>(from) + 1);
            if (comma == std::string::npos)
                break;
            from = comma + 1;
        }
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError(line_no, 1, fmt::format("expected 3 or 4 fields, got {}", fields.size()));
        ChartEntry e;
        e.at.s = field_value<int>(fields[0].first, line_no, fields[0].second, "s");
        e.at.t = field_value<int>(fields[1].first, line_no, fields[1].second, "t");
        e.group.free_rank = field_value<std::size_t>(fields[2].first, line_no, fields[2].second, "rank");
        if (fields.size() == 4 && !fields[3].first.empty()) {
            const auto& [tor, col] = fields[3];
            std::size_t p = 0;
            for (;;) {
                const std::size_t semi = tor.find(';', p);
                const std::string item = tor.substr(p, semi - p);
                if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError(line_no, col + static_cast<int>(p), fmt::format("bad torsion invariant '{}'", item));
                e.group.torsion.emplace_back(item);
                if (semi == std::string::npos)
                    break;
                p = semi + 1;
            }
        }
        if (!out.empty() && !(out.back().at < e.at))
            throw ParseError(line_no, 1, "rows must be sorted by (s, t) without repeats");
        out.push_back(std::move(e));
    }
    return out;
}

Axes parse_axes(const std::string& s)
{
    if (s == "adams")
        return Axes::Adams;
    if (s == "cartesian")
        return Axes::Cartesian;
    throw std::invalid_argument("axes must be 'adams' or 'cartesian', got '" + s + "'");
}

std::string render_svg(const std::vector<ChartEntry>& entries, Axes axes, const std::string& title)
{
    constexpr int cell = 40;
    constexpr int margin = 50;
    constexpr int top = 40;

    auto x_of = [axes](const Bidegree& b) { return axes == Axes::Adams ? b.t - b.s : b.t; };
    int x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    for (const auto& e : entries) {
        x_lo = std::min(x_lo, x_of(e.at));
        x_hi = std::max(x_hi, x_of(e.at));
        y_lo = std::min(y_lo, e.at.s);
        y_hi = std::max(y_hi, e.at.s);
    }
    const int width = 2 * margin + (x_hi - x_lo) * cell;
    const int height = top + margin + (y_hi - y_lo) * cell;
    auto px = [&](int x) { return margin + (x - x_lo) * cell; };
    auto py = [&](int y) { return top + (y_hi - y) * cell; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"0 0 {} {}\">\n",
                       width, height, width, height);
    out += fmt::format("<title>{}</title>\n", escape_xml(title));
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    out += fmt::format("<text x=\"{}\" y=\"20\" font-family=\"monospace\" font-size=\"14\">{}</text>\n", margin,
                       escape_xml(title));

    out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int x = x_lo; x <= x_hi; ++x)
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", px(x), py(y_hi), py(y_lo));
    for (int y = y_lo; y <= y_hi; ++y)
        out += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"/>\n", py(y), px(x_lo), px(x_hi));
    out += "</g>\n";

    out += "<g font-family=\"monospace\" font-size=\"10\" fill=\"#555555\">\n";
    for (int x = x_lo; x <= x_hi; ++x)
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(x), py(y_lo) + 15, x);
    for (int y = y_lo; y <= y_hi; ++y)
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", px(x_lo) - 8, py(y) + 4, y);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", width / 2, height - 8,
                       axes == Axes::Adams ? "t - s" : "t");
    out += fmt::format("<text x=\"12\" y=\"{}\" text-anchor=\"middle\">s</text>\n", top + (height - top - margin) / 2);
    out += "</g>\n";

    out += "<g fill=\"black\" font-family=\"monospace\" font-size=\"10\">\n";
    for (const auto& e : entries) {
        if (e.group.is_zero())
            continue;
        const int cx = px(x_of(e.at));
        const int cy = py(e.at.s);
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"4\"><title>(s={}, t={}): {}</title></circle>\n", cx, cy,
                           e.at.s, e.at.t, e.group.to_string());
        std::string label;
        if (e.group.free_rank > 1)
            label = std::to_string(e.group.free_rank);
        for (const auto& q : e.group.torsion)
            label += (label.empty() ? "Z/" : "+Z/") + q.str();
        if (!label.empty())
            out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", cx + 6, cy - 6, escape_xml(label));
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace homalg::cli
