#include "homalg/cli/spec_file.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace homalg::cli {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, message)),
      line_(line), column_(column), message_(message)
{
}

namespace {

// Column (1-based, in code points) of byte offset `pos` within `line`.
int column_of(const std::string& line, std::size_t pos)
{
    int col = 1;
    for (std::size_t i = 0; i < pos && i < line.size(); ++i)
        if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80)
            ++col;
    return col;
}

// Byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t invalid_utf8(const std::string& s)
{
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size())
            return i;
        for (std::size_t k = 1; k < len; ++k)
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80)
                return i;
        i += len;
    }
    return std::string::npos;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::pair<std::size_t, std::size_t> trimmed(const std::string& s, std::size_t from, std::size_t to)
{
    while (from < to && is_space(s[from]))
        ++from;
    while (to > from && is_space(s[to - 1]))
        --to;
    return {from, to};
}

bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

struct Value
{
    std::string text;
    int line = 0;
    int column = 0;
    std::string raw_line;  // the full source line, for column arithmetic
    std::size_t offset = 0; // byte offset of text within raw_line
};

struct Section
{
    int line = 0;
    std::map<std::string, Value> keys;
};

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> k{
        {"ring", {"coefficients", "generators", "invert"}},
        {"ideal", {"sequence"}},
        {"window", {"t_min", "t_max", "s_max", "stage_max"}},
        {"example", {"which", "p", "n", "j_max"}},
    };
    return k;
}

template <class T>
T parse_integer(const Value& v)
{
    T out{};
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (v.text.empty() || ec != std::errc() || ptr != v.text.data() + v.text.size())
        throw ParseError(v.line, v.column, fmt::format("expected an integer, got '{}'", v.text));
    return out;
}

// Comma-separated items of a value, skipping commas inside parentheses.
std::vector<std::pair<std::string, int>> split_items(const Value& v)
{
    std::vector<std::pair<std::string, int>> out;
    if (v.text.empty())
        return out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= v.text.size(); ++i) {
        if (i < v.text.size()) {
            if (v.text[i] == '(')
                ++depth;
            else if (v.text[i] == ')')
                --depth;
            if (v.text[i] != ',' || depth > 0)
                continue;
        }
        auto [a, b] = trimmed(v.text, start, i);
        const int col = column_of(v.raw_line, v.offset + a);
        if (a == b)
            throw ParseError(v.line, col, "empty list item");
        out.emplace_back(v.text.substr(a, b - a), col);
        start = i + 1;
    }
    return out;
}

class PolynomialParser
{
public:
    PolynomialParser(const std::string& text, const RingSection& ring, int line, int column)
        : s_(text), ring_(ring), line_(line), column_(column)
    {
    }

    Polynomial parse()
    {
        Polynomial p = expression();
        skip();
        if (pos_ < s_.size())
            fail(fmt::format("unexpected '{}'", s_[pos_]));
        return p;
    }

private:
    const std::string& s_;
    const RingSection& ring_;
    int line_;
    int column_;
    std::size_t pos_ = 0;

    std::size_t nvars() const { return ring_.generators.size(); }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(line_, column_ - 1 + column_of(s_, pos_), msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && is_space(s_[pos_]))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression()
    {
        Polynomial acc;
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        acc = term();
        if (negate)
            acc = Integer(-1) * acc;
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        while (accept('*'))
            acc = acc * factor();
        return acc;
    }

    Polynomial factor()
    {
        Polynomial base = primary();
        if (!accept('^'))
            return base;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) {
            fail("expected a non-negative integer exponent");
        }
        if (pos_ - start > 4) {
            pos_ = start;
            fail("exponent too large");
        }
        return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }

    Polynomial primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("expected a generator name, an integer or '('");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Polynomial::constant(Integer(s_.substr(start, pos_ - start)), nvars());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < nvars(); ++i)
                if (ring_.generators[i].name == name)
                    return Polynomial::variable(i, nvars());
            pos_ = start;
            fail(fmt::format("unknown generator '{}'", name));
        }
        fail(fmt::format("unexpected '{}'", c));
    }
};

RingSpec bare_ring(const RingSection& r)
{
    RingSpec spec;
    spec.coefficients = r.coefficients;
    spec.generators = r.generators;
    return spec;
}

RingSection parse_ring(const Section& sec)
{
    RingSection r;
    auto coeff = sec.keys.find("coefficients");
    if (coeff == sec.keys.end())
        throw ParseError(sec.line, 1, "[ring] requires 'coefficients'");
    try {
        r.coefficients = Coefficients::parse(coeff->second.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(coeff->second.line, coeff->second.column, e.what());
    }
    if (auto g = sec.keys.find("generators"); g != sec.keys.end()) {
        std::set<std::string> names;
        for (const auto& [item, col] : split_items(g->second)) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ParseError(g->second.line, col, fmt::format("expected name:degree, got '{}'", item));
            auto [na, nb] = trimmed(item, 0, colon);
            auto [da, db] = trimmed(item, colon + 1, item.size());
            const std::string name = item.substr(na, nb - na);
            Value deg{item.substr(da, db - da), g->second.line, col - 1 + column_of(item, da), {}, 0};
            if (!is_identifier(name))
                throw ParseError(g->second.line, col, fmt::format("invalid generator name '{}'", name));
            if (!names.insert(name).second)
                throw ParseError(g->second.line, col, fmt::format("duplicate generator '{}'", name));
            const int d = parse_integer<int>(deg);
            if (d % 2 != 0)
                throw ParseError(deg.line, deg.column, fmt::format("generator {} has degree {}: even degree required", name, d));
            if (d <= 0)
                throw ParseError(deg.line, deg.column, fmt::format("generator {} has degree {}: positive degree required", name, d));
            r.generators.push_back({name, d});
        }
    }
    if (auto inv = sec.keys.find("invert"); inv != sec.keys.end()) {
        if (!bare_ring(r).index_of(inv->second.text))
            throw ParseError(inv->second.line, inv->second.column,
                             fmt::format("invert: unknown generator '{}'", inv->second.text));
        r.invert = inv->second.text;
    }
    return r;
}

IdealSpec parse_ideal(const Section& sec, const RingSection& ring)
{
    IdealSpec ideal;
    auto seq = sec.keys.find("sequence");
    if (seq == sec.keys.end())
        return ideal;
    const RingSpec r = bare_ring(ring);
    for (const auto& [item, col] : split_items(seq->second)) {
        Polynomial p = parse_polynomial(item, ring, seq->second.line, col);
        if (p.is_zero())
            throw ParseError(seq->second.line, col, fmt::format("'{}' is zero", item));
        std::set<int> degrees;
        for (const auto& [m, c] : p.terms())
            degrees.insert(r.degree(m));
        if (degrees.size() > 1)
            throw ParseError(seq->second.line, col,
                             fmt::format("'{}' is not homogeneous (term degrees {})", item, fmt::join(degrees, ", ")));
        ideal.sequence.push_back(std::move(p));
    }
    return ideal;
}

DegreeWindow parse_window(const Section& sec)
{
    DegreeWindow w = default_window;
    const std::pair<const char*, int*> fields[] = {
        {"t_min", &w.t_min}, {"t_max", &w.t_max}, {"s_max", &w.s_max}, {"stage_max", &w.stage_max}};
    for (auto [key, slot] : fields)
        if (auto it = sec.keys.find(key); it != sec.keys.end())
            *slot = parse_integer<int>(it->second);
    try {
        w.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(sec.line, 1, e.what());
    }
    return w;
}

ExampleSection parse_example(const Section& sec)
{
    ExampleSection e;
    if (auto it = sec.keys.find("which"); it != sec.keys.end()) {
        try {
            e.which = parse_example_kind(it->second.text);
        } catch (const std::invalid_argument& err) {
            throw ParseError(it->second.line, it->second.column, err.what());
        }
    }
    if (auto it = sec.keys.find("p"); it != sec.keys.end()) {
        e.p = parse_integer<std::uint64_t>(it->second);
        if (!is_prime(e.p))
            throw ParseError(it->second.line, it->second.column, fmt::format("p = {} is not prime", e.p));
    }
    if (auto it = sec.keys.find("n"); it != sec.keys.end())
        e.n = parse_integer<int>(it->second);
    if (auto it = sec.keys.find("j_max"); it != sec.keys.end())
        e.j_max = parse_integer<int>(it->second);
    try {
        example_config(e, default_window);
    } catch (const std::invalid_argument& err) {
        throw ParseError(sec.line, 1, err.what());
    }
    return e;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingSection& ring, int line, int column)
{
    return PolynomialParser(text, ring, line, column).parse();
}

SpecFile parse_spec(const std::string& text)
{
    std::map<std::string, Section> sections;
    std::string current;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        const std::string line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto bad = invalid_utf8(line); bad != std::string::npos)
            throw ParseError(line_no, column_of(line, bad), "invalid UTF-8");
        std::size_t stop = line.find('#');
        if (stop == std::string::npos)
            stop = line.size();
        auto [a, b] = trimmed(line, 0, stop);
        if (a == b)
            continue;
        if (line[a] == '[') {
            if (line[b - 1] != ']')
                throw ParseError(line_no, column_of(line, b - 1), "expected ']'");
            auto [na, nb] = trimmed(line, a + 1, b - 1);
            const std::string name = line.substr(na, nb - na);
            if (!known_keys().contains(name))
                throw ParseError(line_no, column_of(line, na), fmt::format("unknown section [{}]", name));
            if (sections.contains(name))
                throw ParseError(line_no, column_of(line, na), fmt::format("duplicate section [{}]", name));
            sections[name].line = line_no;
            current = name;
            continue;
        }
        const std::size_t eq = line.find('=', a);
        if (eq == std::string::npos || eq >= b)
            throw ParseError(line_no, column_of(line, a), "expected 'key = value' or '[section]'");
        auto [ka, kb] = trimmed(line, a, eq);
        auto [va, vb] = trimmed(line, eq + 1, b);
        const std::string key = line.substr(ka, kb - ka);
        if (current.empty())
            throw ParseError(line_no, column_of(line, ka), fmt::format("key '{}' outside of a section", key));
        if (!known_keys().at(current).contains(key))
            throw ParseError(line_no, column_of(line, ka), fmt::format("unknown key '{}' in [{}]", key, current));
        auto& keys = sections[current].keys;
        if (keys.contains(key))
            throw ParseError(line_no, column_of(line, ka), fmt::format("duplicate key '{}'", key));
        keys[key] = Value{line.substr(va, vb - va), line_no, column_of(line, va), line, va};
    }

    SpecFile spec;
    if (auto it = sections.find("ring"); it != sections.end())
        spec.ring = parse_ring(it->second);
    if (auto it = sections.find("ideal"); it != sections.end()) {
        if (!spec.ring)
            throw ParseError(it->second.line, 1, "[ideal] requires a [ring] section");
        spec.ideal = parse_ideal(it->second, *spec.ring);
    }
    if (auto it = sections.find("window"); it != sections.end())
        spec.window = parse_window(it->second);
    if (auto it = sections.find("example"); it != sections.end())
        spec.example = parse_example(it->second);
    return spec;
}

std::string print_spec(const SpecFile& spec)
{
    std::vector<std::string> blocks;
    if (spec.ring) {
        std::vector<std::string> gens;
        for (const auto& g : spec.ring->generators)
            gens.push_back(fmt::format("{}:{}", g.name, g.degree));
        std::string b = fmt::format("[ring]\ncoefficients = {}\n", spec.ring->coefficients.name());
        b += gens.empty() ? "generators =\n" : fmt::format("generators = {}\n", fmt::join(gens, ", "));
        if (spec.ring->invert)
            b += fmt::format("invert = {}\n", *spec.ring->invert);
        blocks.push_back(std::move(b));
    }
    if (spec.ideal && spec.ring) {
        const RingSpec r = bare_ring(*spec.ring);
        std::vector<std::string> polys;
        for (const auto& u : spec.ideal->sequence)
            polys.push_back(u.to_string(r));
        blocks.push_back(polys.empty() ? "[ideal]\nsequence =\n"
                                       : fmt::format("[ideal]\nsequence = {}\n", fmt::join(polys, ", ")));
    }
    if (spec.window) {
        const auto& w = *spec.window;
        blocks.push_back(fmt::format("[window]\nt_min = {}\nt_max = {}\ns_max = {}\nstage_max = {}\n", w.t_min, w.t_max,
                                     w.s_max, w.stage_max));
    }
    if (spec.example) {
        const auto& e = *spec.example;
        blocks.push_back(
            fmt::format("[example]\nwhich = {}\np = {}\nn = {}\nj_max = {}\n", to_string(e.which), e.p, e.n, e.j_max));
    }
    return fmt::format("{}", fmt::join(blocks, "\n"));
}

RingSpec ring_spec(const SpecFile& spec, const DegreeWindow& w)
{
    if (!spec.ring)
        throw std::invalid_argument("this command needs a [ring] section");
    RingSpec r = bare_ring(*spec.ring);
    r.window = w;
    if (spec.ring->invert)
        r.inverted = r.index_of(*spec.ring->invert);
    r.validate();
    return r;
}

IdealSpec ideal_spec(const SpecFile& spec)
{
    if (!spec.ideal)
        throw std::invalid_argument("this command needs an [ideal] section");
    return *spec.ideal;
}

ExampleConfig example_config(const ExampleSection& e, const DegreeWindow& w)
{
    ExampleConfig c;
    c.which = e.which;
    c.p = e.p;
    c.n = e.n;
    c.j_max = e.j_max;
    c.window = w;
    c.validate();
    return c;
}

}  // namespace homalg::cli
