#include "homalg/cli/commands.hpp"
#include "spec_corpus.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace homalg;
using namespace homalg::cli;
namespace fs = std::filesystem;

namespace {

ParseError parse_failure(const std::string& text)
{
    try {
        parse_spec(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for:\n" << text);
    return ParseError(0, 0, "");
}

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("homalg_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_text(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

int run_quiet(Invocation inv, std::string* log = nullptr)
{
    std::ostringstream os;
    int code = run(inv, os);
    if (log)
        *log = os.str();
    return code;
}

const char* two_variable_spec = R"([ring]
coefficients = F2
generators = x1:2, x2:2
[ideal]
sequence = x1, x2
[window]
t_max = 10
s_max = 3
stage_max = 3
)";

}  // namespace

TEST_CASE("minimal spec file with one generator")
{
    auto spec = parse_spec("[ring]\ncoefficients = F2\ngenerators = x1:2\n");
    REQUIRE(spec.ring);
    CHECK(spec.ring->coefficients == Coefficients::prime_field(2));
    REQUIRE(spec.ring->generators.size() == 1);
    CHECK(spec.ring->generators[0] == Generator{"x1", 2});
    CHECK_FALSE(spec.ideal);
    CHECK_FALSE(spec.window);
    CHECK_FALSE(spec.example);
}

TEST_CASE("odd generator degree is rejected with its location")
{
    auto e = parse_failure("[ring]\ncoefficients = F2\ngenerators = x1:2, x2:3\n");
    CHECK(e.line() == 3);
    CHECK(e.column() == 23);
    CHECK(e.message().find("even degree required") != std::string::npos);
}

TEST_CASE("homogeneity of ideal entries follows the ring degrees")
{
    auto ok = parse_spec("[ring]\ncoefficients = F2\ngenerators = x1:2, x2:4\n[ideal]\nsequence = x1^2 + 2*x2\n");
    REQUIRE(ok.ideal);
    REQUIRE(ok.ideal->sequence.size() == 1);
    RingSpec r = ring_spec(ok, default_window);
    CHECK(ok.ideal->sequence[0].degree(r) == 4);

    auto e = parse_failure("[ring]\ncoefficients = F2\ngenerators = x1:2, x2:6\n[ideal]\nsequence = x1, x1^2 + 2*x2\n");
    CHECK(e.line() == 5);
    CHECK(e.column() == 16);
    CHECK(e.message().find("not homogeneous") != std::string::npos);
}

TEST_CASE("parse errors name line and column")
{
    struct Case
    {
        const char* text;
        int line;
        int column;
        const char* fragment;
    };
    const Case cases[] = {
        {"[rings]\n", 1, 2, "unknown section"},
        {"[ring]\ncoefficients = F2\ncolour = red\n", 3, 1, "unknown key"},
        {"coefficients = F2\n", 1, 1, "outside of a section"},
        {"[ring]\ncoefficients = F4\n", 2, 16, "not prime"},
        {"[example]\nwhich = B\np = 9\n", 3, 5, "not prime"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\n[ideal]\nsequence = x +\n", 5, 15, "expected a generator"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\n[ideal]\nsequence = x ** 2\n", 5, 15, "unexpected '*'"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\n[ideal]\nsequence = x*y\n", 5, 14, "unknown generator 'y'"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\n[ideal]\nsequence = (x\n", 5, 14, "expected ')'"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\n[ideal]\nsequence = x, , x\n", 5, 15, "empty list item"},
        {"[window]\nt_max = ten\n", 2, 9, "expected an integer"},
        {"[ring]\ncoefficients = F2\ncoefficients = Q\n", 3, 1, "duplicate key"},
        {"[ring]\ncoefficients = F2\n[ring]\n", 3, 2, "duplicate section"},
        {"[ideal]\nsequence = 1\n", 1, 1, "requires a [ring]"},
        {"[ring]\ncoefficients = F2\ngenerators = x:2\ninvert = y\n", 4, 10, "unknown generator"},
        {"[ring]\ncoefficients = F2\n just text\n", 3, 2, "expected 'key = value'"},
        {"# caf\xc3\xa9\n[ring]\ncoefficients = F2\ngenerators = \xc3\xa9:2\n", 4, 14, "invalid generator name"},
        {"[ring]\ncoefficients = F2\ngenerators = x\xff:2\n", 3, 15, "invalid UTF-8"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        auto e = parse_failure(c.text);
        CHECK(e.line() == c.line);
        CHECK(e.column() == c.column);
        CHECK_MESSAGE(e.message().find(c.fragment) != std::string::npos, e.message());
        CHECK(std::string(e.what()).starts_with("line "));
    }
}

TEST_CASE("columns count code points")
{
    // The generator name follows a two-byte character in a comment-free line.
    auto e = parse_failure("[ring]\ncoefficients = F2\ngenerators = x:2, \xc3\xa9x:2\n");
    CHECK(e.column() == 19);
}

TEST_CASE("spec files round-trip through print")
{
    for (auto text : testing_support::spec_corpus) {
        CAPTURE(text);
        SpecFile a = parse_spec(std::string(text));
        const std::string printed = print_spec(a);
        SpecFile b = parse_spec(printed);
        CHECK(a == b);
        CHECK(print_spec(b) == printed);
    }
}

TEST_CASE("polynomial expressions expand")
{
    RingSection r{Coefficients::rationals(), {{"x", 2}, {"y", 2}}, std::nullopt};
    RingSpec rs;
    rs.generators = r.generators;
    CHECK(parse_polynomial("(x + y)^2", r).to_string(rs) == "x^2 + 2*x*y + y^2");
    CHECK(parse_polynomial("-x + x", r).is_zero());
    CHECK(parse_polynomial("3*x*y - 2", r).to_string(rs) == "3*x*y - 2");
    CHECK(parse_polynomial("x^0", r).to_string(rs) == "1");
}

TEST_CASE("window and example defaults")
{
    auto s = parse_spec("[window]\nt_max = 9\n[example]\nwhich = C\n");
    REQUIRE(s.window);
    CHECK(*s.window == DegreeWindow{0, 9, 4, 4});
    REQUIRE(s.example);
    CHECK(s.example->which == ExampleKind::C);
    CHECK(s.example->p == 2);
    CHECK(parse_failure("[window]\nt_min = 5\nt_max = 1\n").line() == 1);
    CHECK(parse_failure("[example]\nwhich = B\nn = 3\nj_max = 2\n").message().find("j_max") != std::string::npos);
}

TEST_CASE("ring_spec applies the inverted generator and window")
{
    auto s = parse_spec(std::string(testing_support::spec_corpus[4]));
    RingSpec r = ring_spec(s, DegreeWindow{0, 16, 2, 2});
    REQUIRE(r.inverted);
    CHECK(r.generators[*r.inverted].name == "v1");
    CHECK(r.window.t_max == 16);
    CHECK_THROWS_AS(ring_spec(SpecFile{}, default_window), std::invalid_argument);
    CHECK_THROWS_AS(ideal_spec(SpecFile{}), std::invalid_argument);
}

TEST_CASE("CSV output: exact header, nonzero rows, sorted")
{
    std::vector<ChartEntry> rows{
        {{1, 4}, ZModule{2, {}}},
        {{0, 0}, ZModule{1, {}}},
        {{1, 2}, ZModule{0, {}}},
        {{0, 2}, ZModule{0, {Integer(3), Integer(9)}}},
    };
    const std::string csv = write_csv(rows);
    CHECK(csv == "s,t,rank,torsion\n0,0,1,\n0,2,0,3;9\n1,4,2,\n");
    auto back = read_csv(csv);
    REQUIRE(back.size() == 3);
    CHECK(back[1].group.torsion == std::vector<Integer>{3, 9});
    CHECK(write_csv(back) == csv);
    CHECK(write_csv({}) == "s,t,rank,torsion\n");
    CHECK(read_csv("s,t,rank,torsion\n").empty());
}

TEST_CASE("CSV reader locates errors")
{
    auto err = [](const std::string& text) {
        try {
            read_csv(text);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(0, 0);
    };
    CHECK(err("s,t,rank\n") == std::make_pair(0, 0));
    CHECK(err("a,b\n") == std::make_pair(1, 1));
    CHECK(err("s,t,rank,torsion\n0,x,1,\n") == std::make_pair(2, 3));
    CHECK(err("s,t,rank,torsion\n0,0,1,3;q\n") == std::make_pair(2, 9));
    CHECK(err("s,t,rank,torsion\n1,0,1,\n0,0,1,\n") == std::make_pair(3, 1));
    CHECK(err("s,t,rank,torsion\n1,0\n") == std::make_pair(2, 1));
}

TEST_CASE("SVG charts are deterministic and follow the axis convention")
{
    std::vector<ChartEntry> rows{{{0, 0}, ZModule{1, {}}}, {{2, 6}, ZModule{3, {}}}, {{1, 3}, ZModule{0, {Integer(2)}}}};
    const std::string adams = render_svg(rows, Axes::Adams, "E_2 <test>");
    CHECK(adams == render_svg(rows, Axes::Adams, "E_2 <test>"));
    CHECK(adams.starts_with("<?xml"));
    CHECK(adams.find("version=\"1.1\"") != std::string::npos);
    CHECK(adams.find("E_2 &lt;test&gt;") != std::string::npos);
    CHECK(adams.find("(s=2, t=6)") != std::string::npos);
    CHECK(adams.find(">Z/2<") != std::string::npos);
    CHECK(adams.ends_with("</svg>\n"));
    // Adams: x = t - s = 4 at s = 2. Cartesian: x = t = 6.
    const std::string cart = render_svg(rows, Axes::Cartesian, "E_2 <test>");
    CHECK(adams != cart);
    CHECK(adams.find("<circle cx=\"210\" cy=\"40\"") != std::string::npos);
    CHECK(cart.find("<circle cx=\"290\" cy=\"40\"") != std::string::npos);

    const std::string empty = render_svg({}, Axes::Adams, "empty");
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("<circle") == std::string::npos);
    CHECK(empty.ends_with("</svg>\n"));
    CHECK(parse_axes("cartesian") == Axes::Cartesian);
    CHECK_THROWS_AS(parse_axes("polar"), std::invalid_argument);
}

TEST_CASE("window flag")
{
    CHECK(parse_window_flag("0,12,3,2") == DegreeWindow{0, 12, 3, 2});
    CHECK(parse_window_flag("-4,8,1,1") == DegreeWindow{-4, 8, 1, 1});
    CHECK_THROWS_AS(parse_window_flag("0,12,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_window_flag("0,a,3,3"), std::invalid_argument);
}

TEST_CASE("tor command on F2[x1,x2]/(x1,x2) writes the exterior table")
{
    auto dir = scratch("tor");
    auto spec = write_text(dir / "s.spec", two_variable_spec);
    Invocation inv{"tor", {}, spec, dir / "out", std::nullopt, Axes::Adams, 1};
    REQUIRE(run_quiet(inv) == exit_ok);
    const std::string csv = slurp(dir / "out" / "tor.csv");
    CHECK(csv == "s,t,rank,torsion\n0,0,1,\n1,2,2,\n2,4,1,\n");
    CHECK(fs::exists(dir / "out" / "tor.svg"));
    CHECK(fs::exists(dir / "out" / "tor.txt"));

    // Distinct degrees spread the rows to the four exterior monomials.
    auto spec2 = write_text(dir / "s2.spec", "[ring]\ncoefficients = F2\ngenerators = x1:2, x2:4\n"
                                             "[ideal]\nsequence = x1, x2\n[window]\nt_max = 10\ns_max = 3\n");
    Invocation inv2{"tor", {}, spec2, dir / "out2", std::nullopt, Axes::Adams, 1};
    REQUIRE(run_quiet(inv2) == exit_ok);
    CHECK(slurp(dir / "out2" / "tor.csv") == "s,t,rank,torsion\n0,0,1,\n1,2,1,\n1,4,1,\n2,6,1,\n");
}

TEST_CASE("repeated runs give byte-identical CSV, independent of jobs")
{
    auto dir = scratch("determinism");
    auto spec = write_text(dir / "s.spec", std::string(testing_support::spec_corpus[0]));
    std::string first;
    for (unsigned jobs : {1u, 1u, 4u}) {
        Invocation inv{"tor", {}, spec, dir / ("out" + std::to_string(jobs)), std::nullopt, Axes::Adams, jobs};
        REQUIRE(run_quiet(inv) == exit_ok);
        const std::string csv = slurp(inv.out_dir / "tor.csv");
        if (first.empty())
            first = csv;
        CHECK(csv == first);
    }
    CHECK(first.starts_with("s,t,rank,torsion\n"));
}

TEST_CASE("e2 example A writes CSV, SVG and a collapse verdict")
{
    auto dir = scratch("e2");
    Invocation inv{"e2", {"example=A", "p=2", "j_max=2"}, std::nullopt, dir, DegreeWindow{0, 12, 3, 3},
                   Axes::Adams, 1};
    std::string log;
    REQUIRE(run_quiet(inv, &log) == exit_ok);
    CHECK(fs::exists(dir / "e2.csv"));
    CHECK(fs::exists(dir / "e2.svg"));
    CHECK(fs::exists(dir / "e2_kunneth.csv"));
    const std::string report = slurp(dir / "e2.txt");
    CHECK(report.find("Adams verdict: collapses at E_2 within window") != std::string::npos);
    CHECK(report.find("cobar agrees") != std::string::npos);
    CHECK(log.find("collapses") != std::string::npos);
    CHECK(slurp(dir / "e2.csv").starts_with("s,t,rank,torsion\n0,0,1,\n1,1,1,\n"));
}

TEST_CASE("chart on an empty CSV gives an empty SVG")
{
    auto dir = scratch("chart");
    auto csv = write_text(dir / "empty.csv", "s,t,rank,torsion\n");
    Invocation inv{"chart", {csv.string()}, std::nullopt, dir / "out", std::nullopt, Axes::Cartesian, 1};
    REQUIRE(run_quiet(inv) == exit_ok);
    const std::string svg = slurp(dir / "out" / "empty.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<circle") == std::string::npos);

    write_text(dir / "bad.csv", "s,t\n");
    Invocation bad{"chart", {(dir / "bad.csv").string()}, std::nullopt, dir / "out", std::nullopt, Axes::Adams, 1};
    CHECK(run_quiet(bad) == exit_usage);
}

TEST_CASE("chart re-renders a command's CSV")
{
    auto dir = scratch("rechart");
    auto spec = write_text(dir / "s.spec", two_variable_spec);
    REQUIRE(run_quiet({"tor", {}, spec, dir, std::nullopt, Axes::Adams, 1}) == exit_ok);
    REQUIRE(run_quiet({"chart", {(dir / "tor.csv").string()}, std::nullopt, dir / "c", std::nullopt, Axes::Adams, 1}) ==
            exit_ok);
    const std::string svg = slurp(dir / "c" / "tor.svg");
    CHECK(svg.find("(s=1, t=2): Z^2") != std::string::npos);
}

TEST_CASE("mathematical failures exit 1 with a witness")
{
    auto dir = scratch("witness");
    auto spec = write_text(dir / "s.spec", "[ring]\ncoefficients = F2\ngenerators = x1:2\n[ideal]\nsequence = x1, x1\n");
    Invocation inv{"check-regular", {}, spec, dir / "out", DegreeWindow{0, 8, 2, 2}, Axes::Adams, 1};
    REQUIRE(run_quiet(inv) == exit_math_failure);
    auto w = nlohmann::json::parse(slurp(dir / "out" / "witness.json"));
    CHECK(w["kind"] == "regularity");
    CHECK(w["failures"][0]["index"] == 2);
    CHECK(w["command"] == "check-regular");

    // Building the tower needs a regular sequence.
    Invocation tower{"tower", {"s=2"}, spec, dir / "out2", DegreeWindow{0, 8, 2, 2}, Axes::Adams, 1};
    REQUIRE(run_quiet(tower) == exit_math_failure);
    CHECK(fs::exists(dir / "out2" / "witness.json"));
}

TEST_CASE("usage and parse errors exit 2")
{
    auto dir = scratch("usage");
    auto good = write_text(dir / "good.spec", two_variable_spec);
    auto bad = write_text(dir / "bad.spec", "[ring]\ncoefficients = F2\ngenerators = x1:3\n");
    std::string log;
    CHECK(run_quiet({"tor", {}, bad, dir, std::nullopt, Axes::Adams, 1}, &log) == exit_usage);
    CHECK(log.find("line 3, column 17") != std::string::npos);
    CHECK(log.find("even degree required") != std::string::npos);
    CHECK(run_quiet({"frobnicate", {}, good, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"tower", {}, good, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"tower", {"s=x"}, good, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"tor", {"colour=red"}, good, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"tor", {}, std::nullopt, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"tor", {}, dir / "missing.spec", dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"e2", {}, std::nullopt, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"e2", {"example=D"}, std::nullopt, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK(run_quiet({"e2", {"example=B", "p=4"}, std::nullopt, dir, std::nullopt, Axes::Adams, 1}) == exit_usage);
    CHECK_FALSE(fs::exists(dir / "witness.json"));
}

TEST_CASE("every pipeline command runs on a small spec")
{
    auto dir = scratch("all");
    auto spec = write_text(dir / "s.spec", two_variable_spec);
    auto go = [&](std::string cmd, std::vector<std::string> args) {
        return run_quiet({std::move(cmd), std::move(args), spec, dir, std::nullopt, Axes::Adams, 2});
    };
    CHECK(go("check-regular", {}) == exit_ok);
    CHECK(go("tor", {"s=2"}) == exit_ok);
    CHECK(go("tower", {"s=3"}) == exit_ok);
    CHECK(go("exactness", {}) == exit_ok);
    CHECK(go("cotor", {}) == exit_ok);
    CHECK(go("complete", {"shifts=0,2"}) == exit_ok);
    for (const char* f : {"check_regular.txt", "tor_power_s2.csv", "tower_s3.csv", "tower_s3.svg", "exactness.txt",
                          "cotor.csv", "complete.csv", "complete_module.csv"})
        CHECK_MESSAGE(fs::exists(dir / f), f);
    CHECK_FALSE(fs::exists(dir / "witness.json"));
    // R/I^s in degree 0 is one-dimensional for every stage.
    CHECK(slurp(dir / "complete.csv").starts_with("s,t,rank,torsion\n1,0,1,\n"));
}

TEST_CASE("completion over the integers reports torsion in the CSV")
{
    auto dir = scratch("complete_z");
    auto spec = write_text(dir / "s.spec", std::string(testing_support::spec_corpus[3]));
    REQUIRE(run_quiet({"complete", {}, spec, dir, std::nullopt, Axes::Adams, 1}) == exit_ok);
    CHECK(slurp(dir / "complete.csv") == "s,t,rank,torsion\n1,0,0,3\n2,0,0,9\n3,0,0,27\n4,0,0,81\n5,0,0,243\n6,0,0,729\n");
}
