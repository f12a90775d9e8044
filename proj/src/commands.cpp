#include "homalg/cli/commands.hpp"
#include "homalg/examples/adams.hpp"
#include "homalg/failure.hpp"
#include "homalg/koszul/koszul.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace homalg::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

int to_int(const std::string& key, const std::string& v)
{
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        throw UsageError(fmt::format("{}: expected an integer, got '{}'", key, v));
    return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_int(key, item));
    if (out.empty())
        throw UsageError(key + ": expected a comma-separated list of integers");
    return out;
}

std::map<std::string, std::string> key_args(const Invocation& inv, const std::set<std::string>& allowed)
{
    std::map<std::string, std::string> out;
    for (const auto& a : inv.args) {
        const auto eq = a.find('=');
        if (eq == std::string::npos)
            throw UsageError(fmt::format("{}: expected key=value, got '{}'", inv.command, a));
        const std::string key = a.substr(0, eq);
        if (!allowed.contains(key))
            throw UsageError(fmt::format("{}: unknown argument '{}'", inv.command, key));
        if (!out.emplace(key, a.substr(eq + 1)).second)
            throw UsageError(fmt::format("{}: '{}' given twice", inv.command, key));
    }
    return out;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Context
{
public:
    Context(const Invocation& inv, std::ostream& log) : inv_(inv), log_(log)
    {
        if (inv.spec_path) {
            const std::string text = read_file(*inv.spec_path);
            try {
                spec_ = parse_spec(text);
            } catch (const ParseError& e) {
                throw UsageError(inv.spec_path->string() + ": " + e.what());
            }
        }
        window_ = inv.window ? *inv.window : spec_.window ? *spec_.window : default_window;
        window_.validate();
    }

    const Invocation& inv() const { return inv_; }
    const SpecFile& spec() const { return spec_; }
    const DegreeWindow& window() const { return window_; }
    std::ostream& log() { return log_; }

    RingSpec ring() const { return ring_spec(spec_, window_); }

    IdealSpec ideal(const RingSpec& r) const
    {
        IdealSpec i = ideal_spec(spec_);
        i.validate(r);
        return i;
    }

    void write(const std::string& name, const std::string& content)
    {
        fs::create_directories(inv_.out_dir);
        const fs::path p = inv_.out_dir / name;
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
        out << content;
        log_ << "wrote " << p.string() << "\n";
    }

    void report(const std::string& name, const std::string& text)
    {
        log_ << text;
        write(name + ".txt", text);
    }

    void table(const std::string& name, const std::vector<ChartEntry>& entries, const std::string& title)
    {
        write(name + ".csv", write_csv(entries));
        write(name + ".svg", render_svg(entries, inv_.axes, title));
    }

private:
    const Invocation& inv_;
    std::ostream& log_;
    SpecFile spec_;
    DegreeWindow window_;
};

std::string window_text(const DegreeWindow& w)
{
    return fmt::format("window t={}..{}, s<={}, stages<={}", w.t_min, w.t_max, w.s_max, w.stage_max);
}

void fail_if(bool failed, const std::string& what, nlohmann::json witness)
{
    if (failed)
        throw MathFailure(what, std::move(witness));
}

void check_regular(Context& ctx)
{
    key_args(ctx.inv(), {});
    const RingSpec r = ctx.ring();
    const IdealSpec i = ctx.ideal(r);
    auto rep = check_regular_sequence(r, i, ctx.window());
    ctx.report("check_regular", rep.summary());
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : rep.failures)
        failures.push_back({{"index", f.index}, {"t", f.t}, {"detail", f.detail}});
    fail_if(!rep.regular(), fmt::format("sequence is not regular at index {}", rep.regular() ? 0 : rep.failures.front().index),
            {{"kind", "regularity"}, {"failures", failures}});
}

void tor(Context& ctx)
{
    auto args = key_args(ctx.inv(), {"s"});
    const RingSpec r = ctx.ring();
    const IdealSpec i = ctx.ideal(r);
    if (args.contains("s")) {
        const int s = to_int("s", args["s"]);
        if (s < 2)
            throw UsageError("tor: s must be at least 2");
        auto rep = tor_against_power(static_cast<std::size_t>(s), r, i, ctx.window(), ctx.inv().jobs);
        const std::string name = fmt::format("tor_power_s{}", s);
        ctx.table(name, chart_entries(rep.brute_force), fmt::format("Tor(R/I, R/I^{}) {}", s, window_text(ctx.window())));
        ctx.report(name, rep.summary());
        fail_if(!rep.ok(), "Tor against R/I^s: pipelines disagree or products are nonzero", rep.witness());
        return;
    }
    auto rep = tor_diagonal(r, i, ctx.window(), ctx.inv().jobs);
    ctx.table("tor", chart_entries(rep.computed), "Tor(R/I, R/I) " + window_text(ctx.window()));
    ctx.report("tor", rep.summary());
    fail_if(!rep.ok(), "Tor(R/I, R/I) disagrees with the exterior closed form", rep.witness());
}

void tower(Context& ctx)
{
    auto args = key_args(ctx.inv(), {"s"});
    if (!args.contains("s"))
        throw UsageError("tower: s=<k> is required");
    const int s = to_int("s", args["s"]);
    if (s < 1)
        throw UsageError("tower: s must be at least 1");
    const RingSpec r = ctx.ring();
    const IdealSpec i = ctx.ideal(r);
    auto t = build_tower_resolution(static_cast<std::size_t>(s), r, i, ctx.window());
    auto check = verify_tower_resolution(t, r, i, ctx.window(), ctx.inv().jobs);
    const std::string name = fmt::format("tower_s{}", s);
    ctx.table(name, chart_entries(check.homology), fmt::format("H(K^({})) {}", s - 1, window_text(ctx.window())));
    ctx.report(name, t.complex.convention + "\n" + check.summary());
    fail_if(!check.ok(), fmt::format("K^({}) does not resolve R/I^{}", s - 1, s), check.witness());
}

void exactness(Context& ctx)
{
    auto args = key_args(ctx.inv(), {"s"});
    const RingSpec r = ctx.ring();
    const IdealSpec i = ctx.ideal(r);
    int lo = 2, hi = std::max(2, ctx.window().stage_max);
    if (args.contains("s"))
        lo = hi = to_int("s", args["s"]);
    if (lo < 2)
        throw UsageError("exactness: s must be at least 2");
    std::string text;
    nlohmann::json failures = nlohmann::json::array();
    for (int s = lo; s <= hi; ++s) {
        auto rep = verify_partial_exactness(static_cast<std::size_t>(s), r, i, ctx.window(), ctx.inv().jobs);
        text += rep.summary();
        if (!rep.ok())
            failures.push_back(rep.witness());
    }
    ctx.report("exactness", text);
    fail_if(!failures.empty(), "the boundary sequence is not exact", {{"kind", "exactness"}, {"reports", failures}});
}

HopfSpec cotor_hopf(Context& ctx)
{
    if (ctx.spec().ideal)
        return hopf_from_quotient(ctx.ring(), ctx.ideal(ctx.ring()));
    if (ctx.spec().example)
        return example_setup(example_config(*ctx.spec().example, ctx.window())).hopf;
    throw UsageError("cotor: needs [ring] and [ideal], or [example]");
}

void cotor(Context& ctx)
{
    key_args(ctx.inv(), {});
    const HopfSpec h = cotor_hopf(ctx);
    auto rep = cotor_ranks(h, ctx.window(), ctx.inv().jobs);
    ctx.table("cotor", chart_entries(rep.computed), "Cotor " + window_text(ctx.window()));
    ctx.report("cotor", rep.summary());
    fail_if(!rep.ok(), "cobar cohomology disagrees with the polynomial closed form", rep.witness());
}

nlohmann::json verdict_json(const CollapseVerdict& v)
{
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : v.candidates)
        cands.push_back({{"r", c.r},
                         {"source", to_json(c.source)},
                         {"target", to_json(c.target)},
                         {"source_rank", c.source_rank},
                         {"target_rank", c.target_rank}});
    return {{"collapses", v.collapses()}, {"parity_holds", v.parity_holds}, {"candidates", cands}};
}

void e2(Context& ctx)
{
    auto args = key_args(ctx.inv(), {"example", "p", "n", "j_max"});
    ExampleSection sec = ctx.spec().example.value_or(ExampleSection{});
    if (args.contains("example"))
        sec.which = parse_example_kind(args["example"]);
    else if (!ctx.spec().example)
        throw UsageError("e2: example=<A|B|C> is required without an [example] section");
    if (args.contains("p")) {
        const int p = to_int("p", args["p"]);
        if (p < 2)
            throw UsageError("p must be a prime");
        sec.p = static_cast<std::uint64_t>(p);
    }
    if (args.contains("n"))
        sec.n = to_int("n", args["n"]);
    if (args.contains("j_max"))
        sec.j_max = to_int("j_max", args["j_max"]);
    const ExampleConfig cfg = example_config(sec, ctx.window());

    auto adams = adams_e2_table(cfg, ctx.inv().jobs);
    auto kunneth = kunneth_presentation(cfg);
    auto kv = collapse_audit(kunneth, DifferentialPattern::Kunneth);
    const CollapseVerdict& av = *adams.collapse;

    std::string text = fmt::format("Example {} (p={}, n={}, j_max={}), {}\n", to_string(cfg.which), cfg.p, cfg.n,
                                   cfg.j_max, window_text(cfg.window));
    text += fmt::format("base: {}\n", adams.base_name);
    for (const auto& note : adams.notes)
        text += "note: " + note + "\n";
    std::vector<std::string> kg, ag;
    for (const auto& g : kunneth.generators)
        kg.push_back(fmt::format("{}({},{})", g.name, g.bidegree.s, g.bidegree.t));
    for (const auto& g : adams.generators)
        ag.push_back(fmt::format("{}({},{})", g.name, g.bidegree.s, g.bidegree.t));
    text += fmt::format("Kunneth E_2 = Lambda(base; {})\n", fmt::join(kg, ", "));
    text += fmt::format("Kunneth verdict: {}\n", kv.text());
    text += fmt::format("Adams E_2 = base[{}]  [{}]\n", fmt::join(ag, ", "), adams.pipeline);
    text += fmt::format("Adams verdict: {}\n", av.text());
    text += fmt::format("parity t = s mod 2: {}\n", parity_holds(adams) ? "holds" : "FAILS");

    ctx.table("e2", chart_entries(adams.ranks), fmt::format("Adams E_2, Example {} {}", to_string(cfg.which),
                                                             window_text(cfg.window)));
    ctx.write("e2_kunneth.csv", write_csv(chart_entries(kunneth.ranks)));
    ctx.report("e2", text);
    const bool failed = !av.collapses() || !kv.collapses() || !parity_holds(adams) ||
                        adams.pipeline.find("DISAGREES") != std::string::npos;
    fail_if(failed, "E_2 collapse audit failed",
            {{"kind", "collapse"}, {"adams", verdict_json(av)}, {"kunneth", verdict_json(kv)},
             {"pipeline", adams.pipeline}, {"parity_holds", parity_holds(adams)}});
}

std::vector<ChartEntry> completion_entries(const CompletionReport& rep)
{
    std::vector<ChartEntry> out;
    for (const auto& [t, d] : rep.degrees)
        for (std::size_t k = 0; k < d.stages.size(); ++k)
            if (!d.stages[k].is_zero())
                out.push_back({{static_cast<int>(k) + 1, t}, d.stages[k]});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    return out;
}

void complete(Context& ctx)
{
    auto args = key_args(ctx.inv(), {"shifts"});
    const RingSpec r = ctx.ring();
    const IdealSpec i = ctx.ideal(r);
    auto rep = completion_tower(r, i, ctx.window());
    ctx.write("complete.csv", write_csv(completion_entries(rep)));
    std::string text = "R/I^s by stage s and degree t\n" + rep.summary();
    bool surjective = rep.surjective();
    if (args.contains("shifts")) {
        auto mod = module_completion(to_int_list("shifts", args["shifts"]), rep);
        ctx.write("complete_module.csv", write_csv(completion_entries(mod)));
        text += fmt::format("free module on generators in degrees {}\n", args["shifts"]) + mod.summary();
        surjective = surjective && mod.surjective();
    }
    ctx.report("complete", text);
    nlohmann::json bad = nlohmann::json::array();
    for (const auto& [t, d] : rep.degrees)
        if (!d.surjective)
            bad.push_back(t);
    fail_if(!surjective, "completion tower maps are not surjective", {{"kind", "completion"}, {"degrees", bad}});
}

void chart(Context& ctx)
{
    if (ctx.inv().args.size() != 1)
        throw UsageError("chart: expected exactly one input CSV");
    const fs::path in = ctx.inv().args.front();
    const std::string text = read_file(in);
    std::vector<ChartEntry> entries;
    try {
        entries = read_csv(text);
    } catch (const ParseError& e) {
        throw UsageError(in.string() + ": " + e.what());
    }
    ctx.write(in.stem().string() + ".svg", render_svg(entries, ctx.inv().axes, in.filename().string()));
}

using Handler = void (*)(Context&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h{
        {"check-regular", check_regular}, {"tor", tor},   {"tower", tower},       {"exactness", exactness},
        {"cotor", cotor},                 {"e2", e2},     {"complete", complete}, {"chart", chart},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"check-regular", "tor",      "tower", "exactness",
                                                "cotor",         "e2",       "complete", "chart"};
    return names;
}

DegreeWindow parse_window_flag(const std::string& text)
{
    auto v = to_int_list("--window", text);
    if (v.size() != 4)
        throw UsageError("--window expects t_min,t_max,s_max,stage_max");
    DegreeWindow w{v[0], v[1], v[2], v[3]};
    w.validate();
    return w;
}

int run(const Invocation& inv, std::ostream& log)
{
    auto it = handlers().find(inv.command);
    if (it == handlers().end()) {
        log << "error: unknown command '" << inv.command << "'\n";
        return exit_usage;
    }
    try {
        Context ctx(inv, log);
        it->second(ctx);
        return exit_ok;
    } catch (const MathFailure& e) {
        nlohmann::json w = e.witness();
        w["command"] = inv.command;
        w["message"] = e.what();
        try {
            fs::create_directories(inv.out_dir);
            std::ofstream(inv.out_dir / "witness.json") << w.dump(2) << "\n";
            log << "wrote " << (inv.out_dir / "witness.json").string() << "\n";
        } catch (const std::exception& io) {
            log << "error: could not write witness: " << io.what() << "\n";
        }
        log << "FAILURE: " << e.what() << "\n";
        return exit_math_failure;
    } catch (const ParseError& e) {
        log << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace homalg::cli
