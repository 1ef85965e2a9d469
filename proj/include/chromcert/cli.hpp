#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chromcert/chromcert.hpp"

namespace chromcert::cli {

class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Flags shared by every command; stripped from the recorded argv.
struct GlobalOptions {
    std::string out;
    bool timing = false;
    int threads = 1;
    std::string format = "json";
};

inline int default_threads() {
    if (const char* env = std::getenv("CHROMCERT_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t >= 1) return t;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

/// Graph from --zoo NAME or --in FILE (first graph6 line; "-" for stdin),
/// optionally replaced by its line graph.
inline Graph load_graph(const std::string& zoo_name, const std::string& in, bool line) {
    if (zoo_name.empty() == in.empty()) throw UsageError("exactly one of --zoo or --in is required");
    Graph g;
    if (!zoo_name.empty()) {
        try {
            g = zoo(zoo_name);
        } catch (const UnknownGraphError& e) {
            throw UsageError(e.what());
        }
    } else {
        std::istringstream text(read_file(in));
        std::string first;
        while (std::getline(text, first)) {
            while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
            if (!first.empty()) break;
        }
        if (first.empty()) throw UsageError("no graph6 line in " + in);
        try {
            g = parse_graph6(first);
        } catch (const Graph6Error& e) {
            throw UsageError(e.what());
        }
    }
    return line ? line_graph(g) : g;
}

/// Lists from "uniform:K", "degree:KSPEC" or a JSON file {"lists": {...}}.
inline ListAssignment load_lists(const std::string& spec, const Graph& g) {
    if (spec.empty()) throw UsageError("--lists is required");
    if (spec.starts_with("uniform:")) {
        int k = 0;
        try {
            k = std::stoi(spec.substr(8));
        } catch (const std::exception&) {
            throw UsageError("bad list spec: " + spec);
        }
        if (k < 0) throw UsageError("list size must be non-negative");
        return ListAssignment::uniform(g.order(), k);
    }
    if (spec.starts_with("degree:")) {
        try {
            return degree_list_assignment(g, KSpec::parse(spec.substr(7)));
        } catch (const SizeCapError&) {
            throw;
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    try {
        return ListAssignment::from_json(nlohmann::json::parse(read_file(spec)), g.order());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad list file " + spec + ": " + e.what());
    }
}

inline KSpec parse_kspec(const std::string& s) {
    try {
        return KSpec::parse(s);
    } catch (const std::exception&) {
        throw UsageError("unknown k: " + s);
    }
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

inline std::string relation_to_bound(long value, long bound) {
    return value == bound ? "sharp" : value < bound ? "below" : "exceeds";
}

inline nlohmann::json graph_summary(const Graph& g) {
    return {{"n", g.order()},
            {"m", g.size()},
            {"max_degree", g.max_degree()},
            {"graph6", encode_graph6(g)},
            {"triangle_free", is_triangle_free(g)},
            {"c4_free", is_c4_free(g)},
            {"bipartite", is_bipartite(g).has_value()}};
}

}  // namespace detail

/// Output of one command: the report plus optional CSV for --format csv.
struct Outcome {
    RunReport report;
    std::string csv;
};

/// Parses and runs one invocation. `args` excludes the program name.
/// Writes the JSON report (or CSV) to `out` unless --out is given; diagnostics go to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

namespace detail {

struct Builder {
    CLI::App app{"Certified checks for degree-bounded coloring of triangle-free graphs", "chromcert"};
    GlobalOptions g;
    std::function<Outcome()> action;

    // property-p
    long delta0 = 0, delta = 0, ell = 0, t = 0, threshold = 540, scan_limit = 1000;
    std::string k;
    bool search_min = false;
    // bip
    long da = 0, db = 0, ka = 0, kb = 0, window = 0;
    std::string pairs_csv;
    // graph
    std::string zoo_name, in, lists, name;
    bool line = false, choosability = false;
    int vertex = 0, kmax = 0, count = 1, gt = 1;
    std::string gell = "1";
    std::uint64_t seed = 0;
    // replay
    std::string report_path;

    Builder() {
        app.require_subcommand(1);
        app.fallthrough();
        app.set_help_all_flag("--help-all", "Show all help");
        app.add_option("--out", g.out, "Write the report to this file instead of stdout");
        app.add_flag("--timing", g.timing, "Record wall-clock timing in the report");
        app.add_option("--threads", g.threads, "Worker threads (default: CHROMCERT_THREADS or 1)")
            ->check(CLI::PositiveNumber);
        app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        g.threads = default_threads();
        build_property_p();
        build_bip();
        build_graph();
        auto* replay = app.add_subcommand("replay", "Re-run a saved report and compare outcomes");
        replay->add_option("--report", report_path, "Report JSON file")->required();
        replay->callback([this] { action = [this] { return cmd_replay(); }; });
    }

    void build_property_p() {
        auto* pp = app.add_subcommand("property-p", "Arithmetic condition (P) certificates");
        pp->require_subcommand(1);
        auto* cert = pp->add_subcommand("certify", "Certify (P) for every delta >= delta0");
        cert->add_option("--delta0", delta0)->required();
        cert->add_option("--ell", ell)->required();
        cert->add_option("--t", t)->required();
        cert->add_option("--k", k, "half | three-quarter | two-thirds | const:N | affine:m,a,b,c,off")->required();
        cert->add_option("--threshold", threshold, "Tail threshold")->capture_default_str();
        cert->add_flag("--search-min", search_min, "Also report the least certifiable delta0");
        cert->add_option("--scan-limit", scan_limit, "Search bound for --search-min")->capture_default_str();
        cert->callback([this] { action = [this] { return cmd_property_p_certify(); }; });
        auto* single = pp->add_subcommand("single", "Check (P) at one delta");
        single->add_option("--delta", delta)->required();
        single->add_option("--ell", ell)->required();
        single->add_option("--t", t)->required();
        single->add_option("--k", k)->required();
        single->callback([this] { action = [this] { return cmd_property_p_single(); }; });
    }

    void build_bip() {
        auto* bip = app.add_subcommand("bip", "Bipartite list-coloring conditions");
        bip->require_subcommand(1);
        auto* table = bip->add_subcommand("table1", "Least Delta_B certified for each Delta_A in 2..55");
        table->callback([this] { action = [this] { return cmd_bip_table1(); }; });
        auto* cert = bip->add_subcommand("certify", "Certify (k_A, k_B)-choosability for degrees (Delta_A, Delta_B)");
        cert->add_option("--da", da)->required();
        cert->add_option("--db", db)->required();
        cert->add_option("--ka", ka, "List size on A (default ceil(Delta_A/2)+1)");
        cert->add_option("--kb", kb, "List size on B (default ceil(Delta_B/2)+1)");
        cert->callback([this] { action = [this] { return cmd_bip_certify(); }; });
        auto* region = bip->add_subcommand("region", "Check the claimed regions inside [1,N]^2");
        region->add_option("--window", window)->required();
        region->callback([this] { action = [this] { return cmd_bip_region(); }; });
        auto* scan = bip->add_subcommand("scan", "Pairs in [1,N]^2 not certified with half list sizes");
        scan->add_option("--window", window)->required();
        scan->add_option("--pairs-csv", pairs_csv, "Also write the uncovered pairs as CSV");
        scan->callback([this] { action = [this] { return cmd_bip_scan(); }; });
    }

    CLI::App* graph_command(CLI::App* parent, const std::string& nm, const std::string& desc) {
        auto* c = parent->add_subcommand(nm, desc);
        c->add_option("--zoo", zoo_name, "Named graph, e.g. petersen, c5, k33, complete_bipartite:3,4");
        c->add_option("--in", in, "graph6 file ('-' for stdin)");
        c->add_flag("--line", line, "Use the line graph of the input");
        return c;
    }

    void build_graph() {
        auto* gr = app.add_subcommand("graph", "Exact graph computations");
        gr->require_subcommand(1);
        auto* z = gr->add_subcommand("zoo", "Show a named graph");
        z->add_option("--name", name)->required();
        z->add_flag("--line", line, "Use the line graph");
        z->callback([this] { action = [this] { return cmd_graph_zoo(); }; });
        graph_command(gr, "chi", "Chromatic number and the degree bound")->callback([this] {
            action = [this] { return cmd_graph_chi(); };
        });
        auto* cl = graph_command(gr, "chi-list", "List chromatic number (exhaustive)");
        cl->add_option("--kmax", kmax, "Largest k tried (default Delta+1)");
        cl->callback([this] { action = [this] { return cmd_graph_chi_list(); }; });
        auto* cnt = graph_command(gr, "count", "Number of proper L-colorings");
        cnt->add_option("--lists", lists, "uniform:K | degree:KSPEC | JSON file")->required();
        cnt->callback([this] { action = [this] { return cmd_graph_count(); }; });
        auto* ratio = graph_command(gr, "ratio", "Counting ratio |C(G)|/|C(G-v)| and its ingredients");
        ratio->add_option("--lists", lists)->required();
        ratio->add_option("--vertex", vertex)->required();
        ratio->add_option("--t", gt, "Few-colors threshold")->capture_default_str();
        ratio->add_option("--ell", gell, "Ratio hypothesis (rational)")->capture_default_str();
        ratio->callback([this] { action = [this] { return cmd_graph_ratio(); }; });
        graph_command(gr, "orient", "Halved-outdegree orientation with its trace")->callback([this] {
            action = [this] { return cmd_graph_orient(); };
        });
        auto* at = graph_command(gr, "at", "Alon-Tarsi difference of the halved-outdegree orientation");
        at->add_flag("--choosability", choosability, "Bipartite only: also exhaust all ceil(deg/2)+1 list assignments");
        at->callback([this] { action = [this] { return cmd_graph_at(); }; });
        auto* sample = graph_command(gr, "sample", "Uniform random proper L-colorings");
        sample->add_option("--lists", lists)->required();
        sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
        sample->add_option("--count", count, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
        sample->callback([this] { action = [this] { return cmd_graph_sample(); }; });
    }

    static Outcome verdict_outcome(const std::string& command, nlohmann::json params, const Certificate& c) {
        Outcome o;
        o.report.command = command;
        o.report.parameters = std::move(params);
        o.report.verdict = c.verdict;
        o.report.result = {{"certificate", c.to_json()}};
        o.report.exit_code = exit_code_for(c.verdict);
        return o;
    }

    Outcome plain(const std::string& command, nlohmann::json params, nlohmann::json result) const {
        Outcome o;
        o.report.command = command;
        o.report.parameters = std::move(params);
        o.report.result = std::move(result);
        return o;
    }

    void check_pkt() const {
        require(ell >= 1, "--ell must be >= 1");
        require(t >= 1, "--t must be >= 1");
    }

    Outcome cmd_property_p_certify() {
        require(delta0 >= 1, "--delta0 must be >= 1");
        check_pkt();
        require(threshold >= 1, "--threshold must be >= 1");
        Lemma23Overrides o;
        o.delta0 = delta0;
        o.ell = ell;
        o.t = t;
        o.k = parse_kspec(k);
        o.threshold = threshold;
        o.threads = g.threads;
        nlohmann::json params = {{"delta0", delta0}, {"ell", ell}, {"t", t}, {"k", o.k.name()}, {"threshold", threshold}};
        auto c = certify_lemma23(o);
        auto out = verdict_outcome("property-p certify", params, c);
        out.report.result["claim"] = c.claim;
        for (const auto& p : c.parts) {
            if (p.claim == "property-p-range" && p.witness.contains("delta")) {
                out.report.result["failing_delta"] = p.witness["delta"];
            }
        }
        if (search_min) {
            require(scan_limit >= 1, "--scan-limit must be >= 1");
            out.report.parameters["scan_limit"] = scan_limit;
            auto m = minimal_delta0(ell, t, o.k, scan_limit, threshold);
            out.report.result["minimal_delta0"] = {{"delta0", m.delta0 ? nlohmann::json(*m.delta0) : nlohmann::json()},
                                                   {"range_only", m.range_only},
                                                   {"verdict", to_string(m.certificate.verdict)}};
        }
        return out;
    }

    Outcome cmd_property_p_single() {
        require(delta >= 1, "--delta must be >= 1");
        check_pkt();
        auto kk = parse_kspec(k);
        return verdict_outcome("property-p single", {{"delta", delta}, {"ell", ell}, {"t", t}, {"k", kk.name()}},
                               property_p_single(delta, ell, t, kk));
    }

    Outcome cmd_bip_table1() {
        Outcome o = plain("bip table1", nlohmann::json::object(), {});
        auto rows = nlohmann::json::array();
        o.csv = "delta_a,value\n";
        for (long d = 2; d <= 55; ++d) {
            auto e = table1_entry(d);
            rows.push_back({{"delta_a", d}, {"k_a", e.k_a}, {"value", e.value}, {"enclosure", e.enclosure.to_json(25)}});
            o.csv += std::to_string(d) + "," + std::to_string(e.value) + "\n";
        }
        o.report.result = {{"rows", rows}, {"count", rows.size()}};
        o.report.verdict = Verdict::certified_true;
        return o;
    }

    Outcome cmd_bip_certify() {
        require(da >= 1 && db >= 1, "--da and --db must be >= 1");
        BipartiteParams p{da, db, ka ? ka : half_list_size(da), kb ? kb : half_list_size(db)};
        require(p.k_a >= 1 && p.k_b >= 1, "--ka and --kb must be >= 1");
        if (p.k_a > p.delta_a || p.k_b > p.delta_b) {
            // outside the precondition the greedy argument applies
            Certificate c;
            c.claim = "bipartite-choosable";
            c.params = p.to_json();
            c.method = "greedy";
            c.verdict = Verdict::certified_true;
            c.witness = {{"condition", "greedy"}};
            c.add_step("some list size exceeds its side's max degree", "true", "", "", true);
            auto out = verdict_outcome("bip certify", p.to_json(), c);
            out.report.result["condition"] = "greedy";
            return out;
        }
        auto c = choosable_certificate(p);
        auto out = verdict_outcome("bip certify", p.to_json(), c);
        out.report.result["condition"] = c.witness["condition"];
        if (c.witness.contains("orientation")) out.report.result["orientation"] = c.witness["orientation"];
        return out;
    }

    Outcome cmd_bip_region() {
        require(window >= 1, "--window must be >= 1");
        auto r = theorem35_verify(window, g.threads);
        auto out = verdict_outcome("bip region", {{"window", window}}, r.certificate);
        out.report.result["pairs_checked"] = r.pairs_checked;
        out.report.result["trivial_pairs"] = r.trivial_pairs;
        out.report.result["violations"] = r.violations.size();
        return out;
    }

    Outcome cmd_bip_scan() {
        require(window >= 1, "--window must be >= 1");
        auto s = uncovered_region_scan(window, g.threads);
        std::string csv = "delta_a,delta_b,reason\n";
        for (const auto& p : s.pairs) {
            csv += std::to_string(p.delta_a) + "," + std::to_string(p.delta_b) + "," + std::string(to_string(p.reason)) +
                   "\n";
        }
        if (!pairs_csv.empty()) write_file(pairs_csv, csv);
        constexpr long kClaimed = 27000;
        Outcome o = plain("bip scan", {{"window", window}}, {});
        auto und = nlohmann::json::array();
        for (const auto& p : s.undecided) und.push_back({p.delta_a, p.delta_b});
        o.report.result = {{"unordered_count", s.unordered_count},
                           {"ordered_count", s.ordered_count},
                           {"precondition_count", s.precondition_count},
                           {"undecided", und},
                           {"claimed_bound", kClaimed},
                           {"within_claim", s.ordered_count <= kClaimed && s.unordered_count <= kClaimed},
                           {"coverage_argument", s.coverage_argument}};
        o.report.verdict = !s.undecided.empty()         ? Verdict::undecided
                           : o.report.result["within_claim"] ? Verdict::certified_true
                                                             : Verdict::certified_false;
        o.report.exit_code = exit_code_for(*o.report.verdict);
        o.csv = std::move(csv);
        return o;
    }

    Graph source() const { return load_graph(zoo_name, in, line); }
    nlohmann::json source_params() const {
        nlohmann::json p = {{"line", line}};
        if (!zoo_name.empty()) p["zoo"] = zoo_name;
        else p["in"] = in;
        return p;
    }

    Outcome cmd_graph_zoo() {
        Graph gr;
        try {
            gr = zoo(name);
        } catch (const UnknownGraphError& e) {
            throw UsageError(e.what());
        }
        if (line) gr = line_graph(gr);
        auto res = graph_summary(gr);
        res["graph"] = gr.to_json();
        return plain("graph zoo", {{"name", name}, {"line", line}}, res);
    }

    Outcome cmd_graph_chi() {
        Graph gr = source();
        const long chi = chromatic_number(gr);
        const long delta_max = gr.max_degree();
        const long bound = (delta_max + 2) / 2 + 1;  // ceil((Delta+1)/2) + 1
        auto res = graph_summary(gr);
        res["chi"] = chi;
        res["bound"] = bound;
        res["relation"] = relation_to_bound(chi, bound);
        return plain("graph chi", source_params(), res);
    }

    Outcome cmd_graph_chi_list() {
        Graph gr = source();
        const int km = kmax ? kmax : gr.max_degree() + 1;
        require(km >= 1, "--kmax must be >= 1");
        auto res = graph_summary(gr);
        res["chi_list"] = list_chromatic_number(gr, km);
        res["kmax"] = km;
        auto p = source_params();
        if (kmax) p["kmax"] = kmax;
        return plain("graph chi-list", p, res);
    }

    Outcome cmd_graph_count() {
        Graph gr = source();
        auto L = load_lists(lists, gr);
        auto p = source_params();
        p["lists"] = lists;
        return plain("graph count", p, {{"count", to_decimal(count_list_colorings(gr, L))}});
    }

    Outcome cmd_graph_ratio() {
        Graph gr = source();
        auto L = load_lists(lists, gr);
        require(vertex >= 0 && vertex < gr.order(), "--vertex out of range");
        require(gt >= 1, "--t must be >= 1");
        BigRational ell_q;
        try {
            ell_q = parse_rational(gell);
        } catch (const std::exception&) {
            throw UsageError("bad --ell: " + gell);
        }
        require(ell_q > 0, "--ell must be positive");
        auto p = source_params();
        p["lists"] = lists;
        p["vertex"] = vertex;
        p["t"] = gt;
        p["ell"] = to_string(ell_q);
        auto r = ratio_report({gr, L, vertex, gt, ell_q});
        auto res = r.to_json();
        res["ratio_value"] = to_string(r.ratio);
        return plain("graph ratio", p, res);
    }

    Outcome cmd_graph_orient() {
        Graph gr = source();
        auto [d, trace] = halved_outdegree_orientation(gr);
        nlohmann::json res = {{"orientation", d.to_json()},
                              {"trace", trace.to_json()},
                              {"trace_verified", trace.verify(gr)},
                              {"outdegree_bound", satisfies_halving_bound(d)},
                              {"odd_directed_cycle", has_odd_directed_cycle(d)}};
        Outcome o = plain("graph orient", source_params(), res);
        o.report.exit_code = res["trace_verified"] && res["outdegree_bound"] ? exit_true : exit_false;
        return o;
    }

    Outcome cmd_graph_at() {
        Graph gr = source();
        auto p = source_params();
        p["choosability"] = choosability;
        if (choosability) {
            auto r = verify_theorem32_small(gr);
            Outcome o = plain("graph at", p, r.to_json());
            o.report.verdict = r.pass() ? Verdict::certified_true : Verdict::certified_false;
            o.report.exit_code = exit_code_for(*o.report.verdict);
            return o;
        }
        auto d = halved_outdegree_orientation(gr).first;
        auto diff = alon_tarsi_difference(d);
        return plain("graph at", p,
                     {{"orientation", d.to_json()}, {"alon_tarsi", to_decimal(diff)}, {"nonzero", diff != 0}});
    }

    Outcome cmd_graph_sample() {
        Graph gr = source();
        auto L = load_lists(lists, gr);
        auto p = source_params();
        p["lists"] = lists;
        p["count"] = count;
        auto samples = sample_colorings(gr, L, seed, static_cast<std::size_t>(count));
        auto arr = nlohmann::json::array();
        for (const auto& c : samples) arr.push_back(c.colors());
        Outcome o = plain("graph sample", p, {{"colorings", arr}});
        o.report.seed = seed;
        return o;
    }

    Outcome cmd_replay() {
        RunReport saved;
        try {
            saved = RunReport::from_json(nlohmann::json::parse(read_file(report_path)));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("bad report " + report_path + ": " + e.what());
        } catch (const IoError&) {
            throw;
        } catch (const Error& e) {
            throw UsageError("bad report " + report_path + ": " + e.what());
        }
        std::ostringstream captured, diag;
        std::vector<std::string> args = saved.argv;
        args.insert(args.begin(), "json");
        args.insert(args.begin(), "--format");
        run(args, captured, diag);
        RunReport again = RunReport::from_json(nlohmann::json::parse(captured.str()));
        const bool same = saved.same_outcome(again);
        Outcome o = plain("replay", {{"report", report_path}},
                          {{"replayed_command", saved.command}, {"identical", same}});
        o.report.verdict = same ? Verdict::certified_true : Verdict::certified_false;
        o.report.exit_code = exit_code_for(*o.report.verdict);
        return o;
    }
};

/// argv minus the global flags that do not affect results.
inline std::vector<std::string> canonical_argv(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--timing") continue;
        if (a == "--out" || a == "--threads" || a == "--format") {
            ++i;
            continue;
        }
        if (a.starts_with("--out=") || a.starts_with("--threads=") || a.starts_with("--format=")) continue;
        out.push_back(a);
    }
    return out;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    detail::Builder b;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        b.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << b.app.help();
        return exit_true;
    } catch (const CLI::CallForAllHelp&) {
        out << b.app.help("", CLI::AppFormatMode::All);
        return exit_true;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = b.action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SizeCapError& e) {
        err << "size cap: " << e.what() << "\n";
        return exit_size_cap;
    } catch (const AmbiguousCeilingError& e) {
        err << "undecided: " << e.what() << "\n";
        return exit_undecided;
    } catch (const ResourceLimitError& e) {
        err << "undecided: " << e.what() << "\n";
        return exit_undecided;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    o.report.argv = detail::canonical_argv(args);
    if (b.g.timing) {
        o.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string json = o.report.to_json().dump(2) + "\n";
    try {
        if (b.g.format == "csv") {
            if (o.csv.empty()) {
                err << "error: this command has no CSV output\n";
                return exit_usage;
            }
            out << o.csv;
            if (!b.g.out.empty()) detail::write_file(b.g.out, json);
        } else if (!b.g.out.empty()) {
            detail::write_file(b.g.out, json);
        } else {
            out << json;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return o.report.exit_code;
}

}  // namespace chromcert::cli
