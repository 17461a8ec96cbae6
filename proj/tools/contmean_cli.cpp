#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "contmean/aggregate.hpp"
#include "contmean/closed_forms.hpp"
#include "contmean/oracle.hpp"
#include "contmean/pair_mean_roof.hpp"
#include "contmean/pair_mean_spt.hpp"
#include "contmean/subdivision.hpp"

using json = nlohmann::ordered_json;
using namespace contmean;

namespace {

// Wall-clock helper.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// One resolved run: input source, backend, tolerances, threads, format.
struct RunConfig {
    std::string input;  // "-" = stdin
    std::string backend = "spt";
    std::string mode = "both";
    std::string format = "json";
    std::string shortcut_policy = "error";
    std::string config_path;
    double tolerance_rel = 1e-9;
    double tolerance_abs = 1e-12;
    int threads = 0;
    std::uint64_t seed = 0;

    Tolerance tolerance() const { return Tolerance{tolerance_rel, tolerance_abs}; }
};

int threads_from_env() {
    const char* env = std::getenv("CONTMEAN_THREADS");
    if (env == nullptr) return 0;
    return std::atoi(env);
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) raise(ErrorKind::validation_error, "cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

ParseResult load_graph(const RunConfig& cfg) {
    ParseOptions options;
    options.metric_policy = cfg.shortcut_policy == "warn" ? ParseOptions::MetricPolicy::warn
                                                          : ParseOptions::MetricPolicy::error;
    options.tol = cfg.tolerance();
    return parse_graph(read_input(cfg.input), options);
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_input = true) {
    if (with_input) {
        cmd->add_option("--input,-i", cfg.input, "Graph file (edge list or JSON), '-' for stdin")
            ->required();
    }
    cmd->add_option("--threads,-t", cfg.threads,
                    "Worker threads (0 = auto; env CONTMEAN_THREADS as fallback)");
    cmd->add_option("--tolerance-rel", cfg.tolerance_rel, "Relative comparison tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance-abs", cfg.tolerance_abs, "Absolute comparison floor")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--allow-shortcut-edges", cfg.shortcut_policy,
                    "Metric-edge violations: error out or demote to warnings")
        ->check(CLI::IsMember({"error", "warn"}));
    cmd->add_option("--config", cfg.config_path, "Config file with 'key = value' lines");
}

// Fills run parameters from a key = value file; values given on the command
// line win.
void apply_config(CLI::App* cmd, RunConfig& cfg) {
    if (cfg.config_path.empty()) return;
    std::ifstream file(cfg.config_path);
    if (!file) {
        raise(ErrorKind::validation_error, "cannot open config file '" + cfg.config_path + "'");
    }
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    auto unset = [&](const std::string& name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() == 0;
    };
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string text = trim(line);
        if (text.empty()) continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            raise(ErrorKind::validation_error, "config line " + std::to_string(line_no) +
                                                   ": expected 'key = value'");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key == "threads" && unset("--threads")) {
            cfg.threads = std::stoi(value);
        } else if (key == "backend" && unset("--backend")) {
            cfg.backend = value;
        } else if (key == "mode" && unset("--mode")) {
            cfg.mode = value;
        } else if (key == "format" && unset("--format")) {
            cfg.format = value;
        } else if (key == "tolerance-rel" && unset("--tolerance-rel")) {
            cfg.tolerance_rel = std::stod(value);
        } else if (key == "tolerance-abs" && unset("--tolerance-abs")) {
            cfg.tolerance_abs = std::stod(value);
        } else if (key == "allow-shortcut-edges" && unset("--allow-shortcut-edges")) {
            cfg.shortcut_policy = value;
        } else if (key == "seed" && unset("--seed")) {
            cfg.seed = std::stoull(value);
        }
        // Keys for options a subcommand does not define are ignored, so one
        // config file can serve several subcommands.
    }
}

void emit(const RunConfig& cfg, const json& report) {
    if (cfg.format == "table") {
        for (const auto& [key, value] : report.items()) {
            std::cout << key << ": "
                      << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    } else {
        std::cout << report.dump() << "\n";
    }
}

json warnings_json(const ParseResult& parsed) {
    json w = json::array();
    for (const std::string& msg : parsed.warnings) w.push_back(msg);
    return w;
}

int run_mean(const RunConfig& cfg, bool per_pair_table) {
    Stopwatch clock;
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);

    json report;
    std::string backend_used = cfg.backend;
    std::string detected_class;
    json pair_table;
    if (cfg.mode != "discrete") {
        double value = 0;
        if (cfg.backend == "auto") {
            ClosedFormDispatch d = closed_form_mean(g, cfg.tolerance());
            detected_class = graph_class_name(d.detected);
            if (d.closed_form) {
                value = d.value;
                backend_used = std::string("closed-form:") + detected_class;
            } else {
                MeanOptions options;
                options.backend = PairBackend::spt;
                options.threads = cfg.threads;
                options.tol = cfg.tolerance();
                value = continuous_mean(g, dm, options).value;
                backend_used = "spt";
            }
        } else {
            MeanOptions options;
            options.backend = cfg.backend == "roof" ? PairBackend::roof : PairBackend::spt;
            options.threads = cfg.threads;
            options.tol = cfg.tolerance();
            options.per_pair_table = per_pair_table;
            MeanDistanceResult r = continuous_mean(g, dm, options);
            value = r.value;
            if (per_pair_table) {
                pair_table = json::array();
                for (const PairContribution& p : r.pair_table) {
                    pair_table.push_back({p.e, p.f, p.mean});
                }
            }
        }
        report["continuous_mean"] = value;
    }
    if (cfg.mode != "continuous") {
        report["discrete_mean"] = discrete_mean(g, dm);
        report["wiener"] = wiener_index(g, dm);
    }
    report["n"] = g.vertex_count();
    report["m"] = g.edge_count();
    report["total_length"] = g.total_length();
    report["backend"] = cfg.mode == "discrete" ? "discrete" : backend_used;
    if (!detected_class.empty()) report["class"] = detected_class;
    if (!parsed.warnings.empty()) report["warnings"] = warnings_json(parsed);
    if (!pair_table.is_null()) report["pair_table"] = pair_table;
    report["elapsed_ms"] = clock.ms();
    emit(cfg, report);
    return 0;
}

int run_distances(const RunConfig& cfg) {
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
    std::cout << "vertex";
    for (int v = 0; v < g.vertex_count(); ++v) std::cout << ',' << g.label(v);
    std::cout << '\n';
    char buf[40];
    for (int u = 0; u < g.vertex_count(); ++u) {
        std::cout << g.label(u);
        for (int v = 0; v < g.vertex_count(); ++v) {
            std::snprintf(buf, sizeof buf, "%.17g", dm(u, v));
            std::cout << ',' << buf;
        }
        std::cout << '\n';
    }
    return 0;
}

json case_json(const WeightedGraph& g, const EdgePairCase& c) {
    json out;
    switch (c.kind) {
        case PairCaseKind::same_edge:
            out["case"] = "same_edge";
            break;
        case PairCaseKind::linear:
            out["case"] = "linear";
            out["funnel_edge"] = c.funnel_edge;
            out["via_vertex"] = g.label(c.via_vertex);
            break;
        case PairCaseKind::cycle:
            out["case"] = "cycle";
            out["span_edge"] = c.span_edge;
            out["root_edge"] = c.root_edge;
            out["break_point_a"] = c.break_point_a;
            out["break_point_b"] = c.break_point_b;
            out["mirror_a"] = c.mirror_a;
            out["mirror_b"] = c.mirror_b;
            out["coincident_breaks"] = c.coincident_breaks;
            out["theta"] = c.theta;
            out["rect_side"] = c.rect_side;
            break;
    }
    return out;
}

int run_edge_pair(const RunConfig& cfg, int e, int f) {
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    if (e < 0 || f < 0 || e >= g.edge_count() || f >= g.edge_count()) {
        raise(ErrorKind::invalid_parameter, "edge index out of range");
    }
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
    json report;
    report["e"] = e;
    report["f"] = f;
    if (e == f) {
        report["classification"] = {{"case", "same_edge"}};
        report["value_spt"] = g.edge(e).length / 3.0;
        report["value_roof"] = same_edge_mean(g.edge(e).length);
    } else {
        EdgePairCase c = classify_pair(g, dm, e, f, cfg.tolerance());
        report["classification"] = case_json(g, c);
        report["value_spt"] = pair_mean_from_case(g, dm, c, cfg.tolerance());
        report["value_roof"] = roof_mean(build_roof(g, dm, e, f));
        auto [lower, upper] = pair_bounds(g, dm, e, f);
        report["lower_bound"] = lower;
        report["upper_bound"] = upper;
    }
    emit(cfg, report);
    return 0;
}

int run_roof(const RunConfig& cfg, int e, int f) {
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    if (e < 0 || f < 0 || e >= g.edge_count() || f >= g.edge_count() || e == f) {
        raise(ErrorKind::invalid_parameter, "roof needs two distinct edge indices");
    }
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
    RoofDiagram roof = build_roof(g, dm, e, f);
    json planes = json::array();
    for (const RoofPlane& p : roof.planes) {
        planes.push_back({{"coef_x", p.coef_x},
                          {"coef_y", p.coef_y},
                          {"offset", p.offset},
                          {"corner", p.corner},
                          {"corner_weight", p.corner_weight}});
    }
    json regions = json::array();
    for (const RoofRegion& r : roof.regions) {
        json polygon = json::array();
        for (const RoofPoint& pt : r.polygon) polygon.push_back({pt.x, pt.y});
        regions.push_back({{"plane", r.plane},
                           {"area", r.area},
                           {"volume", r.volume},
                           {"polygon", polygon}});
    }
    json report;
    report["pair"] = {e, f};
    report["len_x"] = roof.len_x;
    report["len_y"] = roof.len_y;
    report["planes"] = planes;
    report["regions"] = regions;
    report["mean"] = roof_mean(roof);
    emit(cfg, report);
    return 0;
}

int run_bounds(const RunConfig& cfg) {
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
    Tolerance tol = cfg.tolerance();

    int checked = 0;
    int violations = 0;
    double min_lower_margin = 1e300;
    double min_upper_margin = 1e300;
    for (int e = 0; e < g.edge_count(); ++e) {
        for (int f = e + 1; f < g.edge_count(); ++f) {
            double value = pair_mean(g, dm, e, f, tol);
            auto [lower, upper] = pair_bounds(g, dm, e, f);
            min_lower_margin = std::min(min_lower_margin, value - lower);
            min_upper_margin = std::min(min_upper_margin, upper - value);
            if (value < lower - 1e-9 || value > upper + 1e-9) ++violations;
            ++checked;
        }
    }
    json report;
    report["pairs_checked"] = checked;
    report["violations"] = violations;
    if (checked > 0) {
        report["min_lower_margin"] = min_lower_margin;
        report["min_upper_margin"] = min_upper_margin;
    }
    if (g.is_uniform(tol)) {
        LineGraphBounds lb = line_graph_bounds(g, tol, cfg.threads);
        double mu = continuous_mean(g, dm).value;
        report["line_graph"] = {{"lower", lb.lower},
                                {"upper", lb.upper},
                                {"line_discrete_mean", lb.line_discrete_mean},
                                {"edge_wiener", lb.edge_wiener},
                                {"line_vertices", lb.line_vertices},
                                {"line_edges", lb.line_edges},
                                {"continuous_mean", mu},
                                {"holds", mu >= lb.lower - 1e-9 && mu <= lb.upper + 1e-9}};
    } else {
        report["line_graph"] = nullptr;
    }
    emit(cfg, report);
    return 0;
}

int run_subdivide(const RunConfig& cfg, int k, bool materialize, std::size_t cap) {
    Stopwatch clock;
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;

    json report;
    report["k"] = k;
    SandwichBounds b = omega_sandwich(g, k, materialize, cap, cfg.threads);
    report["omega"] = b.omega;
    report["lower"] = b.lower;
    report["upper"] = b.upper;
    report["rho"] = b.rho;
    if (b.mu_d_actual.has_value()) {
        report["mu_d_actual"] = *b.mu_d_actual;
    } else {
        report["mu_d_actual"] = nullptr;
    }
    SubdivisionLimits lim = subdivision_limits(g, cfg.threads);
    json limits;
    limits["blue_discrete_mean"] = lim.blue_discrete_mean;
    limits["upper_limit"] = lim.upper_limit;
    limits["tree_exact"] = lim.tree_exact.has_value() ? json(*lim.tree_exact) : json(nullptr);
    limits["uniform_upper"] =
        lim.uniform_upper.has_value() ? json(*lim.uniform_upper) : json(nullptr);
    report["limits"] = limits;
    MeanOptions options;
    options.threads = cfg.threads;
    options.tol = cfg.tolerance();
    report["continuous_mean"] = continuous_mean(g, options).value;
    report["elapsed_ms"] = clock.ms();
    emit(cfg, report);
    return 0;
}

int run_oracle(const RunConfig& cfg, int grid) {
    Stopwatch clock;
    ParseResult parsed = load_graph(cfg);
    const WeightedGraph& g = parsed.graph;
    DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
    OracleConfig oracle_cfg;
    oracle_cfg.grid = grid;
    oracle_cfg.threads = cfg.threads;
    json report;
    report["continuous_mean"] = oracle_graph_mean(g, dm, oracle_cfg);
    report["discrete_mean"] = discrete_mean(g, dm);
    report["wiener"] = wiener_index(g, dm);
    report["n"] = g.vertex_count();
    report["m"] = g.edge_count();
    report["total_length"] = g.total_length();
    report["backend"] = "oracle";
    report["grid"] = grid;
    report["elapsed_ms"] = clock.ms();
    emit(cfg, report);
    return 0;
}

int run_generate(const RunConfig& cfg, const std::string& kind, int n, double alpha, double wmin,
                 double wmax, const std::string& weights_csv) {
    WeightSpec spec = WeightSpec::uniform(alpha);
    if (!weights_csv.empty()) {
        std::vector<double> values;
        std::stringstream ss(weights_csv);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
        spec = WeightSpec::explicit_list(std::move(values));
    } else if (wmin > 0 || wmax > 0) {
        spec = WeightSpec::random(wmin, wmax);
    }
    WeightedGraph g = generate(graph_kind_from_name(kind), n, spec, cfg.seed);
    std::cout << serialize_graph(g);
    return 0;
}

int run_bench(const RunConfig& cfg, const std::vector<int>& sizes, const std::string& kind) {
    json rows = json::array();
    double previous_pair_ms = 0;
    for (int size : sizes) {
        if (size > 200000) raise(ErrorKind::cap_exceeded, "bench size too large");
        WeightedGraph g;
        double closed_ms = 0;
        if (kind == "tree") {
            g = generate(GraphKind::random_tree, size, WeightSpec::random(0.5, 2.0), cfg.seed);
            Stopwatch c;
            double value = tree_mean(g);
            closed_ms = c.ms();
            rows.push_back({{"kind", kind},
                            {"n", g.vertex_count()},
                            {"m", g.edge_count()},
                            {"tree_mean", value},
                            {"closed_form_ms", closed_ms}});
            continue;
        }
        g = generate_connected(std::max(2, size / 2), size, WeightSpec::random(0.5, 2.0),
                               cfg.seed);
        Stopwatch apsp_clock;
        DistanceMatrix dm = all_pairs_distances(g, cfg.threads);
        double apsp_ms = apsp_clock.ms();

        MeanOptions options;
        options.threads = cfg.threads;
        options.tol = cfg.tolerance();
        Stopwatch pair_clock;
        MeanDistanceResult r = continuous_mean(g, dm, options);
        double pair_ms = pair_clock.ms();

        json row = {{"kind", kind},         {"n", g.vertex_count()}, {"m", g.edge_count()},
                    {"apsp_ms", apsp_ms},   {"pair_loop_ms", pair_ms},
                    {"continuous_mean", r.value}};
        if (previous_pair_ms > 0) row["pair_ratio"] = pair_ms / previous_pair_ms;
        previous_pair_ms = pair_ms;
        rows.push_back(row);
    }
    if (cfg.format == "table") {
        for (const auto& row : rows) {
            for (const auto& [key, value] : row.items()) {
                std::cout << key << "=" << value.dump() << " ";
            }
            std::cout << "\n";
        }
    } else {
        std::cout << json{{"bench", rows}}.dump() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous mean distance of weighted graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.threads = threads_from_env();

    bool per_pair_table = false;
    auto* mean = app.add_subcommand("mean", "Whole-graph mean distances");
    add_common(mean, cfg);
    mean->add_option("--backend,-b", cfg.backend, "Pair backend")
        ->check(CLI::IsMember({"spt", "roof", "auto"}));
    mean->add_option("--mode", cfg.mode, "Which means to compute")
        ->check(CLI::IsMember({"continuous", "discrete", "both"}));
    mean->add_flag("--per-pair-table", per_pair_table,
                   "Include every pairwise mean in the report");

    auto* distances = app.add_subcommand("distances", "All-pairs vertex distances as CSV");
    add_common(distances, cfg);

    int pair_e = 0, pair_f = 0;
    auto* edge_pair = app.add_subcommand("edge-pair", "Classify one edge pair and its mean");
    add_common(edge_pair, cfg);
    edge_pair->add_option("--e", pair_e, "First edge index")->required();
    edge_pair->add_option("--f", pair_f, "Second edge index")->required();

    std::vector<int> roof_pair;
    auto* roof = app.add_subcommand("roof", "Roof-diagram regions for one edge pair");
    add_common(roof, cfg);
    roof->add_option("--pair", roof_pair, "Edge indices")->expected(2)->required();

    auto* bounds = app.add_subcommand("bounds", "Pair and line-graph bound report");
    add_common(bounds, cfg);

    int subdivision_k = 2;
    bool materialize = false;
    std::size_t cap = std::size_t{1} << 20;
    auto* subdivide = app.add_subcommand("subdivide", "Canonical k-th subdivision report");
    add_common(subdivide, cfg);
    subdivide->add_option("--k", subdivision_k, "Subdivision depth")->required();
    subdivide->add_flag("--materialize", materialize, "Also compute mu_d(G^k) directly");
    subdivide->add_option("--cap", cap, "Vertex cap for materialization");

    int grid = 512;
    auto* oracle = app.add_subcommand("oracle", "Grid-quadrature reference mean");
    add_common(oracle, cfg);
    oracle->add_option("--n,--grid", grid, "Samples per axis");

    std::string gen_kind = "random_connected";
    int gen_n = 10;
    double alpha = 1.0, wmin = 0.0, wmax = 0.0;
    std::string weights_csv;
    auto* generate_cmd = app.add_subcommand("generate", "Emit a generated graph as edge list");
    add_common(generate_cmd, cfg, false);
    generate_cmd->add_option("--kind", gen_kind, "Graph family")->required();
    generate_cmd->add_option("--n", gen_n, "Vertex count")->required();
    generate_cmd->add_option("--alpha", alpha, "Uniform edge length");
    generate_cmd->add_option("--wmin", wmin, "Random weight lower bound");
    generate_cmd->add_option("--wmax", wmax, "Random weight upper bound");
    generate_cmd->add_option("--weights", weights_csv, "Explicit comma-separated weights");
    generate_cmd->add_option("--seed", cfg.seed, "Random seed");

    std::vector<int> sizes{250, 500, 1000};
    std::string bench_kind = "random_connected";
    auto* bench = app.add_subcommand("bench", "Timing of the APSP and pair-loop phases");
    add_common(bench, cfg, false);
    bench->add_option("--sizes", sizes, "Edge counts (or vertex counts for tree)")
        ->delimiter(',');
    bench->add_option("--kind", bench_kind, "Instance family")
        ->check(CLI::IsMember({"random_connected", "tree"}));
    bench->add_option("--seed", cfg.seed, "Random seed");

    try {
        app.parse(argc, argv);
        for (CLI::App* sub : app.get_subcommands()) apply_config(sub, cfg);
        if (mean->parsed()) return run_mean(cfg, per_pair_table);
        if (distances->parsed()) return run_distances(cfg);
        if (edge_pair->parsed()) return run_edge_pair(cfg, pair_e, pair_f);
        if (roof->parsed()) return run_roof(cfg, roof_pair[0], roof_pair[1]);
        if (bounds->parsed()) return run_bounds(cfg);
        if (subdivide->parsed()) return run_subdivide(cfg, subdivision_k, materialize, cap);
        if (oracle->parsed()) return run_oracle(cfg, grid);
        if (generate_cmd->parsed()) {
            return run_generate(cfg, gen_kind, gen_n, alpha, wmin, wmax, weights_csv);
        }
        if (bench->parsed()) return run_bench(cfg, sizes, bench_kind);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
