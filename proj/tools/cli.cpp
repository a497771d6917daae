#include "cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tps/tps.hpp"

namespace tps::cli {

namespace {

struct GenerateArgs {
    std::uint64_t vertices = 0;
    double exponent = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

struct ClusterArgs {
    std::string graph;
    std::optional<std::uint64_t> vertices;
    std::uint32_t k = 0;
    std::string out;
};

struct PartitionArgs {
    std::string algo = "2ps";
    std::string graph;
    std::optional<std::uint64_t> vertices;
    std::uint32_t k = 0;
    double alpha = 1.05;
    double lambda = 1.1;
    std::string out;
    std::string report;
};

struct MetricsArgs {
    std::string graph;
    std::optional<std::uint64_t> vertices;
    std::string assignment;
    std::uint32_t k = 0;
    double alpha = 1.05;
    std::string clusters;
};

struct SweepArgs {
    std::vector<double> exponents;
    std::uint64_t vertices = 100000;
    std::uint32_t k = 128;
    std::vector<std::uint64_t> seeds;
    std::uint64_t seed_count = 0;
    std::vector<std::string> algos{"2ps", "hdrf", "dbh"};
    double alpha = 1.05;
    double lambda = 1.1;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out)
{
    const GeneratorConfig cfg{a.vertices, a.exponent, a.seed};
    const EdgeStream stream = generate_power_law(cfg, a.out);
    out << "wrote " << stream.edge_count() << " edges over " << a.vertices << " vertices to " << a.out << '\n';
    return kOk;
}

int cmd_cluster(const ClusterArgs& a, std::ostream& out)
{
    if (a.k < 2) {
        throw ConfigError("k must be >= 2");
    }
    const EdgeStream stream = EdgeStream::open(a.graph, a.vertices);
    const DegreeTable degrees = compute_degrees(stream);
    const ClusteringState state = streaming_clustering(stream, degrees, a.k);
    write_cluster_map(a.out, state.v2c);
    const ModularityResult q = modularity(stream, state.v2c, degrees);
    out << "clusters: " << state.non_empty_clusters() << '\n';
    out << "modularity: " << q.q << (q.degenerate ? " (degenerate: no edges)" : "") << '\n';
    return kOk;
}

int cmd_partition(const PartitionArgs& a, std::ostream& out)
{
    const Algorithm algo = parse_algorithm(a.algo);
    const TwoPhaseConfig config{a.k, a.alpha, HdrfParams{a.lambda, 1.0}};
    config.validate();
    const EdgeStream stream = EdgeStream::open(a.graph, a.vertices);

    AssignmentFileWriter writer;
    RunReport report;
    switch (algo) {
    case Algorithm::two_phase:
        report = run_2ps(stream, config, writer).report;
        break;
    case Algorithm::hdrf:
        report = run_hdrf(stream, a.k, a.alpha, config.hdrf, writer);
        break;
    case Algorithm::dbh:
        report = run_dbh(stream, a.k, a.alpha, writer);
        break;
    }
    writer.finish(a.out, stream.edge_count());
    if (!a.report.empty()) {
        report.write_json(a.report);
    }
    out << report.to_text();
    return kOk;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out)
{
    const EdgeStream stream = EdgeStream::open(a.graph, a.vertices);
    std::optional<std::vector<cid_t>> v2c;
    if (!a.clusters.empty()) {
        v2c = read_cluster_map(a.clusters);
    }
    std::optional<std::span<const cid_t>> view;
    if (v2c) {
        view = std::span<const cid_t>(*v2c);
    }
    const RunReport report = evaluate_assignment(stream, a.assignment, a.k, a.alpha, view);
    out << report.to_text();
    return kOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out)
{
    ExperimentSpec spec;
    spec.exponents = a.exponents;
    spec.n_vertices = a.vertices;
    spec.k = a.k;
    spec.seeds = a.seeds;
    for (std::uint64_t s = 1; s <= a.seed_count; ++s) {
        spec.seeds.push_back(s);
    }
    for (const std::string& name : a.algos) {
        spec.algorithms.push_back(parse_algorithm(name));
    }
    spec.alpha = a.alpha;
    spec.hdrf.lambda = a.lambda;
    spec.validate();

    const std::vector<SweepRow> rows = run_sweep(spec);
    if (a.out.empty()) {
        write_sweep_table(out, rows);
    } else {
        std::ofstream table(a.out);
        if (!table) {
            throw IoError("cannot create " + a.out);
        }
        write_sweep_table(table, rows);
    }
    write_sweep_summary(out, summarize(rows));
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"tps: two-phase streaming edge partitioning"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a random power-law graph as a binary edge list");
    generate->add_option("--vertices", gen.vertices, "Number of vertices")->required();
    generate->add_option("--exponent", gen.exponent, "Power-law degree exponent (> 1)")->required();
    generate->add_option("--seed", gen.seed, "RNG seed")->required();
    generate->add_option("--out", gen.out, "Output edge list")->required();

    ClusterArgs cl;
    auto* cluster = app.add_subcommand("cluster", "Run the streaming clustering phase and dump v2c");
    cluster->add_option("--graph", cl.graph, "Binary edge list")->required();
    cluster->add_option("--vertices", cl.vertices, "Vertex count (default: max id + 1)");
    cluster->add_option("--k", cl.k, "Number of partitions")->required();
    cluster->add_option("--out", cl.out, "Output cluster map (u32 per vertex)")->required();

    PartitionArgs pa;
    auto* partition = app.add_subcommand("partition", "Partition the edges of a graph");
    partition->add_option("--algo", pa.algo, "2ps | hdrf | dbh")
        ->check(CLI::IsMember({"2ps", "hdrf", "dbh"}))
        ->capture_default_str();
    partition->add_option("--graph", pa.graph, "Binary edge list")->required();
    partition->add_option("--vertices", pa.vertices, "Vertex count (default: max id + 1)");
    partition->add_option("--k", pa.k, "Number of partitions")->required();
    partition->add_option("--alpha", pa.alpha, "Balance factor (>= 1)")->capture_default_str();
    partition->add_option("--lambda", pa.lambda, "HDRF balance weight")->capture_default_str();
    partition->add_option("--out", pa.out, "Output assignment (u32 per edge)")->required();
    partition->add_option("--report", pa.report, "Write the run report as JSON");

    MetricsArgs me;
    auto* metrics = app.add_subcommand("metrics", "Evaluate an existing assignment");
    metrics->add_option("--graph", me.graph, "Binary edge list")->required();
    metrics->add_option("--vertices", me.vertices, "Vertex count (default: max id + 1)");
    metrics->add_option("--assignment", me.assignment, "Assignment file")->required();
    metrics->add_option("--k", me.k, "Number of partitions")->required();
    metrics->add_option("--alpha", me.alpha, "Balance factor used for the violation flag")->capture_default_str();
    metrics->add_option("--clusters", me.clusters, "Cluster map; adds modularity to the output");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Synthetic power-law sweep over exponents, seeds and algorithms");
    sweep->add_option("--exponents", sw.exponents, "Power-law exponents")->required()->delimiter(',');
    sweep->add_option("--vertices", sw.vertices, "Vertices per graph")->capture_default_str();
    sweep->add_option("--k", sw.k, "Number of partitions")->capture_default_str();
    sweep->add_option("--seeds", sw.seeds, "Explicit seeds")->delimiter(',');
    sweep->add_option("--seed-count", sw.seed_count, "Use seeds 1..N (repetitions per exponent)");
    sweep->add_option("--algos", sw.algos, "Algorithms")->delimiter(',')->capture_default_str();
    sweep->add_option("--alpha", sw.alpha, "Balance factor")->capture_default_str();
    sweep->add_option("--lambda", sw.lambda, "HDRF balance weight")->capture_default_str();
    sweep->add_option("--out", sw.out, "Write the TSV table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*generate) {
            return cmd_generate(gen, out);
        }
        if (*cluster) {
            return cmd_cluster(cl, out);
        }
        if (*partition) {
            return cmd_partition(pa, out);
        }
        if (*metrics) {
            return cmd_metrics(me, out);
        }
        if (*sweep) {
            return cmd_sweep(sw, out);
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace tps::cli
