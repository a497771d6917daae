#include "tps/sweep.hpp"

#include <unistd.h>

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "tps/assignment.hpp"
#include "tps/baselines.hpp"
#include "tps/generator.hpp"
#include "tps/partitioning.hpp"

namespace tps {

std::string to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::two_phase:
        return "2ps";
    case Algorithm::hdrf:
        return "hdrf";
    case Algorithm::dbh:
        return "dbh";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name)
{
    if (name == "2ps") {
        return Algorithm::two_phase;
    }
    if (name == "hdrf") {
        return Algorithm::hdrf;
    }
    if (name == "dbh") {
        return Algorithm::dbh;
    }
    throw ConfigError("unknown algorithm '" + name + "' (expected 2ps, hdrf or dbh)");
}

void ExperimentSpec::validate() const
{
    if (exponents.empty()) {
        throw ConfigError("sweep needs at least one exponent");
    }
    if (seeds.empty()) {
        throw ConfigError("sweep needs at least one seed");
    }
    if (algorithms.empty()) {
        throw ConfigError("sweep needs at least one algorithm");
    }
    if (k < 2) {
        throw ConfigError("sweep needs k >= 2");
    }
    for (double x : exponents) {
        GeneratorConfig{n_vertices, x, 0}.validate();
    }
    TwoPhaseConfig{k, alpha, hdrf}.validate();
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec)
{
    spec.validate();
    const std::filesystem::path dir = spec.scratch_dir.empty() ? scratch_directory() : spec.scratch_dir;
    std::vector<SweepRow> rows;

    for (double exponent : spec.exponents) {
        for (std::uint64_t seed : spec.seeds) {
            std::ostringstream name;
            name << "tps-sweep-" << ::getpid() << "-" << exponent << "-" << seed << ".bin";
            const std::filesystem::path graph = dir / name.str();

            std::optional<EdgeStream> stream;
            std::string gen_error;
            try {
                stream = generate_power_law(GeneratorConfig{spec.n_vertices, exponent, seed}, graph);
            } catch (const std::exception& ex) {
                gen_error = ex.what();
            }

            for (Algorithm algo : spec.algorithms) {
                SweepRow row;
                row.exponent = exponent;
                row.seed = seed;
                row.algorithm = algo;
                if (!stream) {
                    row.error = gen_error;
                    rows.push_back(row);
                    continue;
                }
                try {
                    NullSink sink;
                    RunReport report;
                    switch (algo) {
                    case Algorithm::two_phase:
                        report = run_2ps(*stream, TwoPhaseConfig{spec.k, spec.alpha, spec.hdrf}, sink).report;
                        break;
                    case Algorithm::hdrf:
                        report = run_hdrf(*stream, spec.k, spec.alpha, spec.hdrf, sink);
                        break;
                    case Algorithm::dbh:
                        report = run_dbh(*stream, spec.k, spec.alpha, sink);
                        break;
                    }
                    row.ok = true;
                    row.vertices = report.vertices;
                    row.edges = report.edges;
                    row.rf = report.rf;
                    row.modularity = report.modularity;
                    row.prepartitioned_ratio = report.prepartitioned_ratio;
                    row.alpha_observed = report.alpha_observed;
                    row.alpha_violated = report.alpha_violated;
                    row.seconds = report.total_seconds();
                } catch (const std::exception& ex) {
                    row.error = ex.what();
                }
                rows.push_back(row);
            }
            std::error_code ec;
            std::filesystem::remove(graph, ec);
        }
    }
    return rows;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows)
{
    struct Acc {
        SweepSummary s;
        double modularity = 0.0;
        double ratio = 0.0;
        std::size_t with_modularity = 0;
        std::size_t with_ratio = 0;
    };
    std::map<std::pair<double, int>, Acc> cells;
    std::vector<std::pair<double, int>> order;

    for (const SweepRow& row : rows) {
        const auto key = std::make_pair(row.exponent, static_cast<int>(row.algorithm));
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) {
            order.push_back(key);
            it->second.s.exponent = row.exponent;
            it->second.s.algorithm = row.algorithm;
        }
        Acc& acc = it->second;
        if (!row.ok) {
            ++acc.s.failures;
            continue;
        }
        ++acc.s.runs;
        acc.s.rf += row.rf;
        acc.s.alpha_observed += row.alpha_observed;
        if (row.modularity) {
            acc.modularity += *row.modularity;
            ++acc.with_modularity;
        }
        if (row.prepartitioned_ratio) {
            acc.ratio += *row.prepartitioned_ratio;
            ++acc.with_ratio;
        }
    }

    std::vector<SweepSummary> out;
    for (const auto& key : order) {
        Acc& acc = cells[key];
        if (acc.s.runs > 0) {
            acc.s.rf /= static_cast<double>(acc.s.runs);
            acc.s.alpha_observed /= static_cast<double>(acc.s.runs);
        }
        if (acc.with_modularity > 0) {
            acc.s.modularity = acc.modularity / static_cast<double>(acc.with_modularity);
        }
        if (acc.with_ratio > 0) {
            acc.s.prepartitioned_ratio = acc.ratio / static_cast<double>(acc.with_ratio);
        }
        out.push_back(acc.s);
    }
    return out;
}

namespace {

void optional_cell(std::ostream& out, const std::optional<double>& v)
{
    if (v) {
        out << *v;
    } else {
        out << "NA";
    }
}

}  // namespace

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "exponent\tseed\talgo\tstatus\tvertices\tedges\trf\tmodularity\tprepartitioned_ratio\t"
           "alpha_observed\talpha_violated\tseconds\terror\n";
    const auto flags = out.flags();
    out << std::setprecision(6) << std::fixed;
    for (const SweepRow& r : rows) {
        out << r.exponent << '\t' << r.seed << '\t' << to_string(r.algorithm) << '\t' << (r.ok ? "ok" : "failed")
            << '\t' << r.vertices << '\t' << r.edges << '\t' << r.rf << '\t';
        optional_cell(out, r.modularity);
        out << '\t';
        optional_cell(out, r.prepartitioned_ratio);
        out << '\t' << r.alpha_observed << '\t' << (r.alpha_violated ? 1 : 0) << '\t' << r.seconds << '\t'
            << (r.error.empty() ? "-" : r.error) << '\n';
    }
    out.flags(flags);
}

void write_sweep_summary(std::ostream& out, const std::vector<SweepSummary>& summary)
{
    const auto flags = out.flags();
    out << std::setprecision(4) << std::fixed;
    for (const SweepSummary& s : summary) {
        out << "exponent " << s.exponent << "  " << std::setw(4) << to_string(s.algorithm) << "  runs " << s.runs;
        if (s.failures > 0) {
            out << " (" << s.failures << " failed)";
        }
        out << "  rf " << s.rf;
        if (s.modularity) {
            out << "  modularity " << *s.modularity;
        }
        if (s.prepartitioned_ratio) {
            out << "  prepartitioned " << *s.prepartitioned_ratio;
        }
        out << "  alpha_observed " << s.alpha_observed << '\n';
    }
    out.flags(flags);
}

}  // namespace tps
