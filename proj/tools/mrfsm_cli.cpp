// mrfsm command-line front end.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "mrfsm/datagen.hpp"
#include "mrfsm/driver.hpp"
#include "mrfsm/oracle.hpp"
#include "mrfsm/partitioner.hpp"
#include "mrfsm/result_io.hpp"
#include "mrfsm/serialize.hpp"

namespace fs = std::filesystem;
using namespace mrfsm;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kMismatch = 3, kCapped = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SupportFlags {
    std::string percent;
    std::optional<std::uint32_t> absolute;

    void add(CLI::App* cmd) {
        auto* p = cmd->add_option("--minsup", percent, "minimum support in percent of graphs, e.g. 10 or 10%");
        auto* a = cmd->add_option("--minsup-abs", absolute, "minimum support as a graph count");
        p->excludes(a);
        a->excludes(p);
    }

    // Fills exactly one of the two JobConfig support fields.
    void apply(JobConfig& c) const {
        if (percent.empty() == !absolute.has_value())
            throw UsageError("exactly one of --minsup and --minsup-abs is required");
        if (absolute) {
            c.minsup_absolute = *absolute;
            return;
        }
        std::string s = percent;
        if (!s.empty() && s.back() == '%') s.pop_back();
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw UsageError("--minsup expects a percentage, got '" + percent + "'");
        }
        if (!(v > 0 && v <= 100)) throw UsageError("--minsup must be in (0, 100]");
        c.minsup_fraction = v / 100.0;
    }
};

void write_iteration_counters(const fs::path& file, const std::vector<IterationCounters>& its) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (const auto& it : its)
        for (const auto& [name, value] : it.as_counters()) out << it.pattern_size << '\t' << name << '\t' << value << '\n';
}

void write_outputs(const fs::path& dir, const DriveResult& r) {
    fs::create_directories(dir);
    write_frequent(dir / "frequent.txt", r.frequent);
    write_iteration_counters(dir / "counters.txt", r.iterations);
    write_timing(dir / "timing.txt", r.timings);
}

void print_summary(const DriveResult& r) {
    std::cout << "threshold " << r.threshold << ", " << r.frequent.size() << " frequent patterns, "
              << r.iterations.size() << " iterations\n";
}

int run_mine(const std::string& input, const SupportFlags& sup, JobConfig cfg, const fs::path& out) {
    sup.apply(cfg);
    if (cfg.partitions == 0 || cfg.reducers == 0 || cfg.workers == 0)
        throw UsageError("--partitions, --reducers and --workers must be positive");
    cfg.staging_root = out / "staging";
    const auto data = read_dataset_file(input);
    try {
        const auto r = drive(data, cfg);
        write_outputs(out, r);
        print_summary(r);
        return kOk;
    } catch (const IterationCapReached& e) {
        write_outputs(out, e.partial());
        std::cerr << "mrfsm: " << e.what() << "; partial result written\n";
        return kCapped;
    }
}

int run_mine_seq(const std::string& input, const SupportFlags& sup, const fs::path& out) {
    JobConfig cfg;
    sup.apply(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = read_dataset_file(input);
    DriveResult r;
    r.threshold = resolve_threshold(cfg, data.size());
    r.frequent = mine_sequential(data, r.threshold);
    std::map<std::uint32_t, std::uint64_t> by_size;
    for (const auto& p : r.frequent) ++by_size[static_cast<std::uint32_t>(code_string_size(p.code))];
    for (const auto& [size, n] : by_size) {
        IterationCounters ic;
        ic.pattern_size = size;
        ic.frequent_patterns = n;
        r.iterations.push_back(ic);
    }
    r.timings.push_back({"total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
    write_outputs(out, r);
    print_summary(r);
    return kOk;
}

fs::path frequent_file(const fs::path& p) { return fs::is_directory(p) ? p / "frequent.txt" : p; }

int run_verify(const fs::path& a, const fs::path& b) {
    const auto fa = read_frequent(frequent_file(a));
    const auto fb = read_frequent(frequent_file(b));
    std::map<std::string, std::uint64_t> ma, mb;
    for (const auto& p : fa) ma[p.code] = p.support;
    for (const auto& p : fb) mb[p.code] = p.support;
    std::size_t diffs = 0;
    auto report = [&](const std::string& line) {
        if (++diffs <= 10) std::cout << line << '\n';
    };
    for (const auto& [code, s] : ma) {
        auto it = mb.find(code);
        if (it == mb.end())
            report("only in a: " + code + "\t" + std::to_string(s));
        else if (it->second != s)
            report("support differs: " + code + "\t" + std::to_string(s) + " vs " + std::to_string(it->second));
    }
    for (const auto& [code, s] : mb)
        if (!ma.count(code)) report("only in b: " + code + "\t" + std::to_string(s));
    if (diffs) {
        std::cout << diffs << " differences\n";
        return kMismatch;
    }
    std::cout << "identical: " << ma.size() << " patterns\n";
    return kOk;
}

int run_partition(const std::string& input, const SupportFlags& sup, std::uint32_t k, const std::string& scheme,
                  const fs::path& out) {
    JobConfig cfg;
    sup.apply(cfg);
    const auto data = read_dataset_file(input);
    PartitionPlan plan{k, parse_scheme(scheme), resolve_threshold(cfg, data.size())};
    const auto parts = make_partitions(filter_infrequent_edges(data, plan.threshold), plan);
    write_partitions(out, parts, plan);
    const auto m = manifest_for(parts, plan);
    for (std::uint32_t p = 0; p < m.k; ++p)
        std::cout << "partition " << p << "\t" << m.graph_counts[p] << " graphs\t" << m.edge_counts[p] << " edges\n";
    return kOk;
}

int run_stats(const std::string& input, const SupportFlags& sup) {
    const auto data = read_dataset_file(input);
    std::size_t vertices = 0;
    for (const auto& g : data.graphs()) vertices += g.vertex_count();
    const double n = data.empty() ? 1.0 : static_cast<double>(data.size());
    std::cout << "graphs\t" << data.size() << "\nvertices\t" << vertices << "\nedges\t" << data.edge_total()
              << "\navg_edges\t" << static_cast<double>(data.edge_total()) / n << "\nlabels\t" << data.labels().size()
              << '\n';
    const auto census = edge_support_census(data);
    std::optional<std::uint32_t> tau;
    if (!sup.percent.empty() || sup.absolute) {
        JobConfig cfg;
        sup.apply(cfg);
        tau = resolve_threshold(cfg, data.size());
        std::cout << "threshold\t" << *tau << '\n';
    }
    std::size_t frequent = 0;
    for (const auto& [t, s] : census) frequent += !tau || s >= *tau;
    std::cout << "edge_types\t" << census.size() << "\nfrequent_edge_types\t" << frequent << '\n';
    for (const auto& [t, s] : census) std::cout << "edge\t" << data.edge_type_name(t) << '\t' << s << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequent subgraph mining over partitioned graph transactions"};
    app.require_subcommand(1);

    std::string input;
    fs::path out;
    SupportFlags sup;
    JobConfig cfg;
    std::string scheme = "count";

    auto* mine = app.add_subcommand("mine", "partitioned iterative map-reduce miner");
    mine->add_option("--input", input, "dataset file")->required();
    sup.add(mine);
    mine->add_option("--partitions", cfg.partitions, "number of partitions")->default_val(1);
    mine->add_option("--reducers", cfg.reducers, "reduce groups per iteration")->default_val(1);
    mine->add_option("--workers", cfg.workers, "worker threads")->default_val(1);
    mine->add_option("--scheme", scheme, "partitioning scheme")->check(CLI::IsMember({"count", "edges"}));
    mine->add_flag("--bundle-statics", cfg.bundle_statics, "ship partition statics inside every value");
    mine->add_flag("--compress", cfg.compress, "zlib-compress staged files");
    mine->add_option("--max-size", cfg.max_pattern_size, "largest pattern size to mine (0 = no cap)");
    mine->add_option("--split-records", cfg.split_records, "input records per map task")->default_val(32);
    mine->add_option("--out", out, "output directory")->required();

    auto* seq = app.add_subcommand("mine-seq", "serial reference miner");
    seq->add_option("--input", input, "dataset file")->required();
    sup.add(seq);
    seq->add_option("--out", out, "output directory")->required();

    fs::path va, vb;
    auto* verify = app.add_subcommand("verify", "compare two result directories");
    verify->add_option("--a,a", va, "first result directory or frequent.txt")->required();
    verify->add_option("--b,b", vb, "second result directory or frequent.txt")->required();

    std::uint32_t k = 1;
    auto* part = app.add_subcommand("partition", "filter infrequent edges and write partition files");
    part->add_option("--input", input, "dataset file")->required();
    sup.add(part);
    part->add_option("--partitions", k, "number of partitions")->default_val(1);
    part->add_option("--scheme", scheme, "partitioning scheme")->check(CLI::IsMember({"count", "edges"}));
    part->add_option("--out", out, "output directory")->required();

    GeneratorParams gp;
    double long_edges = 0;
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    gen->add_option("--graphs", gp.graphs, "number of graphs")->default_val(100);
    gen->add_option("--avg-edges", gp.avg_edges, "mean edges per graph")->default_val(25);
    gen->add_option("--long-edges", long_edges, "bimodal mix: second half's mean edge count");
    gen->add_option("--vertex-labels", gp.vertex_labels, "distinct vertex labels")->default_val(4);
    gen->add_option("--edge-labels", gp.edge_labels, "distinct edge labels")->default_val(2);
    gen->add_option("--density", gp.density, "edge density")->default_val(0.5);
    gen->add_option("--vertices", gp.vertices, "fixed vertex count per graph");
    gen->add_option("--seed", gp.seed, "random seed")->default_val(1);
    gen->add_option("--out", out, "output file (default stdout)");

    auto* stats = app.add_subcommand("stats", "dataset census");
    stats->add_option("--input", input, "dataset file")->required();
    sup.add(stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        cfg.scheme = parse_scheme(scheme);
        if (*mine) return run_mine(input, sup, cfg, out);
        if (*seq) return run_mine_seq(input, sup, out);
        if (*verify) return run_verify(va, vb);
        if (*part) return run_partition(input, sup, k, scheme, out);
        if (*stats) return run_stats(input, sup);
        if (*gen) {
            const auto d = long_edges > 0 ? generate_bimodal(gp.graphs, gp.avg_edges, long_edges, gp) : generate(gp);
            if (out.empty())
                write_dataset(std::cout, d);
            else
                write_dataset_file(out.string(), d);
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "mrfsm: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "mrfsm: " << input << ": " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "mrfsm: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
