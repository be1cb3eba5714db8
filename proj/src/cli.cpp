#include "pgf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "pgf/drawing.hpp"
#include "pgf/engine.hpp"
#include "pgf/gen.hpp"
#include "pgf/preprocess.hpp"
#include "pgf/verify.hpp"

namespace pgf::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

std::string partition_text(const OriginalGraph& g, const PGFPartition& part) {
    std::ostringstream out;
    for (const OriginalEdgeId e : part.forest) out << "forest " << g.edges[e].u << ' ' << g.edges[e].v << '\n';
    for (const OriginalEdgeId e : part.planar) out << "planar " << g.edges[e].u << ' ' << g.edges[e].v << '\n';
    return out.str();
}

struct PartitionArgs {
    std::string input, output, dump;
    bool verify = false, stats = false, multigraph = false;
};

int cmd_partition(const PartitionArgs& a, std::ostream& out, std::ostream& err) {
    auto t = Clock::now();
    DrawingRules rules;
    rules.allow_multigraph = a.multigraph;
    const Planarization p = parse_drawing(read_file(a.input), rules);
    const double parse_s = seconds_since(t);

    if (!a.dump.empty()) {
        const Preprocessed pre = preprocess(p);
        write_output(a.dump, dump_hdiamond(pre.skeleton, pre.diamond), out);
    }

    RunStats st;
    const PGFPartition part = find_pgf_partition(p, {}, &st);
    const OriginalGraph g = original_edges(p);

    std::string text = partition_text(g, part);
    int code = kOk;
    double verify_s = 0;
    if (a.verify) {
        t = Clock::now();
        const VerificationReport r = verify_partition(p, part);
        verify_s = seconds_since(t);
        err << r.to_text();
        if (!r.ok()) code = kVerificationFailed;
    }
    if (a.stats) {
        std::ostringstream s;
        s << "# stats\n"
          << "n=" << g.real_vertex_count << '\n'
          << "m=" << g.edges.size() << '\n'
          << "crossing_count=" << g.crossings.size() << '\n'
          << "forest_size=" << part.forest.size() << '\n'
          << "contraction_count=" << st.contractions << '\n'
          << "total_reattach_work=" << st.reattach_work << '\n'
          << "anchors=" << st.anchors << '\n'
          << "case1a=" << st.case1a << '\n'
          << "case1b=" << st.case1b << '\n'
          << "case1c=" << st.case1c << '\n'
          << "case2=" << st.case2 << '\n'
          << "kite_edges_added=" << st.kite_edges_added << '\n'
          << "triangulation_chords=" << st.triangulation_chords << '\n'
          << std::setprecision(6) << std::fixed << "parse_seconds=" << parse_s << '\n'
          << "augment_seconds=" << st.preprocess_seconds << '\n'
          << "engine_seconds=" << st.engine_seconds << '\n'
          << "verify_seconds=" << verify_s << '\n';
        text += s.str();
    }
    write_output(a.output, text, out);
    return code;
}

int cmd_verify(const std::string& drawing, const std::string& partition, bool multigraph, std::ostream& out,
               std::ostream& err) {
    DrawingRules rules;
    rules.allow_multigraph = multigraph;
    const Planarization p = parse_drawing(read_file(drawing), rules);
    std::vector<std::pair<Node, Node>> forest, planar;
    std::istringstream in(read_file(partition));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        long long u = -1, v = -1;
        std::string extra;
        if ((kind != "forest" && kind != "planar") || !(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
            throw UsageError(partition + ":" + std::to_string(line_no) + ": expected 'forest <u> <v>' or 'planar <u> <v>'");
        (kind == "forest" ? forest : planar).emplace_back(static_cast<Node>(u), static_cast<Node>(v));
    }
    const OriginalGraph g = original_edges(p);
    PGFPartition part;
    try {
        part = partition_from_pairs(g, forest, planar);
        const VerificationReport r = verify_partition(p, part);
        out << r.to_text();
        return r.ok() ? kOk : kVerificationFailed;
    } catch (const std::invalid_argument& e) {
        out << "check partition_edges: FAIL\nfailure: " << e.what() << '\n';
        (void)err;
        return kVerificationFailed;
    }
}

int cmd_gen(const GenConfig& cfg, const std::string& output, std::ostream& out) {
    if (cfg.n < 3) throw UsageError("--n must be at least 3");
    write_output(output, serialize(gen_one_planar(cfg)), out);
    return kOk;
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double value = 0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || value < 3 || value != std::floor(value))
            throw UsageError("bad size '" + item + "' in --sizes");
        sizes.push_back(static_cast<std::size_t>(value));
    }
    if (sizes.empty()) throw UsageError("--sizes is empty");
    return sizes;
}

struct BenchArgs {
    std::string sizes;
    ScalingOptions options;
};

int cmd_bench(BenchArgs a, std::ostream& out) {
    a.options.sizes = parse_sizes(a.sizes);
    if (a.options.seeds == 0) throw UsageError("--seeds must be positive");
    if (a.options.repeat == 0) throw UsageError("--repeat must be positive");
    const auto points = measure_scaling(a.options);
    out << std::left << std::setw(10) << "n" << std::setw(10) << "m" << std::setw(10) << "crossings" << std::setw(14)
        << "mean_sec" << std::setw(16) << "reattach_work" << std::setw(14) << "work/nlogn" << "ratio\n";
    bool all_ok = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const ScalingPoint& p = points[i];
        const double nlogn = static_cast<double>(p.n) * std::log2(static_cast<double>(p.n));
        out << std::setw(10) << p.n << std::setw(10) << static_cast<std::size_t>(p.m) << std::setw(10)
            << static_cast<std::size_t>(p.crossings) << std::setw(14) << std::setprecision(6) << std::fixed
            << p.seconds << std::setw(16) << static_cast<std::uint64_t>(p.reattach_work) << std::setw(14)
            << std::setprecision(4) << p.reattach_work / nlogn;
        if (i > 0)
            out << std::setprecision(3) << p.seconds / points[i - 1].seconds;
        else
            out << '-';
        out << '\n';
        all_ok = all_ok && p.forest_ok;
    }
    return all_ok ? kOk : kVerificationFailed;
}

}  // namespace

namespace {

// Every timed run starts from a trimmed heap, so no size inherits pages
// freed by an earlier, larger run.
void release_free_memory() {
#if defined(__GLIBC__)
    malloc_trim(0);
#endif
}

}  // namespace

std::vector<ScalingPoint> measure_scaling(const ScalingOptions& options) {
    struct Row {
        double seconds = 0;
        std::uint64_t work = 0;
        std::size_t m = 0, crossings = 0;
        bool ok = true;
    };
    const std::size_t sizes = options.sizes.size();
    std::vector<std::vector<Row>> rows(sizes, std::vector<Row>(options.seeds));
    // Rounds sweep the whole ladder so a slow spell hits every size alike.
    const std::size_t rounds = std::max<std::size_t>(1, options.repeat);
    for (std::size_t round = 0; round < rounds; ++round) {
        for (std::size_t k = 0; k < sizes; ++k) {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (std::size_t i; (i = next++) < options.seeds;) {
                    GenConfig cfg;
                    cfg.n = options.sizes[k];
                    cfg.crossing_fraction = options.cross;
                    cfg.seed = options.seed_base + i;
                    const Planarization p = gen_one_planar(cfg);
                    release_free_memory();
                    RunStats st;
                    const auto t = Clock::now();
                    const PGFPartition part = find_pgf_partition(p, {}, &st);
                    const double secs = seconds_since(t);
                    Row& row = rows[k][i];
                    row.seconds = round == 0 ? secs : std::min(row.seconds, secs);
                    row.work = st.reattach_work;
                    row.m = part.forest.size() + part.planar.size();
                    row.crossings = part.forest.size();
                    row.ok = row.ok && part.forest.size() == p.crossing_count();
                }
            };
            std::vector<std::thread> pool;
            for (unsigned j = 1; j < std::max(1u, options.jobs); ++j) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
        }
    }

    std::vector<ScalingPoint> points;
    for (std::size_t k = 0; k < sizes; ++k) {
        ScalingPoint point;
        point.n = options.sizes[k];
        for (const Row& r : rows[k]) {
            point.seconds += r.seconds;
            point.reattach_work += static_cast<double>(r.work);
            point.m += static_cast<double>(r.m);
            point.crossings += static_cast<double>(r.crossings);
            point.forest_ok = point.forest_ok && r.ok;
        }
        const double count = static_cast<double>(options.seeds);
        point.seconds /= count;
        point.reattach_work /= count;
        point.m /= count;
        point.crossings /= count;
        points.push_back(point);
    }
    return points;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PGF-partitions of 1-planar drawings", "pgf"};
    app.require_subcommand(1);

    PartitionArgs pa;
    auto* partition = app.add_subcommand("partition", "split a drawing's edges into a planar graph and a forest");
    partition->add_option("input", pa.input, "drawing (.1pl)")->required();
    partition->add_option("--out", pa.output, "write the partition here instead of stdout");
    partition->add_flag("--verify", pa.verify, "check the result; exit 1 on failure");
    partition->add_flag("--stats", pa.stats, "append a '# stats' block");
    partition->add_option("--dump-hdiamond", pa.dump, "write the gadget graph (.1pl with labels) to this file");
    partition->add_flag("--multigraph", pa.multigraph, "accept parallel edges in the drawn graph");

    std::string v_drawing, v_partition;
    bool v_multigraph = false;
    auto* verify = app.add_subcommand("verify", "check a partition file against a drawing");
    verify->add_option("drawing", v_drawing, "drawing (.1pl)")->required();
    verify->add_option("partition", v_partition, "partition file")->required();
    verify->add_flag("--multigraph", v_multigraph, "accept parallel edges in the drawn graph");

    GenConfig gc;
    std::string g_out;
    auto* gen = app.add_subcommand("gen", "generate a random 1-planar drawing");
    std::string g_fixture;
    gen->add_option("--n", gc.n, "number of vertices");
    gen->add_option("--fixture", g_fixture, "print a named built-in drawing instead");
    gen->add_option("--cross", gc.crossing_fraction, "fraction of crossable edges to cross")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gc.seed, "random seed");
    gen->add_option("--drop", gc.drop_fraction, "fraction of non-tree uncrossed edges to delete")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--out", g_out, "output file (default stdout)");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "time the pipeline over a size ladder");
    bench->add_option("--sizes", ba.sizes, "comma-separated sizes, e.g. 1e4,2e4,4e4")->required();
    bench->add_option("--seeds", ba.options.seeds, "instances per size");
    bench->add_option("--cross", ba.options.cross, "crossing fraction")->check(CLI::Range(0.0, 1.0));
    bench->add_option("--repeat", ba.options.repeat, "passes over the ladder; each instance keeps its fastest run");
    bench->add_option("--jobs", ba.options.jobs, "worker threads");
    bench->add_option("--seed-base", ba.options.seed_base, "first seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*partition) return cmd_partition(pa, out, err);
        if (*verify) return cmd_verify(v_drawing, v_partition, v_multigraph, out, err);
        if (*gen && !g_fixture.empty()) {
            write_output(g_out, fixture(g_fixture).text, out);
            return kOk;
        }
        if (*gen) {
            if (gen->count("--n") == 0) throw UsageError("gen needs --n or --fixture");
            return cmd_gen(gc, g_out, out);
        }
        if (*bench) return cmd_bench(ba, out);
    } catch (const DrawingError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"pgf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pgf::cli
