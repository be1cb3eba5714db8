#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pgf/cli.hpp"
#include "pgf/gen.hpp"

namespace fs = std::filesystem;
using pgf::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pgf_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
    return n;
}

std::map<std::string, std::string> stats_block(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    bool inside = false;
    for (std::string line; std::getline(in, line);) {
        if (line == "# stats") inside = true;
        else if (inside && line.find('=') != std::string::npos) kv[line.substr(0, line.find('='))] = line.substr(line.find('=') + 1);
    }
    return kv;
}

}  // namespace

TEST_CASE("partition k5 with verification") {
    const fs::path in = write("k5.1pl", pgf::fixture("k5").text);
    const Result r = call({"partition", in.string(), "--verify"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out, "forest ") == 1);
    CHECK(count_lines(r.out, "planar ") == 9);
    // The report goes to stderr so stdout stays a clean partition file.
    CHECK(count_lines(r.err, "check ") == 5);
    CHECK(r.err.find("FAIL") == std::string::npos);
}

TEST_CASE("malformed input exits 2") {
    const fs::path in = write("bad.1pl", "n 4\ncrossings 3\nrot 0: 3\nrot 1: 3\nrot 2: 3\nrot 3: 0 1 2\n");
    const Result r = call({"partition", in.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("crossing degree") != std::string::npos);
    CHECK(call({"partition", scratch("missing.1pl").string()}).code == 2);
    CHECK(call({"partition", write("fig1b.1pl", pgf::fixture("fig1b").text).string()}).code == 2);
    CHECK(call({"partition", scratch("fig1b.1pl").string(), "--multigraph", "--verify"}).code == 0);
}

TEST_CASE("gen then partition then verify") {
    const fs::path g = scratch("g1000.1pl");
    CHECK(call({"gen", "--n", "1000", "--cross", "0.3", "--seed", "7", "--out", g.string()}).code == 0);
    const fs::path part = scratch("g1000.part");
    const Result r = call({"partition", g.string(), "--verify", "--out", part.string()});
    CHECK(r.code == 0);
    CHECK(r.err.find("check edge_bound_ok: pass") != std::string::npos);
    const Result v = call({"verify", g.string(), part.string()});
    CHECK(v.code == 0);
    CHECK(count_lines(v.out, "check ") == 5);

    // Same seed, same file.
    const Result again = call({"gen", "--n", "1000", "--cross", "0.3", "--seed", "7"});
    std::ifstream first(g);
    CHECK(again.out == std::string(std::istreambuf_iterator<char>(first), {}));
}

TEST_CASE("tampered partition fails verification") {
    const fs::path in = write("k5.1pl", pgf::fixture("k5").text);
    const Result r = call({"partition", in.string()});
    REQUIRE(r.code == 0);
    std::string text = r.out;
    // Move the forest edge to the planar side.
    text.replace(text.find("forest "), 7, "planar ");
    const Result v = call({"verify", in.string(), write("tampered.part", text).string()});
    CHECK(v.code == 1);
    CHECK(v.out.find("check one_chord_per_crossing: FAIL") != std::string::npos);

    const Result dropped = call({"verify", in.string(), write("short.part", "forest 0 4\n").string()});
    CHECK(dropped.code == 1);
    CHECK(dropped.out.find("missing from partition") != std::string::npos);

    CHECK(call({"verify", in.string(), write("junk.part", "forest zero four\n").string()}).code == 2);
}

TEST_CASE("stats block") {
    const fs::path in = write("k5.1pl", pgf::fixture("k5").text);
    const Result r = call({"partition", in.string(), "--stats"});
    REQUIRE(r.code == 0);
    const auto kv = stats_block(r.out);
    for (const char* key : {"n", "m", "crossing_count", "forest_size", "contraction_count", "total_reattach_work",
                            "anchors", "case1a", "case1b", "case1c", "case2", "kite_edges_added",
                            "triangulation_chords", "parse_seconds", "augment_seconds", "engine_seconds"})
        CHECK_MESSAGE(kv.count(key), key);
    CHECK(kv.at("n") == "5");
    CHECK(kv.at("m") == "10");
    CHECK(kv.at("crossing_count") == "1");
    CHECK(kv.at("forest_size") == "1");
}

TEST_CASE("gadget dump") {
    const fs::path in = write("k5.1pl", pgf::fixture("k5").text);
    const fs::path dump = scratch("k5.hd.1pl");
    CHECK(call({"partition", in.string(), "--dump-hdiamond", dump.string()}).code == 0);
    std::ifstream f(dump);
    const std::string text(std::istreambuf_iterator<char>(f), {});
    CHECK(text.rfind("n 10\n", 0) == 0);
    CHECK(count_lines(text, "label ") == 5);
}

TEST_CASE("fixtures and bench") {
    const Result k5 = call({"gen", "--fixture", "k5"});
    CHECK(k5.code == 0);
    CHECK(k5.out == pgf::fixture("k5").text);
    CHECK(call({"gen", "--fixture", "nope"}).code == 2);

    const Result b = call({"bench", "--sizes", "200,4e2", "--seeds", "2", "--repeat", "2"});
    CHECK(b.code == 0);
    CHECK(b.out.rfind("n ", 0) == 0);
    CHECK(count_lines(b.out, "200 ") == 1);
    CHECK(count_lines(b.out, "400 ") == 1);
}

TEST_CASE("usage errors") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"gen"}).code == 2);
    CHECK(call({"gen", "--n", "2"}).code == 2);
    CHECK(call({"gen", "--n", "10", "--cross", "1.5"}).code == 2);
    CHECK(call({"bench", "--sizes", "abc"}).code == 2);
    CHECK(call({"bench", "--sizes", "100", "--repeat", "0"}).code == 2);
    const Result help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("partition") != std::string::npos);
}

TEST_CASE("measure_scaling") {
    pgf::cli::ScalingOptions opt;
    opt.sizes = {100, 200};
    opt.seeds = 2;
    opt.repeat = 2;
    const auto points = pgf::cli::measure_scaling(opt);
    REQUIRE(points.size() == 2);
    for (const auto& p : points) {
        CHECK(p.forest_ok);
        CHECK(p.seconds > 0);
        CHECK(p.reattach_work > 0);
        CHECK(p.crossings > 0);
    }
}
