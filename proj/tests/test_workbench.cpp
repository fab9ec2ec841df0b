#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "support.hpp"

using namespace llt;
using namespace llt::testing;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("llt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    void touch(const std::string& rel) const { std::ofstream(path / rel) << "x"; }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("increasing tree generator") {
    CHECK(gen_increasing_tree(1, 5).size() == 1);
    const UniverseTree two = gen_increasing_tree(2, 5);
    CHECK(two.parent(1) == 0);
    const UniverseTree a = gen_increasing_tree(100, 77), b = gen_increasing_tree(100, 77);
    for (Element i = 1; i < 100; ++i) {
        CHECK(a.parent(i) == b.parent(i));
        CHECK(a.parent(i) < i);
    }
    CHECK_THROWS_AS(gen_increasing_tree(0, 1), Error);
}

TEST_CASE("node depth in random recursive trees follows the harmonic sum") {
    // Node i sits at expected depth H_i.
    const std::size_t n = 64;
    double total = 0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) total += gen_increasing_tree(n, derive_seed(3, s)).depth(n - 1);
    double harmonic = 0;
    for (std::size_t k = 1; k < n; ++k) harmonic += 1.0 / double(k);
    CHECK(std::abs(total / samples - harmonic) < 0.1 * harmonic);
}

TEST_CASE("tight family sizes") {
    CHECK(tight_family_size(1) == 2);
    CHECK(tight_family_size(2) == 8);
    CHECK(tight_family_size(3) == 24);
    CHECK(tight_family_size(6) == 384);
    for (unsigned k = 1; k <= 7; ++k) {
        const TightFamily tf = gen_tight_family(k);
        CHECK(tf.universe.size() == tight_family_size(k));
        REQUIRE(tf.added.size() == k);
        for (unsigned j = 2; j <= k; ++j) {
            // j·2^(j-2) free nodes each get two children.
            CHECK(tf.free_before[j - 1] == j * (std::size_t{1} << (j - 2)));
            CHECK(tf.vertical[j - 1] == j * (std::size_t{1} << (j - 1)));
            CHECK(tf.added[j - 1] == (j + 1) * (std::size_t{1} << (j - 1)));
        }
    }
    CHECK_THROWS_AS(gen_tight_family(0), Error);
}

TEST_CASE("tight family separates the line-leaf tree from the optimum") {
    double last = 0;
    for (unsigned k = 2; k <= 5; ++k) {
        const TightFamily tf = gen_tight_family(k);
        const HasseDiagram h(tf.universe, all_elements(tf.universe));
        const PlainTree plain = plain_tree(h);
        const double opt = plain.n <= kOptBudget ? opt_height(plain).height : opt_lower_bound(plain);
        const double r = LineLeafTree::build(h).member_height() / opt;
        CHECK(r > last);
        last = r;
    }
}

TEST_CASE("filesystem ingestion") {
    TempDir d;
    SUBCASE("empty directory") {
        const FsUniverse u = ingest_filesystem(d.path.string());
        CHECK(u.universe.size() == 1);
        CHECK(u.stats.nodes == 1);
        CHECK(u.stats.height == 0);
    }
    SUBCASE("two folders, three files") {
        fs::create_directories(d.path / "a");
        fs::create_directories(d.path / "b");
        d.touch("a/one");
        d.touch("a/two");
        d.touch("top");
        fs::create_symlink(d.path / "a", d.path / "link");
        const FsUniverse u = ingest_filesystem(d.path.string());
        CHECK(u.stats.nodes == 6);
        CHECK(u.stats.leaves == 4);
        CHECK(u.stats.height == 2);
        CHECK(u.stats.max_children == 3);
        CHECK(u.stats.symlinks_skipped == 1);
        CHECK(u.paths.size() == 6);
        CHECK(format_stats(u.stats) == "nodes=6 leaves=4 height=2 max_children=3 symlinks_skipped=1");
    }
    CHECK_THROWS_AS(ingest_filesystem((d.path / "missing").string()), Error);
}

TEST_CASE("op trace format") {
    std::istringstream in("# comment\nI 3\n\nD 3\nQ 7\n");
    const auto ops = read_trace(in);
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].kind == 'I');
    CHECK(ops[0].id == 3);
    CHECK(ops[2].kind == 'Q');
    std::ostringstream out;
    write_trace(out, ops);
    std::istringstream again(out.str());
    const auto back = read_trace(again);
    REQUIRE(back.size() == 3);
    CHECK(back[1].kind == 'D');

    std::istringstream bad("X 3\n");
    CHECK_THROWS_AS(read_trace(bad), Error);
    std::istringstream bad_id("I seven\n");
    CHECK_THROWS_AS(read_trace(bad_id), Error);
}

TEST_CASE("verify replay") {
    const UniverseTree u = gen_increasing_tree(20, 1);
    CHECK(replay_trace(u, {}).ok());
    const VerifyReport r = replay_trace(u, random_trace(u, 100, 9));
    CHECK(r.ok());
    CHECK(r.ops == 100);
    CHECK(r.summary().find("verify: PASS") != std::string::npos);

    // Deleting a non-member is reported, not thrown.
    const VerifyReport bad = replay_trace(u, {{'D', 5}});
    CHECK_FALSE(bad.ok());
    CHECK(bad.summary().find("verify: FAIL") != std::string::npos);
}

TEST_CASE("verify workload") {
    VerifyConfig c;
    c.traces = 40;
    const VerifyReport r = run_verify(c);
    CHECK(r.ok());
    CHECK(r.traces == 40);
    c.max_universe = 1;
    CHECK_THROWS_AS(run_verify(c), Error);
}

TEST_CASE("experiment CSV") {
    ExperimentConfig c;
    c.sizes = {8, 40};
    c.samples = 3;
    const auto rows = run_experiment1(c);
    REQUIRE(rows.size() == 6);
    std::ostringstream out;
    write_csv(out, rows);
    const std::string csv = out.str();
    CHECK(csv.rfind("n,sample,h_llt,opt,ratio\n", 0) == 0);
    CHECK(csv.find("lb,") != std::string::npos);  // n = 40 is past the exact budget
    CHECK_FALSE(rows[0].opt_is_lb);
    CHECK(rows[5].opt_is_lb);

    // Same seed, same rows; the ×2 convention doubles the LLT side only.
    const auto again = run_experiment1(c);
    c.double_count = false;
    const auto single = run_experiment1(c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].h_llt == again[i].h_llt);
        CHECK(rows[i].h_llt == 2 * single[i].h_llt);
        CHECK(rows[i].opt == single[i].opt);
    }
}

TEST_CASE("experiment 2 samples member sets") {
    const UniverseTree u = gen_increasing_tree(300, 4);
    ExperimentConfig c;
    c.sizes = {10, 100, 1000};
    c.samples = 2;
    const auto rows = run_experiment2(c, u);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n == 10);
    CHECK(rows[5].n == 300);  // capped at the universe size
}

TEST_CASE("experiment config validation") {
    ExperimentConfig c;
    CHECK_THROWS_AS(validate(c), Error);
    c.sizes = {1};
    CHECK_THROWS_AS(validate(c), Error);
    c.sizes = {4};
    c.samples = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c.samples = 1;
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("bench CSV") {
    ExperimentConfig c;
    c.sizes = {64};
    c.samples = 2;
    const auto rows = run_bench(c);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].build_ops > 0);
    std::ostringstream out;
    write_bench_csv(out, rows);
    CHECK(out.str().rfind("n,sample,build_ops,build_ms,insert_us,search_us,delete_us,height,rounds\n", 0) == 0);
}
