#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "llt/line_leaf_tree.hpp"
#include "llt/oracle.hpp"

namespace llt {

// Independent stream per (seed, a, b) so samples never share randomness.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Random recursive tree: node i ≥ 1 hangs below a uniform j < i.
UniverseTree gen_increasing_tree(std::size_t n, std::uint64_t seed);

struct TightFamily {
    UniverseTree universe;
    std::vector<std::size_t> added;        // nodes added in iteration j, index j-1
    std::vector<std::size_t> free_before;  // free nodes when iteration j starts (0 for j = 1)
    std::vector<std::size_t> vertical;     // children hung below free nodes in iteration j
};
std::size_t tight_family_size(unsigned k);
TightFamily gen_tight_family(unsigned k);

struct FsStats {
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    std::size_t height = 0;
    std::size_t max_children = 0;
    std::size_t symlinks_skipped = 0;
};
std::string format_stats(const FsStats& s);

struct FsUniverse {
    UniverseTree universe;
    std::vector<std::string> paths;  // by element id
    FsStats stats;
};
FsUniverse ingest_filesystem(const std::string& root);

// Op traces: `I <id>`, `D <id>`, `Q <id>` per line; blank and # lines skipped.
struct TraceOp {
    char kind;
    Element id;
};
std::vector<TraceOp> read_trace(std::istream& in);
void write_trace(std::ostream& out, const std::vector<TraceOp>& ops);

struct VerifyConfig {
    std::uint64_t seed = 1;
    std::size_t traces = 500;
    std::size_t max_universe = 24;
    std::size_t ops = 40;
};

struct VerifyReport {
    std::size_t traces = 0;
    std::size_t ops = 0;
    std::size_t inserts = 0;
    std::size_t deletes = 0;
    std::size_t queries = 0;
    std::uint64_t rebuild_failures = 0;
    std::uint64_t lemma3_failures = 0;
    std::uint64_t audit_failures = 0;  // structural audit other than round profiles
    std::uint64_t lemma2_failures = 0;
    std::uint64_t search_failures = 0;
    std::uint64_t edge_checks = 0;
    std::uint64_t edge_failures = 0;
    std::uint64_t insert_cost_failures = 0;
    std::uint64_t delete_cost_failures = 0;
    std::uint64_t errors = 0;  // exceptions raised by an operation
    double worst_insert_use = 0;  // max observed cost / bound
    double worst_delete_use = 0;
    CaseCoverage coverage;
    std::vector<std::string> messages;  // first few violations, for humans

    bool ok() const;
    std::string summary() const;
};

// Replays ops on one universe, checking every invariant after each op.
class TraceChecker {
public:
    TraceChecker(const UniverseTree& universe, VerifyReport& report, std::uint64_t seed = 0);
    void apply(const TraceOp& op);
    const LineLeafTree& tree() const { return tree_; }

private:
    void check_all(const std::string& where);
    void note(const std::string& msg);

    const UniverseTree& universe_;
    VerifyReport& report_;
    LineLeafTree tree_;
    std::uint64_t rng_state_;
    std::size_t step_ = 0;
};

VerifyReport replay_trace(const UniverseTree& universe, const std::vector<TraceOp>& ops);
// Random mixed traces over random increasing-tree universes.
std::vector<TraceOp> random_trace(const UniverseTree& universe, std::size_t ops, std::uint64_t seed);
VerifyReport run_verify(const VerifyConfig& config);

struct ExperimentConfig {
    std::vector<std::size_t> sizes;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    bool double_count = true;
};
void validate(const ExperimentConfig& c);

struct ExperimentRow {
    std::size_t n = 0;
    std::size_t sample = 0;
    std::uint64_t h_llt = 0;
    std::uint32_t opt = 0;
    bool opt_is_lb = false;
    double ratio = 0;
};

// One row per (size, sample) of random increasing trees with S = universe.
std::vector<ExperimentRow> run_experiment1(const ExperimentConfig& c);
// Member sets of each size sampled from a fixed universe (ν always included).
std::vector<ExperimentRow> run_experiment2(const ExperimentConfig& c, const UniverseTree& universe);
ExperimentRow measure(const HasseDiagram& h, std::size_t sample, bool double_count);
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct BenchRow {
    std::size_t n = 0;
    std::size_t sample = 0;
    std::uint64_t build_ops = 0;
    double build_ms = 0;
    double insert_us = 0;  // per op
    double search_us = 0;
    double delete_us = 0;
    std::uint32_t height = 0;
    std::uint32_t rounds = 0;
};
std::vector<BenchRow> run_bench(const ExperimentConfig& c);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace llt
