// Workbench for the line-leaf tree: generators, builds, replay and experiments.

#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>

#include <CLI11.hpp>

#include "llt/workbench.hpp"

using namespace llt;

namespace {

// Writes to --out when given, otherwise stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw Error(ErrorCode::Io, path + ": cannot open for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<Element> read_members(const std::string& path, const UniverseTree& u) {
    std::vector<Element> members;
    if (path.empty()) {
        members.resize(u.size());
        std::iota(members.begin(), members.end(), 0);
        return members;
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, path + ": cannot open");
    long long id;
    while (in >> id) {
        if (id < 0 || static_cast<std::size_t>(id) >= u.size())
            throw Error(ErrorCode::InvalidElement, path + ": element " + std::to_string(id));
        members.push_back(static_cast<Element>(id));
    }
    members.push_back(u.root());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

void print_metrics(std::ostream& out, const Metrics& m) {
    out << "n=" << m.shape.n << " w=" << m.shape.w << " delta=" << m.shape.delta << " diameter=" << m.shape.diameter
        << " rounds=" << m.rounds << " h=" << m.h << " h_members=" << m.h_members
        << " bound=" << height_bound(m.shape) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line-leaf tree workbench"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out_path;
    std::vector<std::size_t> sizes;
    std::size_t samples = 100;
    bool double_count = true;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a universe file");
    std::string gen_kind;
    std::size_t gen_n = 16;
    unsigned gen_k = 3;
    gen->add_option("kind", gen_kind, "increasing | tight")->required()->check(CLI::IsMember({"increasing", "tight"}));
    gen->add_option("-n,--size", gen_n, "Node count for increasing trees")->check(CLI::PositiveNumber);
    gen->add_option("-k", gen_k, "Iterations for the tight family")->check(CLI::Range(1u, 20u));
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_path);

    // build
    auto* build = app.add_subcommand("build", "Build statically and print metrics");
    std::string universe_path, members_path;
    bool show_signature = false;
    build->add_option("universe", universe_path)->required()->check(CLI::ExistingFile);
    build->add_option("--members", members_path, "File of member ids (default: every element)");
    build->add_flag("--signature", show_signature, "Also print the canonical signature");

    // trace
    auto* trace = app.add_subcommand("trace", "Dump the contraction events of a static build");
    trace->add_option("universe", universe_path)->required()->check(CLI::ExistingFile);
    trace->add_option("--members", members_path);
    trace->add_option("--out", out_path);

    // verify
    auto* verify = app.add_subcommand("verify", "Differential verification against the rebuild oracle");
    VerifyConfig vc;
    std::string ops_path;
    verify->add_option("--seed", vc.seed);
    verify->add_option("--traces", vc.traces)->check(CLI::NonNegativeNumber);
    verify->add_option("--max-universe", vc.max_universe)->check(CLI::Range(2, 1 << 20));
    verify->add_option("--ops-per-trace", vc.ops);
    verify->add_option("--universe", universe_path, "Replay --ops on this universe instead")->check(CLI::ExistingFile);
    verify->add_option("--ops", ops_path, "Op-trace file (I/D/Q lines)")->check(CLI::ExistingFile);

    // experiments and bench share the sampling flags
    auto add_sampling = [&](CLI::App* c, std::vector<std::size_t> default_sizes) {
        sizes = std::move(default_sizes);
        c->add_option("--sizes", sizes, "Comma-separated sizes")->delimiter(',');
        c->add_option("--samples", samples)->check(CLI::PositiveNumber);
        c->add_option("--seed", seed);
        c->add_option("--out", out_path);
    };
    auto* exp1 = app.add_subcommand("experiment1", "Random increasing trees: LLT height against OPT");
    add_sampling(exp1, {16, 32, 64, 128, 256, 512, 1024});
    exp1->add_flag("--double-count,!--single-count", double_count, "Count a dynamic edge query as two comparisons");

    auto* exp2 = app.add_subcommand("experiment2", "Member sets sampled from a fixed universe");
    std::string fs_root;
    add_sampling(exp2, {100, 1000, 10000});
    exp2->add_flag("--double-count,!--single-count", double_count);
    exp2->add_option("--universe", universe_path)->check(CLI::ExistingFile);
    exp2->add_option("--fs", fs_root, "Ingest this directory as the universe")->check(CLI::ExistingDirectory);

    auto* bench = app.add_subcommand("bench", "Operation counters and wall times");
    add_sampling(bench, {1024, 4096, 16384});

    auto* ingest = app.add_subcommand("ingest-fs", "Turn a directory tree into a universe");
    std::string paths_out;
    ingest->add_option("dir", fs_root)->required()->check(CLI::ExistingDirectory);
    ingest->add_option("--out", out_path, "Write the universe file here");
    ingest->add_option("--paths", paths_out, "Write one path per element id here");

    // Sampling defaults differ per subcommand; reset before parsing.
    sizes.clear();
    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Output out(out_path);
            if (gen_kind == "increasing") {
                gen_increasing_tree(gen_n, seed).write(out.stream());
            } else {
                const TightFamily tf = gen_tight_family(gen_k);
                tf.universe.write(out.stream());
                std::cerr << "tight k=" << gen_k << " nodes=" << tf.universe.size()
                          << " formula=" << tight_family_size(gen_k) << '\n';
            }
        } else if (build->parsed()) {
            const UniverseTree u = UniverseTree::load(universe_path);
            const auto members = read_members(members_path, u);
            const LineLeafTree t = LineLeafTree::build(HasseDiagram(u, members));
            print_metrics(std::cout, t.metrics());
            std::cout << "build_ops=" << t.build_ops() << '\n';
            if (show_signature) std::cout << signature(t);
        } else if (trace->parsed()) {
            const UniverseTree u = UniverseTree::load(universe_path);
            const auto members = read_members(members_path, u);
            std::vector<ContractionEvent> events;
            LineLeafTree::build(HasseDiagram(u, members), &events);
            Output out(out_path);
            for (const auto& e : events) out.stream() << format_event(e) << '\n';
        } else if (verify->parsed()) {
            VerifyReport report;
            if (!ops_path.empty() || !universe_path.empty()) {
                if (ops_path.empty() || universe_path.empty())
                    throw Error(ErrorCode::Config, "--universe and --ops go together");
                const UniverseTree u = UniverseTree::load(universe_path);
                std::ifstream in(ops_path);
                report = replay_trace(u, read_trace(in));
            } else {
                report = run_verify(vc);
            }
            std::cout << report.summary();
            return report.ok() ? 0 : 1;
        } else if (exp1->parsed() || exp2->parsed() || bench->parsed()) {
            ExperimentConfig c;
            c.sizes = sizes;
            c.samples = samples;
            c.seed = seed;
            c.double_count = double_count;
            if (c.sizes.empty()) {
                c.sizes = exp1->parsed()   ? std::vector<std::size_t>{16, 32, 64, 128, 256, 512, 1024}
                          : exp2->parsed() ? std::vector<std::size_t>{100, 1000, 10000}
                                           : std::vector<std::size_t>{1024, 4096, 16384};
            }
            Output out(out_path);
            if (exp1->parsed()) {
                write_csv(out.stream(), run_experiment1(c));
            } else if (exp2->parsed()) {
                if (universe_path.empty() == fs_root.empty())
                    throw Error(ErrorCode::Config, "experiment2 needs exactly one of --universe or --fs");
                if (!fs_root.empty()) {
                    const FsUniverse fs = ingest_filesystem(fs_root);
                    std::cerr << format_stats(fs.stats) << '\n';
                    write_csv(out.stream(), run_experiment2(c, fs.universe));
                } else {
                    write_csv(out.stream(), run_experiment2(c, UniverseTree::load(universe_path)));
                }
            } else {
                write_bench_csv(out.stream(), run_bench(c));
            }
        } else if (ingest->parsed()) {
            const FsUniverse fs = ingest_filesystem(fs_root);
            std::cout << format_stats(fs.stats) << '\n';
            if (!out_path.empty()) {
                Output out(out_path);
                fs.universe.write(out.stream());
            }
            if (!paths_out.empty()) {
                Output out(paths_out);
                for (const auto& p : fs.paths) out.stream() << p << '\n';
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
