#include <algorithm>
#include <filesystem>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "llt/workbench.hpp"

namespace llt {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

UniverseTree gen_increasing_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::Config, "tree size must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<Element> parent(n, kNone);
    for (std::size_t i = 1; i < n; ++i)
        parent[i] = static_cast<Element>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
    return UniverseTree::from_parents(std::move(parent));
}

// ------------------------------------------------------------ tight family

std::size_t tight_family_size(unsigned k) {
    std::size_t n = 0;
    for (unsigned j = 1; j <= k; ++j) n += (j + 1) * (std::size_t{1} << (j - 1));
    return n;
}

TightFamily gen_tight_family(unsigned k) {
    if (k == 0) throw Error(ErrorCode::Config, "tight family needs k >= 1");
    TightFamily out;
    std::vector<std::vector<std::uint32_t>> adj(2);
    auto add_node = [&] {
        adj.emplace_back();
        return static_cast<std::uint32_t>(adj.size() - 1);
    };
    auto link = [&](std::uint32_t a, std::uint32_t b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    auto unlink = [&](std::uint32_t a, std::uint32_t b) {
        std::erase(adj[a], b);
        std::erase(adj[b], a);
    };
    // Iteration 1: the two-node horizontal line 0 - 1; node 1 stays rightmost.
    link(0, 1);
    const std::uint32_t rightmost = 1;
    std::uint32_t left_of_rightmost = 0;
    std::vector<std::uint32_t> free{0, 1};
    out.added.push_back(2);
    out.free_before.push_back(0);
    out.vertical.push_back(0);

    for (unsigned it = 2; it <= k; ++it) {
        std::vector<std::uint32_t> next;
        out.free_before.push_back(free.size());
        for (std::uint32_t f : free) {
            for (int c = 0; c < 2; ++c) {
                const std::uint32_t child = add_node();
                link(f, child);
                next.push_back(child);
            }
        }
        out.vertical.push_back(next.size());
        unlink(left_of_rightmost, rightmost);
        std::uint32_t prev = left_of_rightmost;
        const std::size_t base = std::size_t{1} << (it - 1);
        for (std::size_t i = 0; i < base; ++i) {
            const std::uint32_t h = add_node();
            link(prev, h);
            next.push_back(h);
            prev = h;
        }
        link(prev, rightmost);
        left_of_rightmost = prev;
        out.added.push_back(next.size());
        free = std::move(next);
    }

    // Breadth-first ids from the leftmost node, which becomes ν.
    std::vector<Element> id(adj.size(), kNone), parent(adj.size(), kNone);
    std::vector<std::uint32_t> order{0};
    id[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::uint32_t v = order[i];
        for (std::uint32_t w : adj[v]) {
            if (id[w] != kNone) continue;
            id[w] = static_cast<Element>(order.size());
            parent[id[w]] = id[v];
            order.push_back(w);
        }
    }
    out.universe = UniverseTree::from_parents(std::move(parent));
    return out;
}

// --------------------------------------------------------------- filesystem

std::string format_stats(const FsStats& s) {
    std::ostringstream out;
    out << "nodes=" << s.nodes << " leaves=" << s.leaves << " height=" << s.height
        << " max_children=" << s.max_children << " symlinks_skipped=" << s.symlinks_skipped;
    return out.str();
}

FsUniverse ingest_filesystem(const std::string& root) {
    namespace fs = std::filesystem;
    FsUniverse out;
    std::error_code ec;
    const fs::path top(root);
    if (!fs::is_directory(top, ec)) throw Error(ErrorCode::Io, root + ": not a readable directory");

    std::vector<Element> parent{kNone};
    std::vector<std::size_t> depth{0};
    std::vector<std::size_t> children{0};
    out.paths.push_back(top.string());
    std::vector<std::pair<fs::path, Element>> stack{{top, 0}};
    while (!stack.empty()) {
        auto [dir, id] = stack.back();
        stack.pop_back();
        std::vector<fs::directory_entry> entries;
        fs::directory_iterator it(dir, ec);
        if (ec) throw Error(ErrorCode::Io, dir.string() + ": " + ec.message());
        for (; it != fs::directory_iterator(); it.increment(ec)) {
            if (ec) throw Error(ErrorCode::Io, dir.string() + ": " + ec.message());
            entries.push_back(*it);
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });
        std::vector<std::pair<fs::path, Element>> subdirs;
        for (const auto& e : entries) {
            if (e.is_symlink(ec)) {
                ++out.stats.symlinks_skipped;
                continue;
            }
            const Element child = static_cast<Element>(parent.size());
            parent.push_back(id);
            depth.push_back(depth[id] + 1);
            children.push_back(0);
            ++children[id];
            out.paths.push_back(e.path().string());
            if (e.is_directory(ec)) subdirs.emplace_back(e.path(), child);
        }
        for (auto s = subdirs.rbegin(); s != subdirs.rend(); ++s) stack.push_back(*s);
    }
    out.stats.nodes = parent.size();
    for (std::size_t i = 0; i < parent.size(); ++i) {
        if (children[i] == 0) ++out.stats.leaves;
        out.stats.height = std::max(out.stats.height, depth[i]);
        out.stats.max_children = std::max(out.stats.max_children, children[i]);
    }
    out.universe = UniverseTree::from_parents(std::move(parent));
    return out;
}

// -------------------------------------------------------------------- traces

std::vector<TraceOp> read_trace(std::istream& in) {
    std::vector<TraceOp> ops;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        long long id = -1;
        std::string extra;
        if (kind.size() != 1 || std::string("IDQ").find(kind[0]) == std::string::npos || !(ls >> id) || id < 0 ||
            (ls >> extra)) {
            throw Error(ErrorCode::Parse, "trace line " + std::to_string(lineno) + ": expected `I|D|Q <id>`");
        }
        ops.push_back({kind[0], static_cast<Element>(id)});
    }
    return ops;
}

void write_trace(std::ostream& out, const std::vector<TraceOp>& ops) {
    for (const TraceOp& op : ops) out << op.kind << ' ' << op.id << '\n';
}

}  // namespace llt
