#include "llt/universe.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace llt {

UniverseTree UniverseTree::from_parents(std::vector<Element> parent) {
    const std::size_t m = parent.size();
    if (m == 0) throw Error(ErrorCode::Parse, "universe must have at least one element");
    if (parent[0] != kNone) throw Error(ErrorCode::Parse, "element 0 must be the root");

    UniverseTree t;
    t.children_.assign(m, {});
    for (std::size_t i = 1; i < m; ++i) {
        if (parent[i] == kNone) throw Error(ErrorCode::Parse, "multiple roots (element " + std::to_string(i) + ")");
        if (parent[i] >= m) throw Error(ErrorCode::InvalidElement, "parent of " + std::to_string(i) + " out of range");
        if (parent[i] == i) throw Error(ErrorCode::Parse, "self loop at " + std::to_string(i));
        t.children_[parent[i]].push_back(static_cast<Element>(i));
    }
    t.parent_ = std::move(parent);
    t.depth_.assign(m, 0);
    t.entry_.assign(m, 0);
    t.exit_.assign(m, 0);

    // Iterative DFS from 0. Anything unreached sits on a cycle.
    std::vector<std::pair<Element, std::size_t>> stack{{0, 0}};
    std::uint32_t clock = 0;
    std::size_t seen = 1;
    t.entry_[0] = clock++;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < t.children_[v].size()) {
            Element c = t.children_[v][next++];
            t.depth_[c] = t.depth_[v] + 1;
            t.height_ = std::max(t.height_, t.depth_[c]);
            t.entry_[c] = clock++;
            ++seen;
            stack.emplace_back(c, 0);
        } else {
            t.exit_[v] = clock - 1;
            stack.pop_back();
        }
    }
    if (seen != m) throw Error(ErrorCode::Parse, "parent references contain a cycle");
    return t;
}

UniverseTree UniverseTree::read(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            auto pos = out.find_first_not_of(" \t\r");
            if (pos != std::string::npos && out[pos] != '#') return true;
        }
        return false;
    };
    if (!next_line(line)) throw Error(ErrorCode::Parse, "empty universe file");
    long long m = -1;
    {
        std::istringstream ls(line);
        if (!(ls >> m) || m <= 0) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad element count");
    }
    std::vector<Element> parent(static_cast<std::size_t>(m), kNone);
    std::vector<char> assigned(static_cast<std::size_t>(m), 0);
    for (long long i = 0; i + 1 < m; ++i) {
        if (!next_line(line)) throw Error(ErrorCode::Parse, "expected " + std::to_string(m - 1) + " edges");
        std::istringstream ls(line);
        long long c = -1, p = -1;
        if (!(ls >> c >> p)) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'child parent'");
        if (c < 0 || p < 0 || c >= m || p >= m) {
            throw Error(ErrorCode::InvalidElement, "line " + std::to_string(lineno) + ": id out of range");
        }
        if (c == 0) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": element 0 cannot have a parent");
        if (assigned[c]) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": element has two parents");
        assigned[c] = 1;
        parent[c] = static_cast<Element>(p);
    }
    return from_parents(std::move(parent));
}

UniverseTree UniverseTree::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return read(in);
}

void UniverseTree::write(std::ostream& out) const {
    out << size() << '\n';
    for (std::size_t i = 1; i < size(); ++i) out << i << ' ' << parent_[i] << '\n';
}

}  // namespace llt
