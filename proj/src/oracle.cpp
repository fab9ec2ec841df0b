#include "llt/oracle.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace llt {

// --------------------------------------------------------------- signature

namespace {

std::string pair_text(Element a, Element b) {
    if (a > b) std::swap(a, b);
    return std::to_string(a) + "-" + std::to_string(b);
}

void collect_bsts(const Structures& st, QueryId q, std::vector<std::string>& lines) {
    const Query& query = st.query(q);
    if (query.keys.empty()) return;
    Element a = st.endpoint(q, 0), b = st.endpoint(q, 1);
    std::vector<Element> interior = query.interior;
    if (a > b) {
        std::swap(a, b);
        std::reverse(interior.begin(), interior.end());
    }
    std::ostringstream line;
    line << "bst " << a << '-' << b << ':';
    for (Element v : interior) line << ' ' << v;
    lines.push_back(line.str());
    for (const Key& k : query.keys) collect_bsts(st, k.q, lines);
}

std::string raw_signature(const LineLeafTree& t) {
    const Structures& st = t.structures();
    std::ostringstream out;
    std::vector<std::string> bsts;
    for (Element x : t.hasse().members()) {
        const NodeMeta& m = st.node(x);
        out << "node " << x << " round=" << m.round << " type=" << to_string(m.type) << " parent=";
        if (x == t.root()) out << '-';
        else if (m.type == NodeType::Leaf) out << m.parent;
        else out << pair_text(st.endpoint(m.link, 0), st.endpoint(m.link, 1));
        out << '\n';
    }
    for (Element x : t.hasse().members()) {
        const auto& lst = st.node(x).lst;
        if (lst.empty()) continue;
        std::vector<std::pair<std::uint32_t, Element>> entries;
        for (const Key& k : lst) {
            const Element y = st.far_node(k);
            entries.emplace_back(st.node(y).round, y);
            collect_bsts(st, k.q, bsts);
        }
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        out << "lst " << x << ':';
        std::uint32_t cur = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i == 0 || entries[i].first != cur) {
                cur = entries[i].first;
                out << " |" << cur << ':';
            }
            out << ' ' << entries[i].second;
        }
        out << '\n';
    }
    std::sort(bsts.begin(), bsts.end());
    for (const auto& l : bsts) out << l << '\n';
    return out.str();
}

}  // namespace

std::string signature(const LineLeafTree& t) {
    LineLeafTree copy = t;
    copy.normalize_root();
    return raw_signature(copy);
}

RebuildCheck check_rebuild(const LineLeafTree& t, std::ostream* err) {
    RebuildCheck r;
    const std::string got = signature(t);
    const std::string want = signature(LineLeafTree::build(t.hasse()));
    if (got == want) return r;
    r.equal = false;
    std::istringstream a(got), b(want);
    std::string la, lb;
    while (true) {
        const bool ha = static_cast<bool>(std::getline(a, la));
        const bool hb = static_cast<bool>(std::getline(b, lb));
        if (!ha) la = "<end>";
        if (!hb) lb = "<end>";
        if (la != lb || (!ha && !hb)) break;
    }
    r.diff = "dynamic: " + la + "\nrebuild: " + lb;
    if (err) *err << "rebuild mismatch\n" << r.diff << '\n';
    return r;
}

// --------------------------------------------------------------------- OPT

PlainTree plain_tree(const HasseDiagram& h) {
    const auto members = h.members();
    std::vector<std::uint32_t> index(h.universe().size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<std::uint32_t>(i);
    PlainTree t;
    t.n = members.size();
    for (Element x : members)
        if (x != h.universe().root()) t.edges.emplace_back(index[h.pred(x)], index[x]);
    return t;
}

PlainTree star_tree(std::size_t leaves) {
    PlainTree t;
    t.n = leaves + 1;
    for (std::uint32_t i = 1; i <= leaves; ++i) t.edges.emplace_back(0, i);
    return t;
}

PlainTree path_tree(std::size_t nodes) {
    PlainTree t;
    t.n = std::max<std::size_t>(nodes, 1);
    for (std::uint32_t i = 1; i < t.n; ++i) t.edges.emplace_back(i - 1, i);
    return t;
}

namespace {

using Mask = std::uint32_t;

class OptSolver {
public:
    OptSolver(const PlainTree& t, bool memo) : t_(t), memo_(memo), adj_(t.n, 0) {
        for (auto [a, b] : t.edges) {
            adj_[a] |= Mask{1} << b;
            adj_[b] |= Mask{1} << a;
        }
    }

    // Component of `start` inside `within`.
    Mask component(Mask within, std::uint32_t start) const {
        Mask seen = Mask{1} << start, frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::uint32_t>(__builtin_ctz(f))];
            next &= within & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    }

    std::pair<std::uint32_t, int> solve(Mask mask) {
        if ((mask & (mask - 1)) == 0) return {0, -1};
        if (memo_) {
            auto it = cache_.find(mask);
            if (it != cache_.end()) return it->second;
        }
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        int arg = -1;
        for (std::size_t i = 0; i < t_.edges.size(); ++i) {
            const auto [a, b] = t_.edges[i];
            if (!((mask >> a) & 1) || !((mask >> b) & 1)) continue;
            // Remove edge (a,b) inside the mask: a's side is a's component
            // without crossing into b.
            const Mask side_a = component(mask & ~(Mask{1} << b), a);
            const Mask side_b = mask & ~side_a;
            const std::uint32_t h = 1 + std::max(solve(side_a).first, solve(side_b).first);
            if (h < best) {
                best = h;
                arg = static_cast<int>(i);
            }
        }
        if (memo_) cache_.emplace(mask, std::pair{best, arg});
        return {best, arg};
    }

private:
    const PlainTree& t_;
    bool memo_;
    std::vector<Mask> adj_;
    std::unordered_map<Mask, std::pair<std::uint32_t, int>> cache_;
};

void check_budget(const PlainTree& t) {
    if (t.n > kOptBudget)
        throw Error(ErrorCode::TooLarge, "exact OPT limited to " + std::to_string(kOptBudget) + " nodes, got " +
                                             std::to_string(t.n));
    if (t.edges.size() + 1 != t.n) throw Error(ErrorCode::InvalidQuery, "edge list is not a tree");
}

}  // namespace

OptResult opt_height(const PlainTree& t) {
    check_budget(t);
    OptSolver s(t, true);
    const Mask all = t.n == 32 ? ~Mask{0} : (Mask{1} << t.n) - 1;
    auto [h, e] = s.solve(all);
    return {h, e};
}

std::uint32_t opt_height_enumerate(const PlainTree& t) {
    check_budget(t);
    OptSolver s(t, false);
    return s.solve((Mask{1} << t.n) - 1).first;
}

std::uint32_t opt_lower_bound(const TreeShape& s) {
    return std::max<std::uint32_t>(static_cast<std::uint32_t>(s.delta), static_cast<std::uint32_t>(ceil_log2(s.n)));
}

std::uint32_t opt_lower_bound(const PlainTree& t) {
    std::vector<std::size_t> deg(t.n, 0);
    for (auto [a, b] : t.edges) {
        ++deg[a];
        ++deg[b];
    }
    const std::size_t delta = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    return std::max<std::uint32_t>(static_cast<std::uint32_t>(delta), static_cast<std::uint32_t>(ceil_log2(t.n)));
}

}  // namespace llt
