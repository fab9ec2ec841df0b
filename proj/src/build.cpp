#include <algorithm>
#include <deque>
#include <sstream>

#include "llt/line_leaf_tree.hpp"

namespace llt {

// ------------------------------------------------------------------ shape

TreeShape tree_shape(const HasseDiagram& h) {
    TreeShape s;
    const auto members = h.members();
    s.n = members.size();
    s.w = 0;
    for (Element x : members) {
        if (h.successors(x).empty()) ++s.w;
        s.delta = std::max(s.delta, h.degree(x));
    }
    if (s.n <= 1) return s;
    // Diameter by double BFS over T_S.
    const std::size_t m = h.universe().size();
    std::vector<std::int32_t> dist(m, -1);
    auto bfs = [&](Element start) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<Element> queue{start};
        dist[start] = 0;
        Element last = start;
        while (!queue.empty()) {
            Element v = queue.front();
            queue.pop_front();
            last = v;
            auto visit = [&](Element y) {
                if (y != kNone && dist[y] < 0) {
                    dist[y] = dist[v] + 1;
                    queue.push_back(y);
                }
            };
            visit(h.pred(v));
            for (Element y : h.successors(v)) visit(y);
        }
        return last;
    };
    Element far = bfs(0);
    Element other = bfs(far);
    s.diameter = static_cast<std::size_t>(dist[other]);
    return s;
}

std::uint64_t height_bound(const TreeShape& s) {
    const std::uint64_t w = std::max<std::size_t>(s.w, 2);
    return (s.delta + 2 * ceil_log2(s.diameter + 2) + 2) * (static_cast<std::uint64_t>(ceil_log2(w)) + 1);
}

std::uint64_t delete_cost_bound(const TreeShape& s, std::uint64_t c_st) {
    return c_st * height_bound(s);
}

std::string format_event(const ContractionEvent& e) {
    std::ostringstream out;
    out << "round=" << e.round << " step=" << (e.line ? "line" : "leaf") << " nodes=";
    for (std::size_t i = 0; i < e.nodes.size(); ++i) out << (i ? "," : "") << e.nodes[i];
    out << " target=";
    if (e.line) out << e.a << '-' << e.b;
    else out << e.a;
    return out.str();
}

// --------------------------------------------------------------- coverage

void CaseCoverage::add(const CaseCoverage& o) {
    auto acc = [](auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    acc(transition, o.transition);
    acc(insert, o.insert);
    acc(down, o.down);
    acc(up, o.up);
    acc(stabilize, o.stabilize);
    acc(erase, o.erase);
}

namespace {
template <class F>
void each_counter(const CaseCoverage& c, F f) {
    f("transition.up", c.transition[0]);
    f("transition.down", c.transition[1]);
    for (int i = 1; i <= 5; ++i) f("insert." + std::to_string(i), c.insert[i]);
    for (int i = 1; i <= 5; ++i) f("down_correct." + std::to_string(i), c.down[i]);
    for (int i = 1; i <= 6; ++i) f("up_correct." + std::to_string(i), c.up[i]);
    for (int i = 1; i <= 3; ++i) f("stabilize." + std::to_string(i), c.stabilize[i]);
    f("delete.replace", c.erase[0]);
    f("delete.absorb", c.erase[1]);
}
}  // namespace

std::vector<std::string> CaseCoverage::missing() const {
    std::vector<std::string> out;
    each_counter(*this, [&](const std::string& name, std::uint64_t v) {
        if (v == 0) out.push_back(name);
    });
    return out;
}

std::string CaseCoverage::report() const {
    std::ostringstream out;
    each_counter(*this, [&](const std::string& name, std::uint64_t v) { out << name << '=' << v << '\n'; });
    return out.str();
}

// ------------------------------------------------------------------ build

LineLeafTree::LineLeafTree(const UniverseTree& universe)
    : hasse_(universe), st_(universe.size()), up_record_(universe.size(), 0) {
    NodeMeta& r = st_.node(0);
    r.present = true;
    r.round = 1;
    r.type = NodeType::Leaf;
}

LineLeafTree LineLeafTree::build(const HasseDiagram& h, std::vector<ContractionEvent>* trace) {
    LineLeafTree t(h.universe());
    t.hasse_ = h;
    Structures& st = t.st_;
    const auto members = h.members();
    const std::size_t m = h.universe().size();

    // Working tree: for each alive node the keys of its incident edges, near
    // end at the node.
    std::vector<std::vector<Key>> adj(m);
    std::vector<char> alive(m, 0);
    for (Element x : members) {
        alive[x] = 1;
        NodeMeta& meta = st.node(x);
        meta = NodeMeta{};
        meta.present = true;
        if (x == h.universe().root()) continue;
        const Element p = h.pred(x);
        RecordId r = st.new_record(p, x);
        t.up_record_[x] = r;
        QueryId q = st.new_edge_query(r);
        adj[p].push_back({q, 0});
        adj[x].push_back({q, 1});
    }
    std::vector<Element> nodes(members);
    std::size_t alive_count = nodes.size();
    std::uint32_t iter = 0;
    std::vector<char> visited(m, 0);

    while (alive_count > 1) {
        ++iter;
        // Line contraction: maximal chains of degree-2 nodes.
        for (Element x1 : nodes) {
            if (!alive[x1] || adj[x1].size() == 2) continue;
            for (Key& start : adj[x1]) {
                Element y = st.far_node(start);
                ++st.ops().structure_ops;
                if (adj[y].size() != 2 || visited[y]) continue;
                Seg seg;
                seg.keys.push_back(start);
                Key prev = start;
                Element cur = y;
                while (adj[cur].size() == 2) {
                    visited[cur] = 1;
                    seg.interior.push_back(cur);
                    const Key next = adj[cur][0].q == prev.q ? adj[cur][1] : adj[cur][0];
                    seg.keys.push_back(next);
                    prev = next;
                    cur = st.far_node(next);
                    ++st.ops().structure_ops;
                }
                const Element xt = cur;
                const std::vector<Element> chain = seg.interior;
                const QueryId last_q = prev.q;
                Key joined = st.make_key(std::move(seg));
                for (Element v : chain) {
                    st.node(v).round = iter;
                    alive[v] = 0;
                    adj[v].clear();
                }
                alive_count -= chain.size();
                for (Key& k : adj[xt])
                    if (k.q == last_q) k = {joined.q, 1};
                start = {joined.q, 0};
                if (trace) trace->push_back({iter, true, chain, x1, xt});
            }
        }
        // Leaf contraction.
        std::vector<Element> leaves;
        for (Element x : nodes)
            if (alive[x] && adj[x].size() == 1) leaves.push_back(x);
        if (alive_count == 2) {
            const Element keep = std::min(leaves[0], leaves[1]);
            const Element gone = std::max(leaves[0], leaves[1]);
            st.node(gone).round = iter;
            st.lst_push_front(keep, adj[keep][0]);
            alive[gone] = 0;
            adj[gone].clear();
            adj[keep].clear();
            alive_count = 1;
            if (trace) trace->push_back({iter, false, {gone}, keep, kNone});
            break;
        }
        std::vector<Element> owners;
        std::vector<std::vector<Element>> per_owner(trace ? m : 0);
        for (Element y : leaves) {
            const Key k = adj[y][0];
            const Element x = st.far_node(k);
            st.node(y).round = iter;
            st.lst_push_front(x, {k.q, static_cast<std::uint8_t>(1 - k.near)});
            alive[y] = 0;
            adj[y].clear();
            owners.push_back(x);
            if (trace) per_owner[x].push_back(y);
        }
        alive_count -= leaves.size();
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
        for (Element x : owners) {
            std::erase_if(adj[x], [&](const Key& k) { return !alive[st.far_node(k)]; });
            st.ops().structure_ops += 1;
            if (trace) trace->push_back({iter, false, per_owner[x], x, kNone});
        }
        std::erase_if(nodes, [&](Element x) { return !alive[x]; });
    }
    Element root = kNone;
    for (Element x : nodes)
        if (alive[x]) root = x;
    t.root_ = root;
    NodeMeta& r = st.node(root);
    r.round = iter + 1;
    r.type = NodeType::Leaf;
    r.parent = kNone;
    r.link = kNoQuery;
    t.build_ops_ = st.ops().structure_ops;
    return t;
}

// ----------------------------------------------------------------- search

bool LineLeafTree::search_bst(const Key& k, Element u, SearchResult& r) const {
    // Implicit balanced search over the keys of k's BST in stored order; the
    // shape is a property of the query, not of the side it is entered from.
    // Returns true with r.node set when a path node is reached.
    const Query& s = st_.query(k.q);
    std::size_t lo = 0, hi = s.keys.size() - 1;
    const std::size_t p = s.interior.size();
    while (true) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const Key& key = s.keys[mid];
        ++r.stats.edge_queries;
        const EdgeAnswer a = st_.evaluate(universe(), key, u, &r.stats.leq_calls);
        if (a == EdgeAnswer::Here) {
            const Query& inner = st_.query(key.q);
            if (inner.keys.empty()) {
                const Resolved e = st_.resolve(inner.end[0]);
                r.found = false;
                r.upper = e.descends ? e.node : e.neighbor;
                r.lower = e.descends ? e.neighbor : e.node;
                return false;
            }
            // A non-empty path means the caller asked for recording.
            if (!r.path.empty()) r.path.push_back({SearchStep::Kind::Bst, st_.query_round(key.q), kNone, key.q});
            return search_bst(key, u, r);
        }
        if (a == EdgeAnswer::X) {
            if (mid == lo) {
                if (lo == 0) throw Error(ErrorCode::StructuralCorruption, "impossible answer in path BST");
                r.node = s.interior[lo - 1];
                return true;
            }
            hi = mid - 1;
        } else {
            if (mid == hi) {
                if (hi == p) throw Error(ErrorCode::StructuralCorruption, "impossible answer in path BST");
                r.node = s.interior[hi];
                return true;
            }
            lo = mid + 1;
        }
    }
}

SearchResult LineLeafTree::search(Element u, bool record_path) const {
    if (!universe().valid(u)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(u));
    SearchResult r;
    Element x = root_;
    while (true) {
        if (record_path) r.path.push_back({SearchStep::Kind::Lst, round(x), x, kNoQuery});
        bool moved = false;
        for (const Key& k : st_.node(x).lst) {
            ++r.stats.edge_queries;
            const EdgeAnswer a = st_.evaluate(universe(), k, u, &r.stats.leq_calls);
            if (a == EdgeAnswer::X) continue;
            if (a == EdgeAnswer::Y) {
                x = st_.far_node(k);
                moved = true;
                break;
            }
            const Query& q = st_.query(k.q);
            if (q.keys.empty()) {
                const Resolved e = st_.resolve(q.end[0]);
                r.found = false;
                r.upper = e.descends ? e.node : e.neighbor;
                r.lower = e.descends ? e.neighbor : e.node;
                return r;
            }
            if (record_path) r.path.push_back({SearchStep::Kind::Bst, st_.query_round(k.q), kNone, k.q});
            if (!search_bst(k, u, r)) return r;
            x = r.node;
            moved = true;
            break;
        }
        if (!moved) {
            r.found = true;
            r.node = x;
            return r;
        }
    }
}

bool LineLeafTree::contains(Element u) const {
    SearchResult r = search(u);
    return r.found && r.node == u;
}

Element LineLeafTree::predecessor(Element u) const {
    SearchResult r = search(u);
    return r.found ? r.node : r.upper;
}

// ----------------------------------------------------------------- height

namespace {
constexpr std::int64_t kImpossible = -(std::int64_t{1} << 40);
}

std::int64_t LineLeafTree::h_key(const Key& k, bool members_only) const {
    const Query& q = st_.query(k.q);
    if (q.keys.empty()) return members_only ? kImpossible : 0;
    return h_range(q, q.keys, q.interior, 0, q.keys.size() - 1, members_only);
}

std::int64_t LineLeafTree::h_range(const Query& q, const std::vector<Key>& keys, const std::vector<Element>& interior,
                                   std::size_t lo, std::size_t hi, bool members_only) const {
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t p = interior.size();
    std::int64_t best = h_key(keys[mid], members_only);
    std::int64_t left = mid == lo ? (lo == 0 ? kImpossible : h_node(interior[lo - 1], members_only))
                                  : h_range(q, keys, interior, lo, mid - 1, members_only);
    std::int64_t right = mid == hi ? (hi == p ? kImpossible : h_node(interior[hi], members_only))
                                   : h_range(q, keys, interior, mid + 1, hi, members_only);
    best = std::max({best, left, right});
    return best < 0 ? kImpossible : best + 1;
}

std::int64_t LineLeafTree::h_node(Element x, bool members_only) const {
    const auto& lst = st_.node(x).lst;
    std::int64_t best = static_cast<std::int64_t>(lst.size());
    for (std::size_t i = 0; i < lst.size(); ++i) {
        const std::int64_t sub = std::max(h_node(st_.far_node(lst[i]), members_only), h_key(lst[i], members_only));
        best = std::max(best, static_cast<std::int64_t>(i + 1) + sub);
    }
    return best;
}

std::uint32_t LineLeafTree::height() const { return static_cast<std::uint32_t>(h_node(root_, false)); }
std::uint32_t LineLeafTree::member_height() const { return static_cast<std::uint32_t>(h_node(root_, true)); }

std::uint32_t LineLeafTree::rounds() const { return round(root_) - 1; }

Metrics LineLeafTree::metrics() const {
    Metrics m;
    m.shape = tree_shape(hasse_);
    m.h = height();
    m.h_members = member_height();
    m.rounds = rounds();
    return m;
}

}  // namespace llt
