#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "llt/line_leaf_tree.hpp"

namespace llt {

std::string LineLeafTree::lemma3_violation(Element x) const {
    const NodeMeta& m = st_.node(x);
    if (!m.present) return "node " + std::to_string(x) + " is not present";
    const int k = static_cast<int>(m.round);
    const int m1 = mu(x, 1), m2 = mu(x, 2), m3 = mu(x, 3), m4 = mu(x, 4);
    bool ok;
    const char* kind;
    if (x == root_) {
        kind = "root";
        ok = (m1 == k - 1 && m2 == k - 2 && m3 == k - 2 && m4 <= m3) ||
             (m1 == k - 1 && m2 == k - 1 && m3 == k - 1 && m4 <= m3);
    } else if (m.type == NodeType::Leaf) {
        kind = "leaf";
        ok = m1 == k - 1 && m2 == k - 1 && m3 <= m2;
    } else {
        kind = "line";
        ok = m1 == k - 1 && m2 <= m1;
    }
    if (ok) return {};
    std::ostringstream out;
    out << kind << " node " << x << " round=" << k << " mu=(" << m1 << ',' << m2 << ',' << m3 << ',' << m4 << ')';
    return out.str();
}

FragilityReport LineLeafTree::fragility(Element x) const {
    FragilityReport r;
    r.node = x;
    r.unstable = !stable(x);
    const int k = static_cast<int>(round(x));
    const int m1 = mu(x, 1), m2 = mu(x, 2), m3 = mu(x, 3), m4 = mu(x, 4);
    if (x == root_) {
        r.clause = 1;
        r.fragile = (m1 == k - 1 && m2 == k - 2 && m3 == k - 2) || (m1 == k - 1 && m2 == k - 1 && m3 == k - 1 && m4 < m3);
    } else if (st_.node(x).type == NodeType::Leaf) {
        r.clause = 2;
        r.fragile = m1 == k - 1 && m2 == k - 1 && m3 < m2;
    } else {
        r.clause = 3;
        r.fragile = m1 == k - 1 && m2 < m1;
    }
    if (!r.fragile) r.clause = 0;
    return r;
}

namespace {
// Next node after x on the T_S path from x to y.
Element step_toward(const HasseDiagram& h, Element x, Element y) {
    const UniverseTree& t = h.universe();
    if (t.leq(x, y)) {
        for (Element s : h.successors(x))
            if (t.leq(s, y)) return s;
        return kNone;
    }
    return h.pred(x);
}
}  // namespace

std::vector<std::string> LineLeafTree::audit() const {
    std::vector<std::string> out;
    auto fail = [&](const std::string& s) { out.push_back(s); };
    const auto members = hasse_.members();

    std::size_t roots = 0;
    for (Element x : members) {
        const NodeMeta& m = st_.node(x);
        if (!m.present) {
            fail("member " + std::to_string(x) + " has no metadata");
            continue;
        }
        if (std::string v = lemma3_violation(x); !v.empty()) fail("lemma3: " + v);
        if (x == root_) {
            ++roots;
            if (m.parent != kNone) fail("root " + std::to_string(x) + " has a parent");
            continue;
        }
        try {
            if (m.type == NodeType::Leaf) {
                const Key k = lst_entry_of(x);
                if (st_.far_node(k) != x || st_.near_node(k) != m.parent)
                    fail("leaf " + std::to_string(x) + ": LST entry endpoints disagree");
            } else {
                const Query& q = st_.query(m.link);
                if (std::find(q.interior.begin(), q.interior.end(), x) == q.interior.end())
                    fail("line node " + std::to_string(x) + " missing from its BST");
            }
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (roots != 1 || !hasse_.contains(root_)) fail("root is not a unique member");
    for (Element x = 0; x < universe().size(); ++x)
        if (st_.node(x).present != hasse_.contains(x)) fail("metadata presence mismatch at " + std::to_string(x));

    // Walk every query reachable from the LSTs.
    std::size_t seen = 0;
    std::vector<char> visited(st_.universe_size(), 0);
    auto check_ends = [&](QueryId qid) {
        const Query& q = st_.query(qid);
        for (int i = 0; i < 2; ++i) {
            const Resolved a = st_.resolve(q.end[i]);
            const Element other = st_.resolve(q.end[1 - i]).node;
            if (!hasse_.contains(a.node) || !hasse_.contains(a.neighbor)) {
                fail("query " + std::to_string(qid) + " references a non-member");
                return;
            }
            if (step_toward(hasse_, a.node, other) != a.neighbor)
                fail("query " + std::to_string(qid) + " end " + std::to_string(i) + " at " + std::to_string(a.node) +
                     " does not face " + std::to_string(other));
            if (a.descends != universe().leq(a.node, a.neighbor))
                fail("query " + std::to_string(qid) + " direction flag wrong");
        }
    };
    std::function<void(QueryId, std::uint32_t)> walk = [&](QueryId qid, std::uint32_t bound) {
        ++seen;
        check_ends(qid);
        const Query& q = st_.query(qid);
        if (q.keys.empty()) {
            if (!q.interior.empty()) fail("plain query " + std::to_string(qid) + " has interior");
            return;
        }
        if (q.keys.size() != q.interior.size() + 1) {
            fail("query " + std::to_string(qid) + " key/interior mismatch");
            return;
        }
        const std::uint32_t r = round(q.interior[0]);
        if (r >= bound) fail("BST " + std::to_string(qid) + " round not below its holder");
        std::vector<Element> nodes;
        nodes.push_back(st_.resolve(q.end[0]).node);
        nodes.insert(nodes.end(), q.interior.begin(), q.interior.end());
        nodes.push_back(st_.resolve(q.end[1]).node);
        for (std::size_t j = 0; j < q.keys.size(); ++j) {
            const Key& k = q.keys[j];
            if (!st_.query_alive(k.q)) {
                fail("BST " + std::to_string(qid) + " has a dead key");
                continue;
            }
            if (st_.near_node(k) != nodes[j] || st_.far_node(k) != nodes[j + 1])
                fail("BST " + std::to_string(qid) + " key " + std::to_string(j) + " endpoints out of order");
            walk(k.q, r);
        }
        for (Element v : q.interior) {
            const NodeMeta& m = st_.node(v);
            if (m.type != NodeType::Line || m.link != qid) fail("interior node " + std::to_string(v) + " not linked to BST");
            if (m.round != r) fail("BST " + std::to_string(qid) + " mixes rounds");
            if (visited[v]++) fail("node " + std::to_string(v) + " appears twice");
        }
    };
    for (Element x : members) {
        const auto& lst = st_.node(x).lst;
        for (std::size_t i = 0; i < lst.size(); ++i) {
            const Key& k = lst[i];
            if (!st_.query_alive(k.q)) {
                fail("LST(" + std::to_string(x) + ") has a dead entry");
                continue;
            }
            try {
                const Element y = st_.far_node(k);
                if (st_.near_node(k) != x) fail("LST(" + std::to_string(x) + ") entry not anchored at owner");
                if (i > 0 && static_cast<int>(round(y)) > mu(x, i)) fail("LST(" + std::to_string(x) + ") out of round order");
                if (round(y) >= round(x)) fail("LST(" + std::to_string(x) + ") entry round not below owner");
                const NodeMeta& my = st_.node(y);
                if (my.type != NodeType::Leaf || my.parent != x || my.link != k.q)
                    fail("node " + std::to_string(y) + " metadata disagrees with LST(" + std::to_string(x) + ")");
                if (visited[y]++) fail("node " + std::to_string(y) + " appears twice");
                walk(k.q, round(y) + 1);
            } catch (const Error& e) {
                fail(e.what());
            }
        }
    }
    if (seen != st_.live_queries())
        fail("query leak: " + std::to_string(st_.live_queries()) + " live, " + std::to_string(seen) + " reachable");
    return out;
}

std::string LineLeafTree::search_path_violation(const SearchResult& r) const {
    std::map<std::uint32_t, std::pair<int, int>> per_round;  // (LSTs, BSTs)
    std::uint32_t prev = std::numeric_limits<std::uint32_t>::max();
    SearchStep::Kind prev_kind = SearchStep::Kind::Bst;
    for (const SearchStep& s : r.path) {
        if (s.round > prev) return "round increases along the search path at round " + std::to_string(s.round);
        if (s.round == prev && prev_kind == SearchStep::Kind::Lst)
            return "two components of round " + std::to_string(s.round) + " after an LST";
        auto& c = per_round[s.round];
        (s.kind == SearchStep::Kind::Lst ? c.first : c.second) += 1;
        if (c.first > 1 || c.second > 1) return "round " + std::to_string(s.round) + " visited twice";
        prev = s.round;
        prev_kind = s.kind;
    }
    return {};
}

void LineLeafTree::normalize_root() {
    const Element r = root_;
    NodeMeta& mr = st_.node(r);
    const int k = static_cast<int>(mr.round);
    if (mr.lst.empty() || mu(r, 1) != k - 1 || mu(r, 2) == k - 1) return;
    const Element p = st_.far_node(mr.lst.front());
    if (p > r) return;
    const Key k_rp = st_.lst_pop_front(r);
    NodeMeta& mp = st_.node(p);
    mp.round = static_cast<std::uint32_t>(k);
    mp.type = NodeType::Leaf;
    mp.parent = kNone;
    mp.link = kNoQuery;
    mr.round = static_cast<std::uint32_t>(k - 1);
    root_ = p;
    st_.lst_push_front(p, flip(k_rp));
}

}  // namespace llt
