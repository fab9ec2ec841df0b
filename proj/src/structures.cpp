#include "llt/structures.hpp"

#include <algorithm>

namespace llt {

const char* to_string(NodeType t) { return t == NodeType::Line ? "LINE" : "LEAF"; }

Structures::Structures(std::size_t universe_size) : nodes_(universe_size) {}

// ---------------------------------------------------------------- records

RecordId Structures::new_record(Element upper, Element lower) {
    EdgeRecord r;
    r.upper = upper;
    r.lower = lower;
    records_.push_back(r);
    ++ops_.structure_ops;
    return static_cast<RecordId>(records_.size() - 1);
}

void Structures::rename_endpoint(RecordId r, Element old_node, Element new_node) {
    EdgeRecord& rec = records_.at(r);
    if (!rec.alive) throw Error(ErrorCode::EndpointMismatch, "rename on retired record");
    if (rec.upper == old_node) {
        rec.upper = new_node;
    } else if (rec.lower == old_node) {
        rec.lower = new_node;
    } else {
        throw Error(ErrorCode::EndpointMismatch,
                    std::to_string(old_node) + " is not an endpoint of record " + std::to_string(r));
    }
    ++ops_.structure_ops;
}

void Structures::retire_record(RecordId r) {
    records_.at(r).alive = false;
}

void Structures::set_forward(RecordId r, Side side, EdgeRef to) {
    EdgeRecord& rec = records_.at(r);
    rec.forwarded[static_cast<int>(side)] = true;
    rec.forward[static_cast<int>(side)] = to;
}

EdgeRef Structures::canonical(EdgeRef ref) const {
    for (;;) {
        const EdgeRecord& rec = records_[ref.record];
        if (rec.alive) return ref;
        const int s = static_cast<int>(ref.side);
        if (!rec.forwarded[s]) {
            throw Error(ErrorCode::StructuralCorruption, "dangling reference to retired record " + std::to_string(ref.record));
        }
        ref = rec.forward[s];
    }
}

Resolved Structures::resolve(EdgeRef ref) const {
    ref = canonical(ref);
    const EdgeRecord& rec = records_[ref.record];
    if (ref.side == Side::Upper) return {rec.upper, rec.lower, true};
    return {rec.lower, rec.upper, false};
}

// ---------------------------------------------------------------- queries

QueryId Structures::alloc_query() {
    QueryId id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
    } else {
        id = static_cast<QueryId>(queries_.size());
        queries_.emplace_back();
    }
    queries_[id] = Query{};
    queries_[id].alive = true;
    ++live_queries_;
    ++ops_.structure_ops;
    return id;
}

QueryId Structures::new_edge_query(RecordId r) {
    QueryId id = alloc_query();
    queries_[id].end[0] = {r, Side::Upper};
    queries_[id].end[1] = {r, Side::Lower};
    return id;
}

const Query& Structures::query(QueryId q) const {
    if (q >= queries_.size() || !queries_[q].alive) {
        throw Error(ErrorCode::StructuralCorruption, "access to dead query " + std::to_string(q));
    }
    return queries_[q];
}

Query& Structures::query_mut(QueryId q) {
    if (q >= queries_.size() || !queries_[q].alive) {
        throw Error(ErrorCode::StructuralCorruption, "access to dead query " + std::to_string(q));
    }
    return queries_[q];
}

void Structures::free_query(QueryId q) {
    Query& query = query_mut(q);
    query.alive = false;
    query.keys.clear();
    query.interior.clear();
    free_.push_back(q);
    --live_queries_;
}

EdgeAnswer Structures::evaluate(const UniverseTree& t, const Key& k, Element u, std::uint64_t* leq_calls) const {
    const Query& q = query(k.q);
    Resolved a = resolve(q.end[k.near]);
    Resolved b = resolve(q.end[1 - k.near]);
    return evaluate_edge_query(t, {a.node, a.neighbor, a.descends}, {b.node, b.neighbor, b.descends}, u, leq_calls);
}

std::uint32_t Structures::query_round(QueryId q) const {
    const Query& query = this->query(q);
    return query.interior.empty() ? 0 : nodes_[query.interior[0]].round;
}

void Structures::adopt(QueryId q) {
    Query& query = queries_[q];
    for (Element v : query.interior) {
        NodeMeta& m = nodes_[v];
        m.type = NodeType::Line;
        m.parent = kNone;
        m.link = q;
    }
    ops_.structure_ops += query.interior.size() + 1;
    charge_bst(query.interior.size());
}

Key Structures::make_key(Seg s) {
    if (s.keys.empty()) throw Error(ErrorCode::StructuralCorruption, "empty segment");
    if (s.keys.size() != s.interior.size() + 1) throw Error(ErrorCode::NonAdjacentMerge, "segment key/interior mismatch");
    if (s.interior.empty()) return s.keys[0];
    QueryId id = alloc_query();
    assign(id, std::move(s));
    return {id, 0};
}

void Structures::assign(QueryId q, Seg s) {
    if (s.keys.empty() || s.keys.size() != s.interior.size() + 1) {
        throw Error(ErrorCode::NonAdjacentMerge, "segment key/interior mismatch");
    }
    Query& target = query_mut(q);
    if (s.interior.empty()) {
        // Absorb the lone key: q takes over its ends and its BST.
        const Key k = s.keys[0];
        if (k.q == q) return;
        Query inner = queries_[k.q];
        target.end[0] = inner.end[k.near];
        target.end[1] = inner.end[1 - k.near];
        target.keys = inner.keys;
        target.interior = inner.interior;
        if (k.near == 1) {
            std::reverse(target.keys.begin(), target.keys.end());
            for (Key& kk : target.keys) kk.near ^= 1;
            std::reverse(target.interior.begin(), target.interior.end());
        }
        free_query(k.q);
    } else {
        target.end[0] = key_end(s.keys.front(), false);
        target.end[1] = key_end(s.keys.back(), true);
        target.keys = std::move(s.keys);
        target.interior = std::move(s.interior);
    }
    adopt(q);
}

Seg Structures::segment(QueryId q, int from) const {
    const Query& query = this->query(q);
    Seg s;
    if (query.interior.empty()) {
        s.keys.push_back({q, static_cast<std::uint8_t>(from)});
        return s;
    }
    s.keys = query.keys;
    s.interior = query.interior;
    if (from == 1) {
        std::reverse(s.keys.begin(), s.keys.end());
        for (Key& k : s.keys) k.near ^= 1;
        std::reverse(s.interior.begin(), s.interior.end());
    }
    return s;
}

Seg Structures::take(const Key& k) {
    Seg s = segment(k.q, k.near);
    if (!query(k.q).interior.empty()) free_query(k.q);
    return s;
}

std::pair<Seg, Seg> Structures::split_at(QueryId q, Element b, int from) {
    Seg s = segment(q, from);
    auto it = std::find(s.interior.begin(), s.interior.end(), b);
    if (it == s.interior.end()) throw Error(ErrorCode::NotFound, "split node not in BST");
    const std::size_t g = static_cast<std::size_t>(it - s.interior.begin());
    Seg left, right;
    left.keys.assign(s.keys.begin(), s.keys.begin() + static_cast<std::ptrdiff_t>(g + 1));
    left.interior.assign(s.interior.begin(), s.interior.begin() + static_cast<std::ptrdiff_t>(g));
    right.keys.assign(s.keys.begin() + static_cast<std::ptrdiff_t>(g + 1), s.keys.end());
    right.interior.assign(s.interior.begin() + static_cast<std::ptrdiff_t>(g + 1), s.interior.end());
    Query& query = query_mut(q);
    query.keys.clear();
    query.interior.clear();
    charge_bst(s.interior.size());
    ops_.structure_ops += s.interior.size() + 1;
    return {std::move(left), std::move(right)};
}

Seg Structures::concat(Seg a, Element mid, Seg b) const {
    a.keys.insert(a.keys.end(), b.keys.begin(), b.keys.end());
    a.interior.push_back(mid);
    a.interior.insert(a.interior.end(), b.interior.begin(), b.interior.end());
    return a;
}

// ---------------------------------------------------------------- LSTs

std::uint32_t Structures::mu(Element x, std::size_t i) const {
    const auto& lst = nodes_[x].lst;
    if (i == 0 || i > lst.size()) return 0;
    return nodes_[far_node(lst[i - 1])].round;
}

Element Structures::rho(Element x, std::size_t i) const {
    const auto& lst = nodes_[x].lst;
    if (i == 0 || i > lst.size()) return kNone;
    return far_node(lst[i - 1]);
}

namespace {
void attach_leaf(NodeMeta& far, Element owner, QueryId q) {
    far.type = NodeType::Leaf;
    far.parent = owner;
    far.link = q;
}
}  // namespace

void Structures::lst_push_front(Element owner, Key k) {
    const Element far = far_node(k);
    auto& lst = nodes_[owner].lst;
    if (!lst.empty() && nodes_[far].round < mu(owner, 1)) {
        throw Error(ErrorCode::OrderViolation, "front insertion into LST(" + std::to_string(owner) + ") breaks round order");
    }
    lst.insert(lst.begin(), k);
    attach_leaf(nodes_[far], owner, k.q);
    ++ops_.structure_ops;
    ++ops_.lst_moves;
}

void Structures::lst_insert(Element owner, Key k) {
    const Element far = far_node(k);
    const std::uint32_t r = nodes_[far].round;
    auto& lst = nodes_[owner].lst;
    std::size_t pos = 0;
    while (pos < lst.size() && nodes_[far_node(lst[pos])].round > r) ++pos;
    lst.insert(lst.begin() + static_cast<std::ptrdiff_t>(pos), k);
    attach_leaf(nodes_[far], owner, k.q);
    ops_.structure_ops += pos + 1;
    ++ops_.lst_moves;
}

Key Structures::lst_remove(Element owner, QueryId q) {
    auto& lst = nodes_[owner].lst;
    auto it = std::find_if(lst.begin(), lst.end(), [&](const Key& k) { return k.q == q; });
    if (it == lst.end()) throw Error(ErrorCode::NotFound, "query not in LST(" + std::to_string(owner) + ")");
    Key k = *it;
    ops_.structure_ops += static_cast<std::uint64_t>(it - lst.begin()) + 1;
    ++ops_.lst_moves;
    lst.erase(it);
    return k;
}

Key Structures::lst_pop_front(Element owner) {
    auto& lst = nodes_[owner].lst;
    if (lst.empty()) throw Error(ErrorCode::NotFound, "LST(" + std::to_string(owner) + ") is empty");
    Key k = lst.front();
    lst.erase(lst.begin());
    ++ops_.structure_ops;
    ++ops_.lst_moves;
    return k;
}

}  // namespace llt
