#pragma once

#include <cstdint>
#include <vector>

#include "llt/edge_query.hpp"

namespace llt {

using RecordId = std::uint32_t;
using QueryId = std::uint32_t;
inline constexpr QueryId kNoQuery = std::numeric_limits<QueryId>::max();

enum class NodeType : std::uint8_t { Line, Leaf };
const char* to_string(NodeType t);

// Which end of an actual Hasse edge a reference points at.
enum class Side : std::uint8_t { Upper, Lower };

struct EdgeRef {
    RecordId record = 0;
    Side side = Side::Upper;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

// An actual Hasse edge (upper ≺ lower). Every query handle bookended by this
// edge points here, so renaming an endpoint is one store. A retired record
// forwards each side to the reference that took over its role.
struct EdgeRecord {
    Element upper = kNone;
    Element lower = kNone;
    bool alive = true;
    bool forwarded[2] = {false, false};
    EdgeRef forward[2];
};

// A key or LST entry: a query plus which of its two ends faces the holder
// (the LST owner, or the start of the enclosing path).
struct Key {
    QueryId q = kNoQuery;
    std::uint8_t near = 0;
    friend bool operator==(const Key&, const Key&) = default;
};

// Dynamic edge query (x, y) realised by two edge references. If `keys` is
// non-empty the query carries a path BST over the interior nodes
// interior[0..p-1]; keys[j] spans interior[j-1] .. interior[j] with the path
// endpoints at both extremes, ordered from end[0] to end[1].
struct Query {
    EdgeRef end[2];
    std::vector<Key> keys;
    std::vector<Element> interior;
    bool alive = false;
};

// A detached path segment: the key/interior lists of a BST without an owning
// query. Used as the currency of split, merge and down correction.
struct Seg {
    std::vector<Key> keys;
    std::vector<Element> interior;
};

struct NodeMeta {
    bool present = false;
    std::uint32_t round = 0;
    NodeType type = NodeType::Leaf;
    Element parent = kNone;  // LEAF: node whose LST holds us; none for LINE and the root
    QueryId link = kNoQuery; // LEAF: our entry in the parent's LST; LINE: the owning query
    std::vector<Key> lst;    // front = index 0
};

struct Resolved {
    Element node = kNone;
    Element neighbor = kNone;
    bool descends = false;
};

// Structure-op accounting for the linear-build and delete-cost checks.
struct OpCounter {
    std::uint64_t structure_ops = 0;
    std::uint64_t bst_charge = 0;
    std::uint64_t lst_moves = 0;
};

class Structures {
public:
    explicit Structures(std::size_t universe_size = 0);

    // --- edge records -----------------------------------------------------
    RecordId new_record(Element upper, Element lower);
    void rename_endpoint(RecordId r, Element old_node, Element new_node);
    void retire_record(RecordId r);
    void set_forward(RecordId r, Side side, EdgeRef to);
    const EdgeRecord& record(RecordId r) const { return records_.at(r); }
    std::size_t record_count() const noexcept { return records_.size(); }
    EdgeRef canonical(EdgeRef ref) const;
    Resolved resolve(EdgeRef ref) const;

    // --- queries ----------------------------------------------------------
    QueryId new_edge_query(RecordId r);
    const Query& query(QueryId q) const;
    Query& query_mut(QueryId q);
    bool query_alive(QueryId q) const { return q < queries_.size() && queries_[q].alive; }
    void free_query(QueryId q);
    std::size_t live_queries() const noexcept { return live_queries_; }

    EdgeRef key_end(const Key& k, bool far) const { return query(k.q).end[far ? 1 - k.near : k.near]; }
    Element near_node(const Key& k) const { return resolve(key_end(k, false)).node; }
    Element far_node(const Key& k) const { return resolve(key_end(k, true)).node; }
    Element endpoint(QueryId q, int which) const { return resolve(query(q).end[which]).node; }

    // Evaluate key k for u, answering relative to the key's orientation:
    // X = near side, Y = far side.
    EdgeAnswer evaluate(const UniverseTree& t, const Key& k, Element u, std::uint64_t* leq_calls) const;

    std::uint32_t seg_round(const Seg& s) const { return s.interior.empty() ? 0 : nodes_[s.interior[0]].round; }
    std::uint32_t query_round(QueryId q) const;

    // Turn a segment into a single key: the lone key itself when the segment
    // has no interior, otherwise a fresh query adopting the interior.
    Key make_key(Seg s);
    // Replace q's content by the segment (q keeps its id and container slot).
    void assign(QueryId q, Seg s);
    // Dissolve a key into a segment oriented from its near end. A query with
    // a BST is freed; a plain query becomes the segment's only key.
    Seg take(const Key& k);
    // Copy of q's segment oriented from end `from`.
    Seg segment(QueryId q, int from) const;
    // Split the BST of q at interior node b. q stays alive with no content.
    std::pair<Seg, Seg> split_at(QueryId q, Element b, int from);
    Seg concat(Seg a, Element mid, Seg b) const;
    static Seg single(Key k) { return Seg{{k}, {}}; }

    // --- nodes and LSTs ---------------------------------------------------
    NodeMeta& node(Element e) { return nodes_.at(e); }
    const NodeMeta& node(Element e) const { return nodes_.at(e); }
    std::size_t universe_size() const noexcept { return nodes_.size(); }

    std::uint32_t mu(Element x, std::size_t i) const;  // 1-based, 0 past the end
    Element rho(Element x, std::size_t i) const;

    // Front insertion; throws OrderViolation if it would break the order.
    void lst_push_front(Element owner, Key k);
    // Insertion at the first position keeping rounds non-increasing.
    void lst_insert(Element owner, Key k);
    Key lst_remove(Element owner, QueryId q);
    Key lst_pop_front(Element owner);

    OpCounter& ops() { return ops_; }
    const OpCounter& ops() const { return ops_; }
    void charge_bst(std::size_t interior) {
        ops_.bst_charge += static_cast<std::uint64_t>(ceil_log2(interior + 2));
    }

private:
    QueryId alloc_query();
    void adopt(QueryId q);

    std::vector<EdgeRecord> records_;
    std::vector<Query> queries_;
    std::vector<QueryId> free_;
    std::size_t live_queries_ = 0;
    std::vector<NodeMeta> nodes_;
    OpCounter ops_;
};

}  // namespace llt
