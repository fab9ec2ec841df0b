#pragma once

#include <array>
#include <string>
#include <vector>

#include "llt/hasse.hpp"
#include "llt/structures.hpp"

namespace llt {

struct SearchStats {
    std::uint64_t edge_queries = 0;
    std::uint64_t leq_calls = 0;
};

// One component visited by a search: an LST (owner node) or a path BST.
struct SearchStep {
    enum class Kind : std::uint8_t { Lst, Bst } kind;
    std::uint32_t round;
    Element owner;  // LST owner, or kNone for a BST
    QueryId query;  // BST query, or kNoQuery for an LST
};

struct SearchResult {
    bool found = false;     // terminal node reached; otherwise Nil inside an edge
    Element node = kNone;   // found: the terminal node
    Element upper = kNone;  // Nil: the actual Hasse edge upper ≺ lower containing u
    Element lower = kNone;
    SearchStats stats;
    std::vector<SearchStep> path;
};

struct TreeShape {
    std::size_t n = 0;         // |S|
    std::size_t w = 1;         // maximal elements of S (leaves of the rooted T_S)
    std::size_t delta = 0;     // max degree in T_S
    std::size_t diameter = 0;  // in edges
};
TreeShape tree_shape(const HasseDiagram& h);

struct Metrics {
    TreeShape shape;
    std::uint32_t h = 0;         // worst search over every outcome, in dynamic edge queries
    std::uint32_t h_members = 0; // worst search for an element of S
    std::uint32_t rounds = 0;    // contraction iterations
};

// Safe-constant form of the worst-case height bound.
std::uint64_t height_bound(const TreeShape& s);
std::uint64_t delete_cost_bound(const TreeShape& s, std::uint64_t c_st = 4);

struct ContractionEvent {
    std::uint32_t round;
    bool line;
    std::vector<Element> nodes;
    Element a;  // line: first path endpoint; leaf: the owner
    Element b;  // line: second path endpoint; leaf: kNone
};
std::string format_event(const ContractionEvent& e);

struct CaseCoverage {
    std::array<std::uint64_t, 2> transition{};   // [0] up-correct branch, [1] down-correct branch
    std::array<std::uint64_t, 6> insert{};       // 1..5
    std::array<std::uint64_t, 6> down{};         // 1..5
    std::array<std::uint64_t, 7> up{};           // 1..6
    std::array<std::uint64_t, 4> stabilize{};    // 1..3
    std::array<std::uint64_t, 2> erase{};        // [0] B replaces A, [1] B absorbs A
    void add(const CaseCoverage& o);
    // Names of counters that are still zero.
    std::vector<std::string> missing() const;
    std::string report() const;
};

// Clause numbers follow the three node kinds: 1 root, 2 leaf, 3 line; 0 if
// the node is not fragile.
struct FragilityReport {
    Element node = kNone;
    bool fragile = false;
    bool unstable = false;
    int clause = 0;
};

// Outcome of local correction for inserting A below B: the moved Hasse
// successors D, the LST(B) entries C leading into D, and L. For a LINE B the
// E side is end 0 of the owning BST and the F side end 1.
struct StolenSets {
    Element b = kNone;
    std::vector<Element> d;
    std::vector<Key> c;
    std::vector<Key> kept;
    Element e = kNone;
    Element f = kNone;
    bool l_e = false;
    bool l_f = false;
    QueryId owner = kNoQuery;
    std::uint64_t comparisons = 0;
};

struct OpCosts {
    std::uint64_t insert_comparisons = 0;  // edge queries plus stand-alone ⪯ tests
    std::uint64_t delete_cost = 0;         // LST entry moves plus BST primitives at balanced rates
};

class LineLeafTree {
public:
    explicit LineLeafTree(const UniverseTree& universe);
    static LineLeafTree build(const HasseDiagram& h, std::vector<ContractionEvent>* trace = nullptr);

    const UniverseTree& universe() const noexcept { return hasse_.universe(); }
    const HasseDiagram& hasse() const noexcept { return hasse_; }
    const Structures& structures() const noexcept { return st_; }
    Element root() const noexcept { return root_; }
    std::size_t size() const noexcept { return hasse_.size(); }

    SearchResult search(Element u, bool record_path = false) const;
    bool contains(Element u) const;
    Element predecessor(Element u) const;

    StolenSets local_correction(Element a) const;
    void insert(Element a);
    void erase(Element a);

    std::uint32_t height() const;
    std::uint32_t member_height() const;
    std::uint32_t rounds() const;
    Metrics metrics() const;

    // Round profile required at node x; empty string when it holds.
    std::string lemma3_violation(Element x) const;
    bool stable(Element x) const { return lemma3_violation(x).empty(); }
    FragilityReport fragility(Element x) const;
    // Every node and every query handle: round profiles, parent links, LST order,
    // BST key/interior consistency, λ references against H_S.
    std::vector<std::string> audit() const;
    // Round discipline of a recorded search path; empty string when it holds.
    std::string search_path_violation(const SearchResult& r) const;

    // Re-root onto the smaller id of a symmetric two-survivor pair.
    void normalize_root();

    const CaseCoverage& coverage() const noexcept { return coverage_; }
    const OpCosts& last_costs() const noexcept { return last_; }
    std::uint64_t build_ops() const noexcept { return build_ops_; }

    // Test hook for fault injection.
    NodeMeta& mutable_node(Element e) { return st_.node(e); }

private:
    using Sidx = int;

    // search helpers
    bool search_bst(const Key& k, Element u, SearchResult& r) const;
    std::int64_t h_node(Element x, bool members_only) const;
    std::int64_t h_key(const Key& k, bool members_only) const;
    std::int64_t h_range(const Query& q, const std::vector<Key>& keys, const std::vector<Element>& interior,
                         std::size_t lo, std::size_t hi, bool members_only) const;

    // dynamic machinery
    Key flip(Key k) const { return {k.q, static_cast<std::uint8_t>(1 - k.near)}; }
    int end_at(QueryId q, Element x) const;
    std::uint32_t round(Element x) const { return st_.node(x).round; }
    int mu(Element x, std::size_t i) const { return static_cast<int>(st_.mu(x, i)); }
    void assign_oriented(QueryId q, Seg s, int from);
    static Seg reversed(Seg s);
    Key lst_entry_of(Element leaf) const;  // entry in parent's LST, near at parent

    void transition(Element p, Element q, Key k_pq);
    void up_correct(Element a, Element b, Key k_ab);
    Seg down_correct(Seg eb, Seg bf, Element b);
    void stabilize(Element b, int depth = 0);

    HasseDiagram hasse_;
    Structures st_;
    std::vector<RecordId> up_record_;  // record of the Hasse edge (pred(x), x)
    Element root_ = 0;
    CaseCoverage coverage_;
    OpCosts last_;
    std::uint64_t build_ops_ = 0;
};

}  // namespace llt
