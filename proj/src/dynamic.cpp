#include <algorithm>

#include "llt/line_leaf_tree.hpp"

namespace llt {

namespace {
[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::StructuralCorruption, what); }

std::size_t index_of(const std::vector<Element>& v, Element x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) corrupt("node " + std::to_string(x) + " missing from its path BST");
    return static_cast<std::size_t>(it - v.begin());
}
}  // namespace

int LineLeafTree::end_at(QueryId q, Element x) const {
    if (st_.endpoint(q, 0) == x) return 0;
    if (st_.endpoint(q, 1) == x) return 1;
    corrupt("node " + std::to_string(x) + " is not an endpoint of query " + std::to_string(q));
}

Seg LineLeafTree::reversed(Seg s) {
    std::reverse(s.keys.begin(), s.keys.end());
    for (Key& k : s.keys) k.near ^= 1;
    std::reverse(s.interior.begin(), s.interior.end());
    return s;
}

void LineLeafTree::assign_oriented(QueryId q, Seg s, int from) {
    st_.assign(q, from == 0 ? std::move(s) : reversed(std::move(s)));
}

Key LineLeafTree::lst_entry_of(Element leaf) const {
    const NodeMeta& m = st_.node(leaf);
    for (const Key& k : st_.node(m.parent).lst)
        if (k.q == m.link) return k;
    corrupt("leaf " + std::to_string(leaf) + " missing from LST(" + std::to_string(m.parent) + ")");
}

// ------------------------------------------------------------ down correct

Seg LineLeafTree::down_correct(Seg eb, Seg bf, Element b) {
    st_.node(b).type = NodeType::Line;
    // A lone key carrying a BST is the same segment seen from outside.
    auto open = [&](Seg& s) {
        if (s.interior.empty() && !st_.query(s.keys[0].q).keys.empty()) s = st_.take(s.keys[0]);
    };
    open(eb);
    open(bf);
    const std::uint32_t m = st_.seg_round(eb), n = st_.seg_round(bf), r = round(b);

    if (m <= r && n <= r) {
        if (m == r && n == r) {
            ++coverage_.down[3];
            return st_.concat(std::move(eb), b, std::move(bf));
        }
        if (m < r && n < r) {
            ++coverage_.down[2];
            Seg out;
            out.keys.push_back(st_.make_key(std::move(eb)));
            out.keys.push_back(st_.make_key(std::move(bf)));
            out.interior.push_back(b);
            return out;
        }
        ++coverage_.down[1];
        if (m < r) return st_.concat(Structures::single(st_.make_key(std::move(eb))), b, std::move(bf));
        return st_.concat(std::move(eb), b, Structures::single(st_.make_key(std::move(bf))));
    }

    if (m > r && n > r) {
        ++coverage_.down[5];
        const Key km = eb.keys.back();
        const Element mm = eb.interior.back();
        eb.keys.pop_back();
        eb.interior.pop_back();
        const Key kn = bf.keys.front();
        const Element nn = bf.interior.front();
        bf.keys.erase(bf.keys.begin());
        bf.interior.erase(bf.interior.begin());
        Seg mn = down_correct(st_.take(km), st_.take(kn), b);
        if (m > n) {
            Seg mf = st_.concat(Structures::single(st_.make_key(std::move(mn))), nn, std::move(bf));
            return st_.concat(std::move(eb), mm, Structures::single(st_.make_key(std::move(mf))));
        }
        if (n > m) {
            Seg en = st_.concat(std::move(eb), mm, Structures::single(st_.make_key(std::move(mn))));
            return st_.concat(Structures::single(st_.make_key(std::move(en))), nn, std::move(bf));
        }
        Seg left = st_.concat(std::move(eb), mm, Structures::single(st_.make_key(std::move(mn))));
        return st_.concat(std::move(left), nn, std::move(bf));
    }

    ++coverage_.down[4];
    if (n > r) {
        const Key kn = bf.keys.front();
        const Element nn = bf.interior.front();
        bf.keys.erase(bf.keys.begin());
        bf.interior.erase(bf.interior.begin());
        Seg en = down_correct(std::move(eb), st_.take(kn), b);
        return st_.concat(Structures::single(st_.make_key(std::move(en))), nn, std::move(bf));
    }
    const Key km = eb.keys.back();
    const Element mm = eb.interior.back();
    eb.keys.pop_back();
    eb.interior.pop_back();
    Seg mf = down_correct(st_.take(km), std::move(bf), b);
    return st_.concat(std::move(eb), mm, Structures::single(st_.make_key(std::move(mf))));
}

// -------------------------------------------------------------- transition

void LineLeafTree::transition(Element p, Element q, Key k_pq) {
    NodeMeta& mp = st_.node(p);
    mp.round = static_cast<std::uint32_t>(mu(p, 2) + 1);
    if (mu(p, 1) == mu(p, 2)) {
        ++coverage_.transition[0];
        up_correct(p, q, k_pq);
        return;
    }
    ++coverage_.transition[1];
    const Key k_pm = st_.lst_pop_front(p);
    Seg s = down_correct(st_.take(flip(k_pq)), st_.take(k_pm), p);
    st_.lst_insert(q, st_.make_key(std::move(s)));
}

// -------------------------------------------------------------- up correct

void LineLeafTree::up_correct(Element a, Element b, Key k_ab) {
    NodeMeta& ma = st_.node(a);
    NodeMeta& mb = st_.node(b);
    ma.type = NodeType::Leaf;
    const int ra = static_cast<int>(ma.round), rb = static_cast<int>(mb.round);

    if (ra < rb) {
        if (b == root_ && mu(b, 2) < mu(b, 1) && mu(b, 1) == ra && ra == rb - 1) {
            ++coverage_.up[1];
            const Key k_bm = st_.lst_pop_front(b);
            const Element m = st_.far_node(k_bm);
            mb.round -= 1;
            st_.node(m).round += 1;
            Seg s = down_correct(st_.take(k_ab), st_.take(k_bm), b);
            const Key k_am = st_.make_key(std::move(s));
            NodeMeta& mm = st_.node(m);
            mm.type = NodeType::Leaf;
            mm.parent = kNone;
            mm.link = kNoQuery;
            root_ = m;
            st_.lst_insert(m, flip(k_am));
            return;
        }
        ++coverage_.up[2];
        st_.lst_insert(b, flip(k_ab));
        return;
    }
    if (ra != rb) corrupt("up correct with round(A) > round(B)");
    if (b == root_) corrupt("up correct reached the root with equal rounds");

    if (mb.type == NodeType::Leaf) {
        ++coverage_.up[3];
        const Element e = mb.parent;
        const Key k_eb = st_.lst_remove(e, mb.link);
        Seg s = down_correct(st_.take(k_ab), st_.take(flip(k_eb)), b);
        st_.lst_insert(e, flip(st_.make_key(std::move(s))));
        return;
    }

    // Cases 4-6: B is line contracted inside (E,F).
    const QueryId q_ef = mb.link;
    const Element e0 = st_.endpoint(q_ef, 0), f0 = st_.endpoint(q_ef, 1);
    st_.lst_insert(b, flip(k_ab));
    mb.round += 1;
    const std::uint32_t k1 = mb.round;
    const NodeMeta& me0 = st_.node(e0);
    const NodeMeta& mf0 = st_.node(f0);
    bool e_first = me0.round < mf0.round ||
                   (me0.round == mf0.round && me0.type == NodeType::Line && e0 != root_);
    if (f0 == root_) e_first = true;
    if (e0 == root_) e_first = false;
    const int from = e_first ? 0 : 1;
    const Element e = e_first ? e0 : f0;
    const Element f = e_first ? f0 : e0;
    const NodeMeta& me = st_.node(e);
    const NodeMeta& mf = st_.node(f);
    const bool e_line = me.type == NodeType::Line && e != root_;

    auto [seg_eb, seg_bf] = st_.split_at(q_ef, b, from);
    if ((k1 < me.round && k1 < mf.round) ||
        (k1 == me.round && me.round < mf.round && !e_line)) {
        ++coverage_.up[4];
        Seg s;
        s.keys.push_back(st_.make_key(std::move(seg_eb)));
        s.keys.push_back(st_.make_key(std::move(seg_bf)));
        s.interior.push_back(b);
        assign_oriented(q_ef, std::move(s), from);
        return;
    }
    if (k1 == me.round && e_line) {
        ++coverage_.up[5];
        const QueryId q_gh = me.link;
        Seg gh = st_.segment(q_gh, 0);
        std::size_t j = 0;
        while (j < gh.keys.size() && gh.keys[j].q != q_ef) ++j;
        if (j == gh.keys.size()) corrupt("edge (E,F) missing from BST(G,H)");
        const Key k_eb = st_.make_key(std::move(seg_eb));
        const Key k_bf = st_.make_key(std::move(seg_bf));
        // Is E on the start side of key j inside BST(G,H)?
        const bool e_near = j > 0 && gh.interior[j - 1] == e;
        std::vector<Key> repl;
        if (e_near) repl = {k_eb, k_bf};
        else repl = {flip(k_bf), flip(k_eb)};
        gh.keys.erase(gh.keys.begin() + static_cast<std::ptrdiff_t>(j));
        gh.keys.insert(gh.keys.begin() + static_cast<std::ptrdiff_t>(j), repl.begin(), repl.end());
        gh.interior.insert(gh.interior.begin() + static_cast<std::ptrdiff_t>(j), b);
        st_.free_query(q_ef);
        st_.assign(q_gh, std::move(gh));
        return;
    }
    if (me.round < k1 && k1 <= mf.round) {
        ++coverage_.up[6];
        if (me.type != NodeType::Leaf || me.parent != f) corrupt("up correct case 6 expects E to be a leaf of F");
        st_.lst_remove(f, q_ef);
        st_.free_query(q_ef);
        const Key k_eb = st_.make_key(std::move(seg_eb));
        const Key k_bf = st_.make_key(std::move(seg_bf));
        st_.lst_insert(b, flip(k_eb));
        mb.type = NodeType::Leaf;
        if (f == root_ && mf.round == k1) {
            NodeMeta& mfm = st_.node(f);
            if (mu(f, 1) < static_cast<int>(k1) - 1) {
                mfm.round -= 1;
            } else {
                mb.round = k1 + 1;
            }
            mb.parent = kNone;
            mb.link = kNoQuery;
            root_ = b;
            st_.lst_insert(b, k_bf);
            return;
        }
        up_correct(b, f, k_bf);
        return;
    }
    corrupt("up correct: no case matches");
}

// ------------------------------------------------------------------ insert

StolenSets LineLeafTree::local_correction(Element a) const {
    if (!universe().valid(a)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(a));
    if (hasse_.contains(a)) throw Error(ErrorCode::Duplicate, "element " + std::to_string(a) + " already present");
    StolenSets out;
    const SearchResult sr = search(a);
    out.comparisons = sr.stats.edge_queries;
    const Element b = sr.found ? sr.node : sr.upper;
    if (b != hasse_.predecessor_in_S(a)) corrupt("search located the wrong insertion point");
    out.b = b;
    out.d = hasse_.plan_attach(a).moved;
    out.comparisons += hasse_.successors(b).size();
    auto in_d = [&](Element v) { return std::find(out.d.begin(), out.d.end(), v) != out.d.end(); };

    const NodeMeta& mb = st_.node(b);
    for (const Key& k : mb.lst) (in_d(st_.resolve(st_.key_end(k, false)).neighbor) ? out.c : out.kept).push_back(k);
    if (b == root_) return out;
    if (mb.type == NodeType::Leaf) {
        out.e = mb.parent;
        out.l_e = in_d(st_.resolve(st_.key_end(lst_entry_of(b), true)).neighbor);
    } else {
        out.owner = mb.link;
        const Query& q = st_.query(out.owner);
        const std::size_t g = index_of(q.interior, b);
        out.e = st_.endpoint(out.owner, 0);
        out.f = st_.endpoint(out.owner, 1);
        out.l_e = in_d(st_.resolve(st_.key_end(q.keys[g], true)).neighbor);
        out.l_f = in_d(st_.resolve(st_.key_end(q.keys[g + 1], false)).neighbor);
    }
    return out;
}

void LineLeafTree::insert(Element a) {
    StolenSets plan = local_correction(a);
    last_ = {};
    const std::uint64_t comparisons = plan.comparisons;
    const Element b = plan.b;
    NodeMeta& mb = st_.node(b);
    const bool b_root = b == root_;
    const bool l_e = plan.l_e, l_f = plan.l_f;
    const Element e = plan.e;
    const QueryId owner = plan.owner;
    std::vector<Key> stolen = std::move(plan.c), kept = std::move(plan.kept);

    hasse_.attach(a);
    for (Element d : plan.d) st_.rename_endpoint(up_record_[d], b, a);
    const RecordId ra = st_.new_record(b, a);
    up_record_[a] = ra;
    NodeMeta& ma = st_.node(a);
    ma = NodeMeta{};
    ma.present = true;
    mb.lst = std::move(kept);
    ma.lst = std::move(stolen);
    for (const Key& k : ma.lst) st_.node(st_.far_node(k)).parent = a;
    st_.ops().lst_moves += ma.lst.size();

    const QueryId q_ab = st_.new_edge_query(ra);  // end 0 at B, end 1 at A
    const Key k_ab{q_ab, 1};
    const Key k_ba{q_ab, 0};
    const int k = static_cast<int>(mb.round);

    if (b_root) {
        ++coverage_.insert[1];
        const int m1b = mu(b, 1), m2b = mu(b, 2), m1a = mu(a, 1), m2a = mu(a, 2);
        const bool keep_b = (m1b == k - 1 && m2b == k - 1) || (m1b == k - 1 && m2a < k - 2) ||
                            (m1b == k - 2 && m2b == k - 2 && m2a < k - 1);
        if (keep_b) {
            if (m1a == m2a && m2a == m1b && m1b == m2b) mb.round += 1;
            transition(a, b, k_ab);
        } else {
            // A takes over the final round; μ1(A)+1 falls one short when A
            // and ρ1(B) are the last two survivors.
            ma.round = static_cast<std::uint32_t>(std::max(m1a + 1, k));
            ma.type = NodeType::Leaf;
            ma.parent = kNone;
            ma.link = kNoQuery;
            root_ = a;
            transition(b, a, k_ba);
        }
    } else if (mb.type == NodeType::Leaf && !l_e) {
        ++coverage_.insert[2];
        if (mu(a, 1) == mu(a, 2) && mu(a, 1) == k - 1) {
            ma.round = static_cast<std::uint32_t>(k);
            ma.type = NodeType::Leaf;
            const Key k_eb = st_.lst_remove(e, mb.link);
            mb.round = static_cast<std::uint32_t>(mu(b, 1) + 1);
            Seg s = down_correct(st_.take(k_ab), st_.take(flip(k_eb)), b);
            st_.lst_insert(e, flip(st_.make_key(std::move(s))));
        } else {
            transition(a, b, k_ab);
        }
    } else if (mb.type == NodeType::Leaf) {
        ++coverage_.insert[3];
        ma.round = static_cast<std::uint32_t>(mu(a, 1) + 1);
        const Key k_ea = st_.lst_remove(e, mb.link);  // (B,E) now reads (A,E)
        if (mu(b, 2) < k - 1) {
            st_.lst_insert(e, k_ea);
            transition(b, a, k_ba);
        } else {
            Seg s = down_correct(st_.take(k_ba), st_.take(flip(k_ea)), a);
            st_.lst_insert(e, flip(st_.make_key(std::move(s))));
        }
    } else if (l_e == l_f) {
        ++coverage_.insert[5];
        if (l_e) {
            ma.round = mb.round;
            Query& q = st_.query_mut(owner);
            q.interior[index_of(q.interior, b)] = a;
            ma.type = NodeType::Line;
            ma.parent = kNone;
            ma.link = owner;
            transition(b, a, k_ba);
        } else {
            transition(a, b, k_ab);
        }
    } else {
        ++coverage_.insert[4];
        const int from = l_f ? 0 : 1;  // orient so that A lies toward the end
        Seg s = st_.segment(owner, from);
        const std::size_t g = index_of(s.interior, b);
        const Key k_nb = s.keys[g];
        const Key k_am = s.keys[g + 1];  // was (B,M)
        ma.round = static_cast<std::uint32_t>(mu(a, 1) + 1);
        mb.round = static_cast<std::uint32_t>(mu(b, 1) + 1);
        ma.type = NodeType::Line;
        const int m1a = mu(a, 1), m1b = mu(b, 1);
        if (m1b > m1a) {
            Seg bm = down_correct(st_.take(k_ba), st_.take(k_am), a);
            s.keys[g + 1] = st_.make_key(std::move(bm));
        } else if (m1b == m1a) {
            s.keys.insert(s.keys.begin() + static_cast<std::ptrdiff_t>(g + 1), k_ba);
            s.interior.insert(s.interior.begin() + static_cast<std::ptrdiff_t>(g + 1), a);
        } else {
            Seg na = down_correct(st_.take(k_nb), st_.take(k_ba), b);
            s.keys[g] = st_.make_key(std::move(na));
            s.interior[g] = a;
        }
        assign_oriented(owner, std::move(s), from);
    }
    last_.insert_comparisons = comparisons;
}

// ------------------------------------------------------------------ delete

void LineLeafTree::erase(Element a) {
    if (!universe().valid(a)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(a));
    if (a == universe().root()) throw Error(ErrorCode::RootDeletion, "cannot delete ν");
    if (!hasse_.contains(a)) throw Error(ErrorCode::NotFound, "element " + std::to_string(a) + " not present");
    last_ = {};
    const OpCounter before = st_.ops();

    const Element b = hasse_.pred(a);
    const RecordId ra = up_record_[a];
    NodeMeta& ma = st_.node(a);
    NodeMeta& mb = st_.node(b);
    const bool replace = mb.round < ma.round ||
                         (mb.round == ma.round && ma.type == NodeType::Leaf && mb.type == NodeType::Line && a != root_);

    // Detach the query of the actual edge (B,A) from wherever it lives.
    // `fwd_side`/`fwd_to` record which side of the record must be forwarded.
    bool forward = false;
    Side fwd_side = Side::Upper;
    QueryId reshape = kNoQuery;
    int reshape_from = 0;
    Seg reshaped;
    QueryId edge_query = kNoQuery;
    if (replace) {
        ++coverage_.erase[0];
        if (mb.type == NodeType::Line) {
            reshape = mb.link;
            reshape_from = end_at(reshape, a);
            reshaped = st_.segment(reshape, reshape_from);
            if (reshaped.interior.front() != b) corrupt("delete: B is not next to A in its path BST");
            edge_query = reshaped.keys.front().q;
            reshaped.keys.erase(reshaped.keys.begin());
            reshaped.interior.erase(reshaped.interior.begin());
            forward = true;
            fwd_side = Side::Lower;
        } else if (mb.parent == a) {
            edge_query = st_.lst_remove(a, mb.link).q;
        } else {
            corrupt("delete: B neither line-contracted next to A nor a leaf of A");
        }
    } else {
        ++coverage_.erase[1];
        if (ma.type == NodeType::Line && mb.type == NodeType::Line && ma.link == mb.link && a != root_) {
            reshape = ma.link;
            reshape_from = 0;
            reshaped = st_.segment(reshape, 0);
            const std::size_t ia = index_of(reshaped.interior, a);
            const std::size_t ib = index_of(reshaped.interior, b);
            const std::size_t kpos = std::max(ia, ib);  // key between the two
            edge_query = reshaped.keys[kpos].q;
            reshaped.keys.erase(reshaped.keys.begin() + static_cast<std::ptrdiff_t>(kpos));
            reshaped.interior.erase(reshaped.interior.begin() + static_cast<std::ptrdiff_t>(ia));
        } else if (ma.type == NodeType::Leaf && ma.parent == b && a != root_) {
            edge_query = st_.lst_remove(b, ma.link).q;
        } else if (ma.type == NodeType::Line) {
            reshape = ma.link;
            reshape_from = end_at(reshape, b);
            reshaped = st_.segment(reshape, reshape_from);
            if (reshaped.interior.front() != a) corrupt("delete: A is not next to B in its path BST");
            edge_query = reshaped.keys.front().q;
            reshaped.keys.erase(reshaped.keys.begin());
            reshaped.interior.erase(reshaped.interior.begin());
            forward = true;
            fwd_side = Side::Upper;
        } else {
            corrupt("delete: cannot locate the edge (A,B)");
        }
    }
    if (!st_.query(edge_query).keys.empty()) corrupt("delete: edge (A,B) carries a BST");
    if (st_.query(edge_query).end[0].record != ra) corrupt("delete: edge query does not match record");

    // Commit to H_S'.
    const HasseDiagram::Attachment det = hasse_.detach(a);
    for (Element x : det.moved) st_.rename_endpoint(up_record_[x], a, b);
    st_.free_query(edge_query);
    st_.retire_record(ra);
    if (reshape != kNoQuery) {
        if (forward) st_.set_forward(ra, fwd_side, st_.key_end(reshaped.keys.front(), false));
        assign_oriented(reshape, std::move(reshaped), reshape_from);
    }

    // Merge LST(A) into LST(B), descending by round, B's entries first on ties.
    {
        std::vector<Key> merged;
        const auto& la = ma.lst;
        const auto& lb = mb.lst;
        std::size_t i = 0, j = 0;
        auto rnd = [&](const Key& k) { return round(st_.far_node(k)); };
        while (i < lb.size() || j < la.size()) {
            if (j == la.size() || (i < lb.size() && rnd(lb[i]) >= rnd(la[j]))) {
                merged.push_back(lb[i++]);
            } else {
                st_.node(st_.far_node(la[j])).parent = b;
                merged.push_back(la[j++]);
            }
        }
        st_.ops().lst_moves += la.size();
        mb.lst = std::move(merged);
        ma.lst.clear();
    }

    if (replace) {
        mb.round = ma.round;
        mb.type = ma.type;
        mb.parent = ma.parent;
        mb.link = ma.link;
        if (a == root_) {
            root_ = b;
        } else if (ma.type == NodeType::Line) {
            Query& q = st_.query_mut(ma.link);
            q.interior[index_of(q.interior, a)] = b;
        }
    }
    ma = NodeMeta{};

    if (!stable(b)) stabilize(b);
    const OpCounter& after = st_.ops();
    last_.delete_cost = (after.bst_charge - before.bst_charge) + (after.lst_moves - before.lst_moves);
}

// --------------------------------------------------------------- stabilize

void LineLeafTree::stabilize(Element b, int depth) {
    if (depth > 64) corrupt("stabilize recursion too deep");
    NodeMeta& mb = st_.node(b);
    const int k = static_cast<int>(mb.round);
    const int m1 = mu(b, 1), m2 = mu(b, 2), m3 = mu(b, 3);

    if (b == root_) {
        const bool c1 = m1 == k - 2 && m2 == k - 2 && m3 == k - 2;
        const bool c2 = m1 == k - 1 && m2 == k - 2 && m3 == k - 3;
        const bool c3 = m1 == k - 1 && m2 == k - 1 && m3 == k - 2;
        if (!(c1 || c2 || c3)) corrupt("stabilize: unhandled root profile at " + std::to_string(b));
        ++coverage_.stabilize[1];
        mb.round = static_cast<std::uint32_t>(m3 + 1);
        if (m1 == k - 1) {
            const Key k_bm = st_.lst_pop_front(b);
            const Key k_bn = st_.lst_pop_front(b);
            const Element m = st_.far_node(k_bm);
            NodeMeta& mm = st_.node(m);
            // A round k-1 node P next to B on the way to M outlives B: it
            // ends up alone with M in the final round and takes N.
            const Seg peek = st_.segment(k_bm.q, k_bm.near);
            const Element p = peek.interior.empty() ? m : peek.interior.front();
            if (m2 == k - 2 && p != m && static_cast<int>(round(p)) == k - 1) {
                Seg bm = st_.take(k_bm);
                const Key k_bp = bm.keys.front();
                bm.keys.erase(bm.keys.begin());
                bm.interior.erase(bm.interior.begin());
                const Key k_pm = st_.make_key(std::move(bm));
                Seg pn = down_correct(st_.take(flip(k_bp)), st_.take(k_bn), b);
                mm.round = static_cast<std::uint32_t>(k);
                mm.type = NodeType::Leaf;
                mm.parent = kNone;
                mm.link = kNoQuery;
                root_ = m;
                st_.lst_insert(m, flip(k_pm));
                st_.lst_insert(p, st_.make_key(std::move(pn)));
                return;
            }
            mm.round = static_cast<std::uint32_t>(m2 + 1);
            Seg s = down_correct(st_.take(flip(k_bm)), st_.take(k_bn), b);
            mm.type = NodeType::Leaf;
            mm.parent = kNone;
            mm.link = kNoQuery;
            root_ = m;
            st_.lst_insert(m, st_.make_key(std::move(s)));
        }
        return;
    }

    if (mb.type == NodeType::Leaf) {
        if (!(m1 == k - 1 && m2 == k - 2)) corrupt("stabilize: unhandled leaf profile at " + std::to_string(b));
        ++coverage_.stabilize[2];
        const Element e = mb.parent;
        mb.round = static_cast<std::uint32_t>(m2 + 1);
        const Key k_eb = st_.lst_remove(e, mb.link);
        const Key k_bm = st_.lst_pop_front(b);
        const Seg peek = st_.segment(k_eb.q, 1 - k_eb.near);  // B .. E
        const Element n = peek.interior.empty() ? e : peek.interior.front();
        if (n != e && static_cast<int>(round(n)) == k) {
            Seg be = st_.take(flip(k_eb));
            const Key k_bn = be.keys.front();
            be.keys.erase(be.keys.begin());
            be.interior.erase(be.interior.begin());
            const Key k_ne = st_.make_key(std::move(be));
            st_.lst_insert(e, flip(k_ne));
            Seg mn = down_correct(st_.take(flip(k_bm)), st_.take(k_bn), b);
            st_.lst_insert(n, flip(st_.make_key(std::move(mn))));
            return;
        }
        Seg me = down_correct(st_.take(flip(k_bm)), st_.take(flip(k_eb)), b);
        st_.lst_insert(e, flip(st_.make_key(std::move(me))));
        if (!stable(e)) stabilize(e, depth + 1);
        return;
    }

    if (m1 != k - 2) corrupt("stabilize: unhandled line profile at " + std::to_string(b));
    ++coverage_.stabilize[3];
    mb.round = static_cast<std::uint32_t>(m1 + 1);
    const QueryId q = mb.link;
    auto [eb, bf] = st_.split_at(q, b, 0);
    st_.assign(q, down_correct(std::move(eb), std::move(bf), b));
}

}  // namespace llt
