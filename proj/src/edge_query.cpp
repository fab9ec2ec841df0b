#include "llt/edge_query.hpp"

namespace llt {

const char* to_string(EdgeAnswer a) {
    switch (a) {
        case EdgeAnswer::X: return "X";
        case EdgeAnswer::Y: return "Y";
        case EdgeAnswer::Here: return "HERE";
    }
    return "?";
}

namespace {

// x ≺ y along the path; a is the successor of x toward y.
EdgeAnswer downward(const UniverseTree& t, Element x, Element a, Element y, Element u, std::uint64_t& calls,
                    EdgeAnswer near, EdgeAnswer far) {
    ++calls;
    if (t.leq_unchecked(y, u)) return far;
    ++calls;
    if (t.leq_unchecked(a, u)) return EdgeAnswer::Here;
    if (u != x) {
        ++calls;
        if (t.leq_unchecked(x, u)) {
            ++calls;
            if (t.leq_unchecked(u, y)) return EdgeAnswer::Here;
        }
    }
    return near;
}

}  // namespace

EdgeAnswer evaluate_edge_query(const UniverseTree& t, const PathEnd& x, const PathEnd& y, Element u,
                               std::uint64_t* leq_calls) {
    std::uint64_t calls = 0;
    EdgeAnswer r;
    if (u == x.node) {
        r = EdgeAnswer::X;
    } else if (u == y.node) {
        r = EdgeAnswer::Y;
    } else if (x.descends) {
        r = downward(t, x.node, x.neighbor, y.node, u, calls, EdgeAnswer::X, EdgeAnswer::Y);
    } else if (y.descends) {
        r = downward(t, y.node, y.neighbor, x.node, u, calls, EdgeAnswer::Y, EdgeAnswer::X);
    } else {
        ++calls;
        if (t.leq_unchecked(x.node, u)) {
            r = EdgeAnswer::X;
        } else {
            ++calls;
            r = t.leq_unchecked(y.node, u) ? EdgeAnswer::Y : EdgeAnswer::Here;
        }
    }
    if (leq_calls) *leq_calls += calls;
    return r;
}

PathEnd resolve_path_end(const HasseDiagram& h, Element x, Element y) {
    const UniverseTree& t = h.universe();
    if (t.leq(x, y)) {
        for (Element s : h.successors(x))
            if (t.leq_unchecked(s, y)) return {x, s, true};
        throw Error(ErrorCode::InvalidQuery, "no successor of x toward y");
    }
    return {x, h.pred(x), false};
}

static void check_query(const HasseDiagram& h, Element x, Element y, Element u) {
    if (!h.contains(x) || !h.contains(y)) throw Error(ErrorCode::InvalidQuery, "query endpoints must be members");
    if (x == y) throw Error(ErrorCode::InvalidQuery, "query endpoints must differ");
    if (!h.universe().valid(u)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(u));
}

EdgeAnswer edge_query_fast(const HasseDiagram& h, Element x, Element y, Element u) {
    check_query(h, x, y, u);
    return evaluate_edge_query(h.universe(), resolve_path_end(h, x, y), resolve_path_end(h, y, x), u);
}

EdgeAnswer edge_query_brute(const HasseDiagram& h, Element x, Element y, Element u) {
    check_query(h, x, y, u);
    return BruteEdgeOracle(h, u).answer(x, y);
}

BruteEdgeOracle::BruteEdgeOracle(const HasseDiagram& h, Element u) : h_(&h), u_(u) {
    const UniverseTree& t = h.universe();
    const std::size_t m = t.size();
    pred_.assign(m, kNone);
    depth_.assign(m, 0);
    auto in_s = [&](Element e) { return e == u || h.contains(e); };
    // Walk the universe top-down, carrying the nearest S' ancestor.
    std::vector<std::pair<Element, Element>> stack{{0, kNone}};
    while (!stack.empty()) {
        auto [v, above] = stack.back();
        stack.pop_back();
        Element carry = above;
        if (in_s(v)) {
            pred_[v] = above;
            depth_[v] = above == kNone ? 0 : depth_[above] + 1;
            carry = v;
        }
        for (Element c : t.children(v)) stack.emplace_back(c, carry);
    }
}

EdgeAnswer BruteEdgeOracle::answer(Element x, Element y) const {
    // Path x .. y in T_{S'}: climb both sides to their meeting point.
    std::vector<Element> left{x}, right{y};
    Element a = x, b = y;
    while (depth_[a] > depth_[b]) left.push_back(a = pred_[a]);
    while (depth_[b] > depth_[a]) right.push_back(b = pred_[b]);
    while (a != b) {
        left.push_back(a = pred_[a]);
        right.push_back(b = pred_[b]);
    }
    right.pop_back();
    std::vector<Element> path(left);
    path.insert(path.end(), right.rbegin(), right.rend());
    // path = x, x', ..., y', y. Removing (x,x') and (y',y) leaves three parts.
    const Element x1 = path[1];
    const Element y1 = path[path.size() - 2];
    auto cut = [&](Element c, Element p) {
        return (c == x && p == x1) || (c == x1 && p == x) || (c == y && p == y1) || (c == y1 && p == y);
    };
    // Climb from u until the walk crosses a cut edge or reaches x or y.
    // Crossing a cut edge upward from below x (or y) means u hangs under x (or y).
    Element v = u_;
    while (true) {
        if (v == x) return EdgeAnswer::X;
        if (v == y) return EdgeAnswer::Y;
        Element p = pred_[v];
        if (p == kNone) break;
        if (cut(v, p)) {
            // v is the lower end of a cut edge: v is one of x, x', y, y'.
            if (v == x1) return EdgeAnswer::Here;  // x ≺ x': everything under x' is middle
            if (v == y1) return EdgeAnswer::Here;
            break;
        }
        v = p;
    }
    // Reached the top without crossing: the component containing the root.
    // The root side belongs to whichever of x, y does not descend into the path.
    const bool x_down = pred_[x1] == x;  // x' is below x
    const bool y_down = pred_[y1] == y;
    if (x_down && !y_down) return EdgeAnswer::X;
    if (y_down && !x_down) return EdgeAnswer::Y;
    return EdgeAnswer::Here;
}

}  // namespace llt
