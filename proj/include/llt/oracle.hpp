#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "llt/line_leaf_tree.hpp"

namespace llt {

// Canonical text form of the contraction metadata. Internal BST shape and
// the order inside equal-round LST runs are not part of it.
std::string signature(const LineLeafTree& t);

struct RebuildCheck {
    bool equal = true;
    std::string diff;  // first differing line of the two signatures
};
// Compare t against a fresh static build of its Hasse diagram, both after
// root normalisation. The diff is also written to `err` when given.
RebuildCheck check_rebuild(const LineLeafTree& t, std::ostream* err = nullptr);

// A tree on nodes 0..n-1 given by its edge list.
struct PlainTree {
    std::size_t n = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};
PlainTree plain_tree(const HasseDiagram& h);
PlainTree star_tree(std::size_t leaves);
PlainTree path_tree(std::size_t nodes);

inline constexpr std::size_t kOptBudget = 20;

struct OptResult {
    std::uint32_t height = 0;
    // First query of an optimal strategy as an index into edges; -1 for n = 1.
    int first_edge = -1;
};
// Exact minimum worst-case number of edge queries; throws TooLarge above
// kOptBudget nodes.
OptResult opt_height(const PlainTree& t);
// Same value by plain recursion without memoisation.
std::uint32_t opt_height_enumerate(const PlainTree& t);
std::uint32_t opt_lower_bound(const TreeShape& s);
std::uint32_t opt_lower_bound(const PlainTree& t);

}  // namespace llt
