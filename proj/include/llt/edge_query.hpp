#pragma once

#include <cstdint>
#include <vector>

#include "llt/hasse.hpp"

namespace llt {

enum class EdgeAnswer : std::uint8_t { X, Y, Here };

const char* to_string(EdgeAnswer a);

// One end of an x–y path in T_S: the endpoint and its neighbour on the path.
// `descends` is true when the neighbour is a successor of the endpoint.
struct PathEnd {
    Element node = kNone;
    Element neighbor = kNone;
    bool descends = false;
};

// Constant-comparison evaluation given both bookends (at most four ⪯ tests).
EdgeAnswer evaluate_edge_query(const UniverseTree& universe, const PathEnd& x, const PathEnd& y, Element u,
                               std::uint64_t* leq_calls = nullptr);

// Bookend of the x–y path at x, read off the Hasse diagram.
PathEnd resolve_path_end(const HasseDiagram& h, Element x, Element y);

EdgeAnswer edge_query_fast(const HasseDiagram& h, Element x, Element y, Element u);
EdgeAnswer edge_query_brute(const HasseDiagram& h, Element x, Element y, Element u);

// Reference oracle: materialises T_{S ∪ {u}} once and answers any (x, y).
class BruteEdgeOracle {
public:
    BruteEdgeOracle(const HasseDiagram& h, Element u);
    EdgeAnswer answer(Element x, Element y) const;

private:
    const HasseDiagram* h_;
    Element u_;
    std::vector<Element> pred_;  // predecessor in T_{S'}, kNone for ν and non-members
    std::vector<std::uint32_t> depth_;
};

}  // namespace llt
