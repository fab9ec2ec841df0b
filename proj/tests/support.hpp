#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "llt/workbench.hpp"

namespace llt::testing {

inline std::vector<Element> all_elements(const UniverseTree& u) {
    std::vector<Element> all(u.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

// A universe spelled with single-letter names. The first name is ν; each
// pair is (child, parent).
struct NamedUniverse {
    UniverseTree universe;
    std::map<char, Element> id;
    std::string name;  // by id

    Element operator[](char c) const { return id.at(c); }
};

inline NamedUniverse named_universe(const std::string& names, const std::vector<std::pair<char, char>>& edges) {
    NamedUniverse nu;
    nu.name = names;
    for (std::size_t i = 0; i < names.size(); ++i) nu.id[names[i]] = static_cast<Element>(i);
    std::vector<Element> parent(names.size(), kNone);
    for (auto [c, p] : edges) parent[nu.id.at(c)] = nu.id.at(p);
    nu.universe = UniverseTree::from_parents(parent);
    return nu;
}

// The 23-element tree used to illustrate static construction, rooted at F.
inline NamedUniverse worked_example() {
    return named_universe("FABCDEGHIJKLMNPRSTVWXYZ",
                          {{'C', 'F'}, {'A', 'C'}, {'B', 'C'}, {'D', 'F'}, {'E', 'F'}, {'G', 'F'}, {'H', 'G'},
                           {'I', 'H'}, {'J', 'I'}, {'K', 'J'}, {'L', 'K'}, {'M', 'L'}, {'N', 'L'}, {'Y', 'M'},
                           {'Z', 'M'}, {'P', 'F'}, {'R', 'P'}, {'S', 'R'}, {'T', 'S'}, {'V', 'T'}, {'W', 'R'},
                           {'X', 'W'}});
}

// Calls f(parents) for every increasing tree on m nodes.
template <class F>
void for_each_increasing_tree(std::size_t m, F&& f) {
    std::vector<Element> parent(m, 0);
    parent[0] = kNone;
    while (true) {
        f(parent);
        std::size_t i = m - 1;
        while (i >= 2 && parent[i] + 1 == i) parent[i--] = 0;
        if (i < 2) return;
        ++parent[i];
    }
}

inline std::vector<Element> subset_with_root(std::size_t m, unsigned mask) {
    std::vector<Element> s{0};
    for (std::size_t i = 1; i < m; ++i)
        if (mask >> (i - 1) & 1u) s.push_back(static_cast<Element>(i));
    return s;
}

}  // namespace llt::testing
