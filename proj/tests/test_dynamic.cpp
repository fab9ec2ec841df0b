#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace llt;
using namespace llt::testing;

TEST_CASE("local correction identifies B and the stolen successors") {
    std::uint64_t checked = 0;
    for (std::size_t m = 2; m <= 7; ++m) {
        for_each_increasing_tree(m, [&](const std::vector<Element>& parent) {
            const UniverseTree u = UniverseTree::from_parents(parent);
            for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
                const HasseDiagram h(u, subset_with_root(m, mask));
                const LineLeafTree t = LineLeafTree::build(h);
                for (Element a = 1; a < m; ++a) {
                    if (h.contains(a)) continue;
                    const auto plan = h.plan_attach(a);
                    const StolenSets s = t.local_correction(a);
                    ++checked;
                    REQUIRE(s.b == plan.pred);
                    auto d = s.d;
                    std::sort(d.begin(), d.end());
                    REQUIRE(d == plan.moved);
                    if (t.structures().node(s.b).type == NodeType::Leaf || s.b == t.root())
                        REQUIRE(s.c.size() + s.kept.size() == t.structures().node(s.b).lst.size());
                }
            }
        });
    }
    CHECK(checked > 10000);
}

TEST_CASE("insert then erase restores the structure") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 150; ++round) {
        const std::size_t m = 3 + rng() % 40;
        const UniverseTree u = gen_increasing_tree(m, rng());
        std::vector<Element> s{0};
        for (Element e = 1; e < m; ++e)
            if (rng() % 2) s.push_back(e);
        LineLeafTree t = LineLeafTree::build(HasseDiagram(u, s));
        const std::string before = signature(t);
        const Element x = static_cast<Element>(1 + rng() % (m - 1));
        if (t.contains(x)) {
            t.erase(x);
            REQUIRE_FALSE(t.contains(x));
            t.insert(x);
        } else {
            t.insert(x);
            REQUIRE(t.contains(x));
            t.erase(x);
        }
        REQUIRE(signature(t) == before);
        REQUIRE(t.audit().empty());
    }
}

TEST_CASE("dynamic structure matches a static rebuild along a trace") {
    const UniverseTree u = gen_increasing_tree(60, 99);
    LineLeafTree t(u);
    std::mt19937_64 rng(4);
    for (int step = 0; step < 400; ++step) {
        const Element x = static_cast<Element>(1 + rng() % 59);
        if (t.contains(x))
            t.erase(x);
        else
            t.insert(x);
        const RebuildCheck rc = check_rebuild(t);
        REQUIRE_MESSAGE(rc.equal, rc.diff);
        for (Element q = 0; q < 60; ++q) REQUIRE(t.predecessor(q) == t.hasse().predecessor_in_S(q));
    }
}

TEST_CASE("building every element one at a time") {
    const UniverseTree u = gen_increasing_tree(300, 7);
    LineLeafTree t(u);
    for (Element x = 1; x < 300; ++x) t.insert(x);
    CHECK(check_rebuild(t).equal);
    CHECK(t.audit().empty());
    for (Element x = 299; x >= 1; --x) t.erase(x);
    CHECK(t.size() == 1);
    CHECK(t.structures().live_queries() == 0);
}

TEST_CASE("inserting J below B steals B's children") {
    // B has three successors; J sits above two of them.
    const auto nu = named_universe("ABJCDEF", {{'B', 'A'}, {'J', 'B'}, {'C', 'J'}, {'D', 'J'}, {'E', 'B'}, {'F', 'A'}});
    LineLeafTree t = LineLeafTree::build(
        HasseDiagram(nu.universe, std::vector<Element>{nu['A'], nu['B'], nu['C'], nu['D'], nu['E'], nu['F']}));
    const StolenSets s = t.local_correction(nu['J']);
    CHECK(s.b == nu['B']);
    auto d = s.d;
    std::sort(d.begin(), d.end());
    CHECK(d == std::vector<Element>{nu['C'], nu['D']});
    t.insert(nu['J']);
    CHECK(t.hasse().pred(nu['C']) == nu['J']);
    CHECK(t.hasse().successors(nu['B']) == std::vector<Element>{nu['J'], nu['E']});
    CHECK(check_rebuild(t).equal);
}

TEST_CASE("dynamic operation errors") {
    const UniverseTree u = gen_increasing_tree(10, 2);
    LineLeafTree t(u);
    t.insert(3);
    auto code = [&](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Config;
    };
    CHECK(code([&] { t.insert(3); }) == ErrorCode::Duplicate);
    CHECK(code([&] { t.erase(4); }) == ErrorCode::NotFound);
    CHECK(code([&] { t.erase(0); }) == ErrorCode::RootDeletion);
    CHECK(code([&] { t.insert(50); }) == ErrorCode::InvalidElement);
    CHECK(t.contains(3));
    CHECK(t.audit().empty());
}

TEST_CASE("a corrupted round is caught by the rebuild oracle") {
    const UniverseTree u = gen_increasing_tree(40, 12);
    LineLeafTree t = LineLeafTree::build(HasseDiagram(u, all_elements(u)));
    REQUIRE(check_rebuild(t).equal);
    Element victim = kNone;
    for (Element x = 1; x < 40 && victim == kNone; ++x)
        if (t.structures().node(x).round == 1) victim = x;
    REQUIRE(victim != kNone);
    t.mutable_node(victim).round = 7;
    std::ostringstream err;
    const RebuildCheck rc = check_rebuild(t, &err);
    CHECK_FALSE(rc.equal);
    CHECK(rc.diff.find("node " + std::to_string(victim) + " ") != std::string::npos);
    CHECK_FALSE(err.str().empty());
    CHECK_FALSE(t.audit().empty());
}

TEST_CASE("costs stay within their bounds") {
    const UniverseTree u = gen_increasing_tree(500, 31);
    LineLeafTree t = LineLeafTree::build(HasseDiagram(u, all_elements(u)));
    std::mt19937_64 rng(8);
    for (int step = 0; step < 300; ++step) {
        const Element x = static_cast<Element>(1 + rng() % 499);
        if (t.contains(x)) {
            const std::uint64_t bound = delete_cost_bound(tree_shape(t.hasse()));
            t.erase(x);
            REQUIRE(t.last_costs().delete_cost <= bound);
        } else {
            const std::uint64_t h = t.height();
            t.insert(x);
            REQUIRE(t.last_costs().insert_comparisons <= 8 * (h + 1));
        }
    }
}
