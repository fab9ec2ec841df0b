#include <doctest.h>

#include "support.hpp"

using namespace llt;

namespace {

// Path 0-1-2-3-4 with one plain query per Hasse edge.
struct PathFixture {
    Structures st{5};
    std::vector<Key> edge;  // edge[i] spans i .. i+1, near end at i

    PathFixture() {
        for (Element i = 0; i < 4; ++i) {
            const RecordId r = st.new_record(i, i + 1);
            // Upper end is end 0, so the near end at the upper node is 0.
            edge.push_back(Key{st.new_edge_query(r), 0});
        }
    }
    Seg whole() {
        Seg s = Structures::single(edge[0]);
        for (Element i = 1; i < 4; ++i) s = st.concat(s, i, Structures::single(edge[i]));
        return s;
    }
};

}  // namespace

TEST_CASE("plain queries resolve to their Hasse edge") {
    PathFixture f;
    const Key k = f.edge[2];
    CHECK(f.st.near_node(k) == 2);
    CHECK(f.st.far_node(k) == 3);
    CHECK(f.st.near_node(Key{k.q, 1}) == 3);
    CHECK(f.st.live_queries() == 4);
}

TEST_CASE("make_key and take are inverse on a segment") {
    PathFixture f;
    const Key k = f.st.make_key(f.whole());
    CHECK(f.st.near_node(k) == 0);
    CHECK(f.st.far_node(k) == 4);
    CHECK(f.st.query(k.q).interior == std::vector<Element>{1, 2, 3});
    CHECK(f.st.live_queries() == 5);

    const Seg back = f.st.take(Key{k.q, 1});
    CHECK(back.interior == std::vector<Element>{3, 2, 1});
    CHECK(f.st.live_queries() == 4);
    CHECK(f.st.near_node(back.keys.front()) == 4);
    CHECK(f.st.far_node(back.keys.back()) == 0);
}

TEST_CASE("a lone key is its own segment") {
    PathFixture f;
    const Key k = f.st.make_key(Structures::single(f.edge[1]));
    CHECK(k == f.edge[1]);
    const Seg s = f.st.take(k);
    CHECK(s.interior.empty());
    CHECK(f.st.query_alive(k.q));
}

TEST_CASE("split_at cuts the path at an interior node") {
    PathFixture f;
    const Key k = f.st.make_key(f.whole());
    auto [left, right] = f.st.split_at(k.q, 2, 0);
    CHECK(left.interior == std::vector<Element>{1});
    CHECK(right.interior == std::vector<Element>{3});
    CHECK(left.keys.size() == 2);
    CHECK(right.keys.size() == 2);
    CHECK_THROWS_AS(f.st.split_at(f.edge[0].q, 7, 0), Error);
}

TEST_CASE("renaming an endpoint is seen by every query on the edge") {
    PathFixture f;
    const Key outer = f.st.make_key(f.whole());
    const RecordId last = f.st.query(f.edge[3].q).end[1].record;
    f.st.rename_endpoint(last, 4, 2);
    CHECK(f.st.far_node(f.edge[3]) == 2);
    CHECK(f.st.far_node(outer) == 2);
}

TEST_CASE("malformed segments are rejected") {
    PathFixture f;
    Seg bad = f.whole();
    bad.interior.pop_back();
    CHECK_THROWS_AS(f.st.make_key(bad), Error);
    CHECK_THROWS_AS(f.st.make_key(Seg{}), Error);
}

TEST_CASE("LSTs stay sorted by non-increasing round") {
    // Star centred at 0 with leaves 1..4.
    Structures st(5);
    std::vector<Key> to(5);
    for (Element i = 1; i < 5; ++i) to[i] = Key{st.new_edge_query(st.new_record(0, i)), 0};
    st.node(1).round = 1;
    st.node(2).round = 3;
    st.node(3).round = 2;
    st.node(4).round = 1;
    for (Element i = 1; i < 5; ++i) st.lst_insert(0, to[i]);

    std::vector<Element> order;
    for (const Key& k : st.node(0).lst) order.push_back(st.far_node(k));
    CHECK(order == std::vector<Element>{2, 3, 4, 1});
    CHECK(st.mu(0, 1) == 3);
    CHECK(st.mu(0, 2) == 2);
    CHECK(st.mu(0, 4) == 1);
    CHECK(st.mu(0, 5) == 0);
    CHECK(st.rho(0, 1) == 2);
    CHECK(st.node(3).parent == 0);

    const Key gone = st.lst_remove(0, to[3].q);
    CHECK(gone == to[3]);
    CHECK(st.mu(0, 2) == 1);
    CHECK(st.rho(0, 2) == 4);
    CHECK_THROWS_AS(st.lst_remove(0, to[3].q), Error);
    // Round 1 in front of a round 3 entry would break the order.
    CHECK_THROWS_AS(st.lst_push_front(0, to[3]), Error);
    CHECK(st.lst_pop_front(0) == to[2]);
}
