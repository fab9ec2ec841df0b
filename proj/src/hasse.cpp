#include "llt/hasse.hpp"

#include <algorithm>

namespace llt {

HasseDiagram::HasseDiagram(const UniverseTree& universe)
    : universe_(&universe),
      member_(universe.size(), 0),
      pred_(universe.size(), kNone),
      succ_(universe.size()) {
    member_[0] = 1;
    count_ = 1;
}

HasseDiagram::HasseDiagram(const UniverseTree& universe, std::span<const Element> members)
    : HasseDiagram(universe) {
    for (Element e : members) {
        if (!universe.valid(e)) throw Error(ErrorCode::InvalidElement, "member " + std::to_string(e));
        if (!member_[e]) {
            member_[e] = 1;
            ++count_;
        }
    }
    // One top-down pass: nearest member ancestor is carried down the DFS.
    std::vector<std::pair<Element, Element>> stack{{0, kNone}};
    while (!stack.empty()) {
        auto [v, above] = stack.back();
        stack.pop_back();
        Element carry = above;
        if (member_[v]) {
            pred_[v] = above;
            if (above != kNone) succ_[above].push_back(v);
            carry = v;
        }
        for (Element c : universe.children(v)) stack.emplace_back(c, carry);
    }
    for (auto& s : succ_) std::sort(s.begin(), s.end());
}

void HasseDiagram::require_member(Element e) const {
    if (!universe_->valid(e)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(e));
    if (!member_[e]) throw Error(ErrorCode::NotFound, "element " + std::to_string(e) + " not in S");
}

Element HasseDiagram::pred(Element e) const {
    require_member(e);
    return pred_[e];
}

const std::vector<Element>& HasseDiagram::successors(Element e) const {
    require_member(e);
    return succ_[e];
}

std::vector<Element> HasseDiagram::members() const {
    std::vector<Element> out;
    out.reserve(count_);
    for (Element e = 0; e < member_.size(); ++e)
        if (member_[e]) out.push_back(e);
    return out;
}

Element HasseDiagram::predecessor_in_S(Element u) const {
    if (!universe_->valid(u)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(u));
    Element v = u;
    while (!member_[v]) v = universe_->parent(v);
    return v;
}

HasseDiagram::Attachment HasseDiagram::plan_attach(Element u) const {
    if (!universe_->valid(u)) throw Error(ErrorCode::InvalidElement, "element " + std::to_string(u));
    if (member_[u]) throw Error(ErrorCode::Duplicate, "element " + std::to_string(u) + " already in S");
    Attachment a;
    a.pred = predecessor_in_S(u);
    for (Element d : succ_[a.pred])
        if (universe_->leq_unchecked(u, d)) a.moved.push_back(d);
    return a;
}

HasseDiagram::Attachment HasseDiagram::attach(Element u) {
    Attachment a = plan_attach(u);
    auto& ps = succ_[a.pred];
    std::erase_if(ps, [&](Element d) { return universe_->leq_unchecked(u, d); });
    ps.insert(std::lower_bound(ps.begin(), ps.end(), u), u);
    for (Element d : a.moved) pred_[d] = u;
    succ_[u] = a.moved;  // already sorted
    pred_[u] = a.pred;
    member_[u] = 1;
    ++count_;
    return a;
}

HasseDiagram::Attachment HasseDiagram::detach(Element u) {
    require_member(u);
    if (u == universe_->root()) throw Error(ErrorCode::RootDeletion, "cannot delete ν");
    Attachment a;
    a.pred = pred_[u];
    a.moved = std::move(succ_[u]);
    succ_[u].clear();
    auto& ps = succ_[a.pred];
    ps.erase(std::lower_bound(ps.begin(), ps.end(), u));
    for (Element d : a.moved) {
        pred_[d] = a.pred;
        ps.insert(std::lower_bound(ps.begin(), ps.end(), d), d);
    }
    pred_[u] = kNone;
    member_[u] = 0;
    --count_;
    return a;
}

std::size_t HasseDiagram::degree(Element e) const {
    require_member(e);
    return succ_[e].size() + (pred_[e] == kNone ? 0 : 1);
}

}  // namespace llt
