#pragma once

#include <span>
#include <vector>

#include "llt/universe.hpp"

namespace llt {

// Dynamic member set S ⊆ universe with its Hasse diagram H_S. ν is always a
// member; every other member has exactly one predecessor.
class HasseDiagram {
public:
    struct Attachment {
        Element pred = kNone;
        std::vector<Element> moved;  // successors of pred re-hung under the new element
    };

    explicit HasseDiagram(const UniverseTree& universe);
    HasseDiagram(const UniverseTree& universe, std::span<const Element> members);

    const UniverseTree& universe() const noexcept { return *universe_; }
    std::size_t size() const noexcept { return count_; }
    bool contains(Element e) const { return universe_->valid(e) && member_[e]; }

    Element pred(Element e) const;
    const std::vector<Element>& successors(Element e) const;
    std::vector<Element> members() const;

    // Deepest member m ⪯ u; u itself when u is a member.
    Element predecessor_in_S(Element u) const;

    // What attach(u) would do, without mutating.
    Attachment plan_attach(Element u) const;
    Attachment attach(Element u);
    // Returns the former predecessor and the successors handed to it.
    Attachment detach(Element u);

    // Degree of e in the undirected T_S.
    std::size_t degree(Element e) const;

    friend bool operator==(const HasseDiagram& a, const HasseDiagram& b) {
        return a.universe_ == b.universe_ && a.member_ == b.member_ && a.pred_ == b.pred_ && a.succ_ == b.succ_;
    }

private:
    void require_member(Element e) const;

    const UniverseTree* universe_;
    std::vector<char> member_;
    std::vector<Element> pred_;
    std::vector<std::vector<Element>> succ_;
    std::size_t count_ = 0;
};

}  // namespace llt
