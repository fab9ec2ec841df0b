#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "llt/common.hpp"

namespace llt {

// The fixed rooted universe. Element 0 is the dummy minimum ν; a ⪯ b iff a is
// an ancestor of b (or equal), answered by preorder interval containment.
class UniverseTree {
public:
    UniverseTree() = default;

    // parent[0] must be kNone, every other entry a valid id; cycles rejected.
    static UniverseTree from_parents(std::vector<Element> parent);

    static UniverseTree read(std::istream& in);
    static UniverseTree load(const std::string& path);
    void write(std::ostream& out) const;

    std::size_t size() const noexcept { return parent_.size(); }
    Element root() const noexcept { return 0; }
    bool valid(Element e) const noexcept { return e < parent_.size(); }

    Element parent(Element e) const { check(e); return parent_[e]; }
    std::uint32_t depth(Element e) const { check(e); return depth_[e]; }
    std::uint32_t entry(Element e) const { check(e); return entry_[e]; }
    std::uint32_t exit(Element e) const { check(e); return exit_[e]; }
    const std::vector<Element>& children(Element e) const { check(e); return children_[e]; }

    bool leq(Element a, Element b) const {
        check(a);
        check(b);
        return entry_[a] <= entry_[b] && exit_[b] <= exit_[a];
    }
    // Unchecked variant for hot loops where ids are known to be valid.
    bool leq_unchecked(Element a, Element b) const noexcept {
        return entry_[a] <= entry_[b] && exit_[b] <= exit_[a];
    }

    std::uint32_t height() const noexcept { return height_; }

private:
    void check(Element e) const {
        if (e >= parent_.size()) {
            throw Error(ErrorCode::InvalidElement, "element " + std::to_string(e) + " out of range");
        }
    }

    std::vector<Element> parent_;
    std::vector<std::vector<Element>> children_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> entry_;
    std::vector<std::uint32_t> exit_;
    std::uint32_t height_ = 0;
};

}  // namespace llt
