#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sumcover {

// Element of Z_{m_0} x ... x Z_{m_{d-1}}; residues[i] in [0, m_i).
using GroupElement = std::vector<uint32_t>;

// A finite abelian group presented as a product of cyclic factors. Axis 0 is
// the fastest-varying digit of the mixed-radix element index.
class GroupSpec {
  public:
    explicit GroupSpec(std::vector<uint64_t> moduli);

    const std::vector<uint64_t>& moduli() const { return moduli_; }
    size_t axes() const { return moduli_.size(); }
    uint64_t order() const { return order_; }
    uint64_t exponent() const { return exponent_; }

    // Invariant factor decomposition m'_0 | m'_1 | ... ; its length is the
    // minimal number of generators.
    const std::vector<uint64_t>& invariant_factors() const { return invariants_; }
    size_t rank() const { return invariants_.size(); }

    uint64_t index_of(const GroupElement& e) const;
    GroupElement element_at(uint64_t idx) const;

    GroupElement zero() const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement scaled(uint64_t c, const GroupElement& a) const;
    uint64_t element_order(const GroupElement& a) const;

    // Throws ValidationError unless e has one reduced residue per axis.
    void validate_element(const GroupElement& e) const;

    bool operator==(const GroupSpec& o) const { return moduli_ == o.moduli_; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    std::vector<uint64_t> moduli_;
    std::vector<uint64_t> strides_;
    std::vector<uint64_t> invariants_;
    uint64_t order_ = 1;
    uint64_t exponent_ = 1;
};

// Dense bitset over a group's element indices. Construction enforces the
// dense cap (see caps.hpp); larger groups go through the sparse paths in
// sumsets.hpp.
class ElementSet {
  public:
    explicit ElementSet(GroupSpec g);
    static ElementSet singleton(const GroupSpec& g, const GroupElement& e);
    static ElementSet full(const GroupSpec& g);

    const GroupSpec& group() const { return group_; }
    uint64_t size() const;
    bool empty() const { return size() == 0; }
    bool is_full() const { return size() == group_.order(); }

    bool contains(const GroupElement& e) const;
    bool contains_index(uint64_t idx) const;
    void insert(const GroupElement& e);
    void insert_index(uint64_t idx);

    void or_with(const ElementSet& o);
    void and_with(const ElementSet& o);
    bool operator==(const ElementSet& o) const;
    bool operator!=(const ElementSet& o) const { return !(*this == o); }

    // { s + g : s in this }
    ElementSet translated(const GroupElement& g) const;

    std::vector<uint64_t> indices() const;
    std::vector<GroupElement> elements() const;

    template <class F>
    void for_each_index(F f) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                unsigned tz = unsigned(__builtin_ctzll(bits));
                f(uint64_t(w) * 64 + tz);
                bits &= bits - 1;
            }
        }
    }

    const uint64_t* words() const { return words_.data(); }
    size_t word_count() const { return words_.size(); }

  private:
    GroupSpec group_;
    std::vector<uint64_t> words_;
};

// A list of group elements with duplicates allowed. Subset sums treat the
// items as distinguishable slots: two equal items contribute their double.
struct ElementMultiset {
    GroupSpec group;
    std::vector<GroupElement> items;

    ElementMultiset(GroupSpec g, std::vector<GroupElement> its);
    size_t size() const { return items.size(); }
};

// True iff the items of B generate the whole group (closure from 0 under
// adding items). Dense-capped.
bool generates(const ElementMultiset& B);

// The subgroup generated by B, as a dense set.
ElementSet generated_subgroup(const ElementMultiset& B);

}  // namespace sumcover
