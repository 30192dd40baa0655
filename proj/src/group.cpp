#include "sumcover/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "sumcover/caps.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/kernels.hpp"

namespace sumcover {

GroupSpec::GroupSpec(std::vector<uint64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty())
        throw ValidationError("group needs at least one cyclic factor");
    strides_.reserve(moduli_.size());
    for (uint64_t m : moduli_) {
        if (m < 2) throw ValidationError("cyclic factor moduli must be >= 2");
        if (m > (uint64_t(1) << 32))
            throw ValidationError("cyclic factor modulus exceeds 2^32");
        strides_.push_back(order_);
        unsigned __int128 next = (unsigned __int128)order_ * m;
        if (next > ~uint64_t(0))
            throw ValidationError("group order exceeds 2^64");
        order_ = uint64_t(next);
        exponent_ = std::lcm(exponent_, m);
    }

    // Invariant factors: per prime, sort the prime-power exponents of the
    // moduli descending; the j-th factor multiplies the j-th largest power of
    // every prime. Divisibility m'_0 | m'_1 | ... follows.
    std::map<uint64_t, std::vector<unsigned>> prime_exps;
    for (uint64_t m : moduli_) {
        uint64_t rest = m;
        for (uint64_t q = 2; q * q <= rest; ++q) {
            if (rest % q) continue;
            unsigned e = 0;
            while (rest % q == 0) rest /= q, ++e;
            prime_exps[q].push_back(e);
        }
        if (rest > 1) prime_exps[rest].push_back(1);
    }
    size_t count = 0;
    for (auto& [q, exps] : prime_exps) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        count = std::max(count, exps.size());
    }
    std::vector<uint64_t> factors(count, 1);
    for (auto& [q, exps] : prime_exps)
        for (size_t j = 0; j < exps.size(); ++j)
            for (unsigned e = 0; e < exps[j]; ++e) factors[j] *= q;
    std::reverse(factors.begin(), factors.end());
    invariants_ = std::move(factors);
}

void GroupSpec::validate_element(const GroupElement& e) const {
    if (e.size() != moduli_.size())
        throw ValidationError("element has " + std::to_string(e.size()) +
                              " residues, group has " +
                              std::to_string(moduli_.size()) + " factors");
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] >= moduli_[i])
            throw ValidationError("residue " + std::to_string(e[i]) +
                                  " out of range for modulus " +
                                  std::to_string(moduli_[i]));
}

uint64_t GroupSpec::index_of(const GroupElement& e) const {
    validate_element(e);
    uint64_t idx = 0;
    for (size_t i = 0; i < e.size(); ++i) idx += uint64_t(e[i]) * strides_[i];
    return idx;
}

GroupElement GroupSpec::element_at(uint64_t idx) const {
    if (idx >= order_) throw ValidationError("element index out of range");
    GroupElement e(moduli_.size());
    for (size_t i = 0; i < moduli_.size(); ++i) {
        e[i] = uint32_t(idx % moduli_[i]);
        idx /= moduli_[i];
    }
    return e;
}

GroupElement GroupSpec::zero() const { return GroupElement(moduli_.size(), 0); }

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
    validate_element(a);
    validate_element(b);
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t s = uint64_t(a[i]) + b[i];
        r[i] = uint32_t(s >= moduli_[i] ? s - moduli_[i] : s);
    }
    return r;
}

GroupElement GroupSpec::sub(const GroupElement& a, const GroupElement& b) const {
    validate_element(a);
    validate_element(b);
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = int64_t(a[i]) - int64_t(b[i]);
        r[i] = uint32_t(d < 0 ? d + int64_t(moduli_[i]) : d);
    }
    return r;
}

GroupElement GroupSpec::neg(const GroupElement& a) const { return sub(zero(), a); }

GroupElement GroupSpec::scaled(uint64_t c, const GroupElement& a) const {
    validate_element(a);
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = uint32_t((unsigned __int128)c * a[i] % moduli_[i]);
    return r;
}

uint64_t GroupSpec::element_order(const GroupElement& a) const {
    validate_element(a);
    uint64_t ord = 1;
    for (size_t i = 0; i < a.size(); ++i)
        ord = std::lcm(ord, moduli_[i] / std::gcd(moduli_[i], uint64_t(a[i])));
    return ord;
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < moduli_.size(); ++i) {
        if (i) os << " x ";
        os << "Z" << moduli_[i];
    }
    return os.str();
}

// ---------------------------------------------------------------------------

ElementSet::ElementSet(GroupSpec g) : group_(std::move(g)) {
    if (group_.order() > max_group_order())
        throw ScaleError("group order " + std::to_string(group_.order()) +
                         " exceeds dense cap " +
                         std::to_string(max_group_order()) +
                         " (SUMCOVER_MAX_GROUP_ORDER)");
    words_.assign((group_.order() + 63) / 64, 0);
}

ElementSet ElementSet::singleton(const GroupSpec& g, const GroupElement& e) {
    ElementSet s(g);
    s.insert(e);
    return s;
}

ElementSet ElementSet::full(const GroupSpec& g) {
    ElementSet s(g);
    std::fill(s.words_.begin(), s.words_.end(), ~uint64_t(0));
    if (uint64_t tail = g.order() & 63)
        s.words_.back() = (uint64_t(1) << tail) - 1;
    return s;
}

uint64_t ElementSet::size() const {
    return kernels::active().popcount_words(words_.data(), words_.size());
}

bool ElementSet::contains_index(uint64_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1;
}

bool ElementSet::contains(const GroupElement& e) const {
    return contains_index(group_.index_of(e));
}

void ElementSet::insert_index(uint64_t idx) {
    if (idx >= group_.order())
        throw ValidationError("element index out of range");
    words_[idx >> 6] |= uint64_t(1) << (idx & 63);
}

void ElementSet::insert(const GroupElement& e) {
    uint64_t idx = group_.index_of(e);
    words_[idx >> 6] |= uint64_t(1) << (idx & 63);
}

void ElementSet::or_with(const ElementSet& o) {
    if (group_ != o.group_)
        throw ValidationError("set union across different groups");
    kernels::active().or_words(words_.data(), o.words_.data(), words_.size());
}

void ElementSet::and_with(const ElementSet& o) {
    if (group_ != o.group_)
        throw ValidationError("set intersection across different groups");
    kernels::active().and_words(words_.data(), o.words_.data(), words_.size());
}

bool ElementSet::operator==(const ElementSet& o) const {
    return group_ == o.group_ &&
           kernels::active().equal_words(words_.data(), o.words_.data(),
                                         words_.size());
}

ElementSet ElementSet::translated(const GroupElement& g) const {
    group_.validate_element(g);
    const auto& ops = kernels::active();
    const auto& moduli = group_.moduli();
    uint64_t order = group_.order();

    // One cyclic bit-rotation pass per shifted axis. Within each window of
    // `stride * m` bits the translation by g[axis] is a rotation by
    // g[axis] * stride.
    std::vector<uint64_t> cur = words_, next(words_.size());
    uint64_t stride = 1;
    for (size_t axis = 0; axis < moduli.size(); ++axis) {
        uint64_t m = moduli[axis];
        uint64_t window = stride * m;
        if (g[axis]) {
            uint64_t shift = uint64_t(g[axis]) * stride;
            std::fill(next.begin(), next.end(), 0);
            for (uint64_t w = 0; w < order; w += window) {
                ops.or_bit_range(next.data(), w + shift, cur.data(), w,
                                 window - shift);
                ops.or_bit_range(next.data(), w, cur.data(), w + window - shift,
                                 shift);
            }
            cur.swap(next);
        }
        stride = window;
    }
    ElementSet out(group_);
    out.words_ = std::move(cur);
    return out;
}

std::vector<uint64_t> ElementSet::indices() const {
    std::vector<uint64_t> v;
    v.reserve(size_t(size()));
    for_each_index([&](uint64_t i) { v.push_back(i); });
    return v;
}

std::vector<GroupElement> ElementSet::elements() const {
    std::vector<GroupElement> v;
    v.reserve(size_t(size()));
    for_each_index([&](uint64_t i) { v.push_back(group_.element_at(i)); });
    return v;
}

// ---------------------------------------------------------------------------

ElementMultiset::ElementMultiset(GroupSpec g, std::vector<GroupElement> its)
    : group(std::move(g)), items(std::move(its)) {
    for (const auto& e : items) group.validate_element(e);
}

ElementSet generated_subgroup(const ElementMultiset& B) {
    ElementSet seen(B.group);
    seen.insert_index(0);
    std::vector<uint64_t> frontier{0};
    std::vector<uint64_t> item_idx;
    item_idx.reserve(B.items.size());
    for (const auto& e : B.items) item_idx.push_back(B.group.index_of(e));

    while (!frontier.empty()) {
        std::vector<uint64_t> nxt;
        for (uint64_t cur : frontier) {
            GroupElement ce = B.group.element_at(cur);
            for (const auto& e : B.items) {
                uint64_t ni = B.group.index_of(B.group.add(ce, e));
                if (!seen.contains_index(ni)) {
                    seen.insert_index(ni);
                    nxt.push_back(ni);
                }
            }
        }
        frontier.swap(nxt);
    }
    return seen;
}

bool generates(const ElementMultiset& B) {
    return generated_subgroup(B).is_full();
}

}  // namespace sumcover
