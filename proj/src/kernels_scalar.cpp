#include "sumcover/kernels.hpp"

#include "kernels_detail.hpp"

namespace sumcover::kernels {
namespace {

void or_words(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void and_words(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

bool equal_words(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t diff = 0;
    for (size_t i = 0; i < n; ++i) diff |= a[i] ^ b[i];
    return diff == 0;
}

uint64_t popcount_words(const uint64_t* a, size_t n) {
    uint64_t c = 0;
    for (size_t i = 0; i < n; ++i) c += uint64_t(__builtin_popcountll(a[i]));
    return c;
}

uint64_t popcount_and(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t c = 0;
    for (size_t i = 0; i < n; ++i)
        c += uint64_t(__builtin_popcountll(a[i] & b[i]));
    return c;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        or_words,
        and_words,
        equal_words,
        popcount_words,
        popcount_and,
        detail::or_bit_range_scalar,
        detail::addmod_bytes_scalar,
        detail::submod_bytes_scalar,
    };
    return ops;
}

}  // namespace sumcover::kernels
