// NEON lane (aarch64; NEON is baseline there). Bit-range copies stay scalar:
// the shift-pair trick buys little at the buffer sizes we see on aarch64 hosts.

#include <arm_neon.h>

#include "sumcover/kernels.hpp"

#include "kernels_detail.hpp"

namespace sumcover::kernels {
namespace {

void or_words(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t d = vld1q_u64(dst + i);
        uint64x2_t s = vld1q_u64(src + i);
        vst1q_u64(dst + i, vorrq_u64(d, s));
    }
    for (; i < n; ++i) dst[i] |= src[i];
}

void and_words(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t d = vld1q_u64(dst + i);
        uint64x2_t s = vld1q_u64(src + i);
        vst1q_u64(dst + i, vandq_u64(d, s));
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

bool equal_words(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t i = 0;
    uint64x2_t acc = vdupq_n_u64(0);
    for (; i + 2 <= n; i += 2) {
        acc = vorrq_u64(acc, veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    }
    uint64_t diff = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) diff |= a[i] ^ b[i];
    return diff == 0;
}

uint64_t popcount_words(const uint64_t* a, size_t n) {
    uint64_t c = 0;
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(a + i));
        c += vaddvq_u8(vcntq_u8(v));
    }
    for (; i < n; ++i) c += uint64_t(__builtin_popcountll(a[i]));
    return c;
}

uint64_t popcount_and(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t c = 0;
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        c += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
    }
    for (; i < n; ++i) c += uint64_t(__builtin_popcountll(a[i] & b[i]));
    return c;
}

void addmod_bytes(uint8_t* dst, const uint8_t* a, const uint8_t* b, uint8_t p,
                  size_t n) {
    const uint8x16_t pv = vdupq_n_u8(p);
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t s = vaddq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
        uint8x16_t ge = vcgeq_u8(s, pv);
        vst1q_u8(dst + i, vsubq_u8(s, vandq_u8(ge, pv)));
    }
    detail::addmod_bytes_scalar(dst + i, a + i, b + i, p, n - i);
}

void submod_bytes(uint8_t* dst, const uint8_t* a, const uint8_t* b, uint8_t p,
                  size_t n) {
    const uint8x16_t pv = vdupq_n_u8(p);
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t av = vld1q_u8(a + i);
        uint8x16_t bv = vld1q_u8(b + i);
        uint8x16_t d = vsubq_u8(av, bv);  // wraps when a < b
        uint8x16_t lt = vcltq_u8(av, bv);
        vst1q_u8(dst + i, vaddq_u8(d, vandq_u8(lt, pv)));
    }
    detail::submod_bytes_scalar(dst + i, a + i, b + i, p, n - i);
}

}  // namespace

const Ops& neon_ops() {
    static const Ops ops = {
        "neon",
        or_words,
        and_words,
        equal_words,
        popcount_words,
        popcount_and,
        detail::or_bit_range_scalar,
        addmod_bytes,
        submod_bytes,
    };
    return ops;
}

}  // namespace sumcover::kernels
