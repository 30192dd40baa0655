#pragma once

// Scalar building blocks shared by every kernel lane (the SIMD lanes use them
// for heads, tails and short buffers).

#include <cstddef>
#include <cstdint>

namespace sumcover::kernels::detail {

// Read cnt bits (1 <= cnt <= 64) starting at bit `off`, LSB-first. Never
// touches a word past the one holding bit off+cnt-1.
inline uint64_t read_bits(const uint64_t* src, size_t off, size_t cnt) {
    size_t w = off >> 6, b = off & 63;
    uint64_t lo = src[w] >> b;
    if (b && b + cnt > 64) lo |= src[w + 1] << (64 - b);
    if (cnt == 64) return lo;
    return lo & ((uint64_t(1) << cnt) - 1);
}

inline void or_bit_range_scalar(uint64_t* dst, size_t dst_off,
                                const uint64_t* src, size_t src_off,
                                size_t len) {
    if (len == 0) return;
    size_t head = dst_off & 63;
    if (head) {
        size_t take = len < 64 - head ? len : 64 - head;
        dst[dst_off >> 6] |= read_bits(src, src_off, take) << head;
        dst_off += take;
        src_off += take;
        len -= take;
        if (!len) return;
    }
    uint64_t* d = dst + (dst_off >> 6);
    size_t sw = src_off >> 6, sb = src_off & 63;
    size_t full = len >> 6;
    if (sb == 0) {
        for (size_t i = 0; i < full; ++i) d[i] |= src[sw + i];
    } else {
        for (size_t i = 0; i < full; ++i)
            d[i] |= (src[sw + i] >> sb) | (src[sw + i + 1] << (64 - sb));
    }
    if (size_t tail = len & 63)
        d[full] |= read_bits(src, src_off + (full << 6), tail);
}

inline void addmod_bytes_scalar(uint8_t* dst, const uint8_t* a,
                                const uint8_t* b, uint8_t p, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        uint8_t s = uint8_t(a[i] + b[i]);  // p <= 127: no wrap
        dst[i] = s >= p ? uint8_t(s - p) : s;
    }
}

inline void submod_bytes_scalar(uint8_t* dst, const uint8_t* a,
                                const uint8_t* b, uint8_t p, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        int t = int(a[i]) - int(b[i]);
        dst[i] = uint8_t(t < 0 ? t + p : t);
    }
}

}  // namespace sumcover::kernels::detail
