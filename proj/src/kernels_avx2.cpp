// AVX2 lane. Built only on x86_64 (this file gets -mavx2); callers must
// check cpu support before selecting it.

#include <immintrin.h>

#include "sumcover/kernels.hpp"

#include "kernels_detail.hpp"

namespace sumcover::kernels {
namespace {

void or_words(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_or_si256(d, s));
    }
    for (; i < n; ++i) dst[i] |= src[i];
}

void and_words(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_and_si256(d, s));
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

bool equal_words(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_or_si256(acc, _mm256_xor_si256(x, y));
    }
    if (!_mm256_testz_si256(acc, acc)) return false;
    uint64_t diff = 0;
    for (; i < n; ++i) diff |= a[i] ^ b[i];
    return diff == 0;
}

// Nibble-LUT popcount; returns four u64 partial sums.
inline __m256i popcount256(__m256i v) {
    const __m256i lut =
        _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                  _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline uint64_t hsum_epi64(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi64(lo, hi);
    return uint64_t(_mm_cvtsi128_si64(s)) +
           uint64_t(_mm_extract_epi64(s, 1));
}

uint64_t popcount_words(const uint64_t* a, size_t n) {
    size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    uint64_t c = hsum_epi64(acc);
    for (; i < n; ++i) c += uint64_t(__builtin_popcountll(a[i]));
    return c;
}

uint64_t popcount_and(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= n; i += 4) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(x, y)));
    }
    uint64_t c = hsum_epi64(acc);
    for (; i < n; ++i) c += uint64_t(__builtin_popcountll(a[i] & b[i]));
    return c;
}

void or_bit_range(uint64_t* dst, size_t dst_off, const uint64_t* src,
                  size_t src_off, size_t len) {
    if (len == 0) return;
    size_t head = dst_off & 63;
    if (head) {
        size_t take = len < 64 - head ? len : 64 - head;
        dst[dst_off >> 6] |= detail::read_bits(src, src_off, take) << head;
        dst_off += take;
        src_off += take;
        len -= take;
        if (!len) return;
    }
    uint64_t* d = dst + (dst_off >> 6);
    size_t sw = src_off >> 6, sb = src_off & 63;
    size_t full = len >> 6;
    size_t i = 0;
    if (sb == 0) {
        for (; i + 4 <= full; i += 4) {
            __m256i cur = _mm256_loadu_si256(reinterpret_cast<__m256i*>(d + i));
            __m256i s =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + sw + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i),
                                _mm256_or_si256(cur, s));
        }
        for (; i < full; ++i) d[i] |= src[sw + i];
    } else {
        // d[i] |= src[sw+i] >> sb | src[sw+i+1] << (64-sb). The +1 load stays
        // in bounds: word sw+full is required whenever sb != 0.
        for (; i + 4 <= full; i += 4) {
            __m256i lo =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + sw + i));
            __m256i hi = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(src + sw + i + 1));
            __m256i bits = _mm256_or_si256(_mm256_srli_epi64(lo, int(sb)),
                                           _mm256_slli_epi64(hi, int(64 - sb)));
            __m256i cur = _mm256_loadu_si256(reinterpret_cast<__m256i*>(d + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i),
                                _mm256_or_si256(cur, bits));
        }
        for (; i < full; ++i)
            d[i] |= (src[sw + i] >> sb) | (src[sw + i + 1] << (64 - sb));
    }
    if (size_t tail = len & 63)
        d[full] |= detail::read_bits(src, src_off + (full << 6), tail);
}

void addmod_bytes(uint8_t* dst, const uint8_t* a, const uint8_t* b, uint8_t p,
                  size_t n) {
    const __m256i pv = _mm256_set1_epi8(char(p));
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i s = _mm256_add_epi8(av, bv);
        __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(s, pv), s);  // s >= p
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_sub_epi8(s, _mm256_and_si256(ge, pv)));
    }
    detail::addmod_bytes_scalar(dst + i, a + i, b + i, p, n - i);
}

void submod_bytes(uint8_t* dst, const uint8_t* a, const uint8_t* b, uint8_t p,
                  size_t n) {
    const __m256i pv = _mm256_set1_epi8(char(p));
    const __m256i zero = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i d = _mm256_sub_epi8(av, bv);  // wraps when a < b
        __m256i no_borrow = _mm256_cmpeq_epi8(_mm256_subs_epu8(bv, av), zero);
        _mm256_storeu_si256(
            reinterpret_cast<__m256i*>(dst + i),
            _mm256_add_epi8(d, _mm256_andnot_si256(no_borrow, pv)));
    }
    detail::submod_bytes_scalar(dst + i, a + i, b + i, p, n - i);
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        or_words,
        and_words,
        equal_words,
        popcount_words,
        popcount_and,
        or_bit_range,
        addmod_bytes,
        submod_bytes,
    };
    return ops;
}

}  // namespace sumcover::kernels
