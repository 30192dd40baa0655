#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sumcover::kernels {

// Word/byte kernels behind the set and cube-walk hot loops. Each lane
// provides the same table; scalar is the reference semantics, the SIMD lanes
// must match it bit for bit (see tests/test_kernels.cpp).
struct Ops {
    const char* name;

    // dst[i] |= src[i], dst[i] &= src[i]
    void (*or_words)(uint64_t* dst, const uint64_t* src, size_t n);
    void (*and_words)(uint64_t* dst, const uint64_t* src, size_t n);
    bool (*equal_words)(const uint64_t* a, const uint64_t* b, size_t n);
    uint64_t (*popcount_words)(const uint64_t* a, size_t n);
    uint64_t (*popcount_and)(const uint64_t* a, const uint64_t* b, size_t n);

    // OR `len` bits of src starting at bit src_off into dst starting at bit
    // dst_off. Bits are numbered LSB-first within each word. dst and src must
    // be distinct buffers.
    void (*or_bit_range)(uint64_t* dst, size_t dst_off,
                         const uint64_t* src, size_t src_off, size_t len);

    // dst[i] = (a[i] +/- b[i]) mod p. Requires 2 <= p <= 127 and inputs
    // already reduced; every sum then fits a byte without wrap.
    void (*addmod_bytes)(uint8_t* dst, const uint8_t* a, const uint8_t* b,
                         uint8_t p, size_t n);
    void (*submod_bytes)(uint8_t* dst, const uint8_t* a, const uint8_t* b,
                         uint8_t p, size_t n);
};

const Ops& scalar_ops();

// Best lane the host supports. SUMCOVER_KERNELS={scalar,avx2,neon} forces a
// lane; forcing an unsupported lane falls back to scalar.
const Ops& active();

// Every lane usable on this host (always includes scalar). For tests.
std::vector<const Ops*> available();

}  // namespace sumcover::kernels
