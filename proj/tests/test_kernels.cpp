// Every lane must match the scalar reference bit for bit, including odd
// offsets and tails.
#include <doctest.h>

#include <random>
#include <vector>

#include "sumcover/kernels.hpp"

using namespace sumcover;

namespace {

std::vector<uint64_t> random_words(std::mt19937_64& eng, size_t n) {
    std::vector<uint64_t> v(n);
    for (auto& w : v) w = eng();
    return v;
}

std::vector<uint8_t> random_bytes(std::mt19937_64& eng, size_t n, uint8_t p) {
    std::vector<uint8_t> v(n);
    for (auto& b : v) b = static_cast<uint8_t>(eng() % p);
    return v;
}

}  // namespace

TEST_CASE("word ops agree across lanes") {
    std::mt19937_64 eng(7);
    const auto& ref = kernels::scalar_ops();
    for (const auto* lane : kernels::available()) {
        for (size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
            auto a = random_words(eng, n);
            auto b = random_words(eng, n);

            auto d1 = a, d2 = a;
            ref.or_words(d1.data(), b.data(), n);
            lane->or_words(d2.data(), b.data(), n);
            CHECK(d1 == d2);

            d1 = a, d2 = a;
            ref.and_words(d1.data(), b.data(), n);
            lane->and_words(d2.data(), b.data(), n);
            CHECK(d1 == d2);

            CHECK(ref.popcount_words(a.data(), n) ==
                  lane->popcount_words(a.data(), n));
            CHECK(ref.popcount_and(a.data(), b.data(), n) ==
                  lane->popcount_and(a.data(), b.data(), n));
            CHECK(ref.equal_words(a.data(), b.data(), n) ==
                  lane->equal_words(a.data(), b.data(), n));
            CHECK(lane->equal_words(a.data(), a.data(), n));

            // single-bit difference must flip equality
            if (n > 0) {
                auto c = a;
                c[eng() % n] ^= uint64_t(1) << (eng() % 64);
                CHECK(ref.equal_words(a.data(), c.data(), n) ==
                      lane->equal_words(a.data(), c.data(), n));
            }
        }
    }
}

TEST_CASE("or_bit_range agrees across lanes and with a bit loop") {
    std::mt19937_64 eng(11);
    const auto& ref = kernels::scalar_ops();
    for (const auto* lane : kernels::available()) {
        for (int t = 0; t < 200; ++t) {
            size_t words = 1 + eng() % 20;
            size_t total = words * 64;
            auto src = random_words(eng, words);
            auto base = random_words(eng, words);

            size_t len = 1 + eng() % (total - 1);
            size_t src_off = eng() % (total - len + 1);
            size_t dst_off = eng() % (total - len + 1);

            auto want = base;
            for (size_t i = 0; i < len; ++i) {
                size_t s = src_off + i, d = dst_off + i;
                uint64_t bit = (src[s / 64] >> (s % 64)) & 1;
                want[d / 64] |= bit << (d % 64);
            }

            auto got_ref = base, got_lane = base;
            ref.or_bit_range(got_ref.data(), dst_off, src.data(), src_off, len);
            lane->or_bit_range(got_lane.data(), dst_off, src.data(), src_off, len);
            CHECK(got_ref == want);
            CHECK(got_lane == want);
        }
    }
}

TEST_CASE("mod-p byte ops agree across lanes and with integer arithmetic") {
    std::mt19937_64 eng(13);
    const auto& ref = kernels::scalar_ops();
    for (const auto* lane : kernels::available()) {
        for (uint8_t p : {2, 3, 5, 7, 31, 127}) {
            for (size_t n : {0u, 1u, 15u, 16u, 17u, 33u, 100u}) {
                auto a = random_bytes(eng, n, p);
                auto b = random_bytes(eng, n, p);
                std::vector<uint8_t> want_add(n), want_sub(n);
                for (size_t i = 0; i < n; ++i) {
                    want_add[i] = static_cast<uint8_t>((a[i] + b[i]) % p);
                    want_sub[i] = static_cast<uint8_t>((a[i] + p - b[i]) % p);
                }
                std::vector<uint8_t> got(n);
                ref.addmod_bytes(got.data(), a.data(), b.data(), p, n);
                CHECK(got == want_add);
                lane->addmod_bytes(got.data(), a.data(), b.data(), p, n);
                CHECK(got == want_add);
                ref.submod_bytes(got.data(), a.data(), b.data(), p, n);
                CHECK(got == want_sub);
                lane->submod_bytes(got.data(), a.data(), b.data(), p, n);
                CHECK(got == want_sub);
            }
        }
    }
}

TEST_CASE("active lane is one of the available lanes") {
    const auto& act = kernels::active();
    bool found = false;
    for (const auto* lane : kernels::available())
        if (lane == &act) found = true;
    CHECK(found);
    CHECK(kernels::available().size() >= 1);
}
