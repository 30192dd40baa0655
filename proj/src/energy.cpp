#include "sumcover/energy.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <unordered_map>

#include "sumcover/caps.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/linalg.hpp"

namespace sumcover {
namespace {

mpz_class mpz_from_u128(unsigned __int128 v) {
    mpz_class hi((unsigned long)(v >> 64));
    mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
    return hi + mpz_class((unsigned long)(v & ~uint64_t(0)));
}

mpz_class pow2_mpz(unsigned e) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

}  // namespace

mpz_class additive_energy(const ElementSet& A) {
    const GroupSpec& g = A.group();
    std::vector<uint64_t> idxs = A.indices();
    if (idxs.empty()) return 0;

    size_t d = g.axes();
    const auto& mods = g.moduli();
    std::vector<uint64_t> strides(d);
    uint64_t st = 1;
    for (size_t i = 0; i < d; ++i) {
        strides[i] = st;
        st *= mods[i];
    }
    std::vector<uint32_t> res(idxs.size() * d);
    for (size_t i = 0; i < idxs.size(); ++i) {
        GroupElement e = g.element_at(idxs[i]);
        std::copy(e.begin(), e.end(), res.begin() + ptrdiff_t(i * d));
    }

    unsigned __int128 total = 0;
    auto accumulate = [&](auto& nu) {
        for (size_t i = 0; i < idxs.size(); ++i)
            for (size_t j = 0; j < idxs.size(); ++j) {
                uint64_t idx = 0;
                for (size_t t = 0; t < d; ++t) {
                    uint64_t s = uint64_t(res[i * d + t]) + res[j * d + t];
                    if (s >= mods[t]) s -= mods[t];
                    idx += s * strides[t];
                }
                ++nu[idx];
            }
        for (const auto& entry : nu) {
            uint64_t c;
            if constexpr (std::is_integral_v<std::decay_t<decltype(entry)>>)
                c = entry;
            else
                c = entry.second;
            total += (unsigned __int128)c * c;
        }
    };
    if (g.order() <= (uint64_t(1) << 22)) {
        std::vector<uint32_t> nu(g.order(), 0);
        accumulate(nu);
    } else {
        std::unordered_map<uint64_t, uint32_t> nu;
        nu.reserve(idxs.size() * 2);
        accumulate(nu);
    }
    return mpz_from_u128(total);
}

mpz_class additive_energy_z(const std::vector<IntVec>& A) {
    if (A.empty()) return 0;
    std::map<IntVec, uint64_t> nu;
    for (const auto& a : A)
        for (const auto& b : A) {
            IntVec s(a.size());
            for (size_t i = 0; i < a.size(); ++i)
                if (__builtin_add_overflow(a[i], b[i], &s[i]))
                    throw ScaleError("integer vector entry overflow");
            ++nu[s];
        }
    unsigned __int128 total = 0;
    for (const auto& [v, c] : nu) total += (unsigned __int128)c * c;
    return mpz_from_u128(total);
}

mpz_class independent_star_energy(unsigned n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 6, n);
    return r;
}

mpz_class independent_star_difference_count(const std::vector<int>& eps) {
    unsigned weight = 0;
    for (int e : eps) {
        if (e < -1 || e > 1)
            throw ValidationError("difference pattern entries must be -1, 0, 1");
        weight += unsigned(e != 0);
    }
    return pow2_mpz(unsigned(eps.size()) - weight);
}

// ---------------------------------------------------------------------------

bool SumsetEnergyBound::holds_for(const mpz_class& measured) const {
    return measured * measured * tt >= num * num;
}

std::string SumsetEnergyBound::approx_decimal(int digits) const {
    mpfr_t n, t;
    mpfr_init2(n, 256);
    mpfr_init2(t, 256);
    mpfr_set_z(n, num.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(t, tt.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_div(n, n, t, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, n);
    mpfr_clear(n);
    mpfr_clear(t);
    return buf;
}

SumsetEnergyBound sumset_energy_bound(const ElementSet& A, const ElementSet& B) {
    if (A.group() != B.group())
        throw ValidationError("energy bound across different groups");
    if (A.empty() || B.empty())
        throw ValidationError("energy bound needs non-empty sets");
    SumsetEnergyBound out;
    mpz_class sa((unsigned long)A.size()), sb((unsigned long)B.size());
    out.num = sa * sa * sb * sb;
    out.tt = additive_energy(A) * additive_energy(B);
    return out;
}

// ---------------------------------------------------------------------------

mpq_class char0_star_bound(const std::vector<size_t>& ranks) {
    mpz_class num = 1, den = 1;
    for (size_t j = 0; j < ranks.size(); ++j) {
        mpz_class bn, bd;
        mpz_ui_pow_ui(bn.get_mpz_t(), (unsigned long)(j + 2),
                      (unsigned long)ranks[j]);
        mpz_ui_pow_ui(bd.get_mpz_t(), (unsigned long)(j + 1),
                      (unsigned long)ranks[j]);
        num *= bn;
        den *= bd;
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class char0_star_bound_best(std::vector<size_t> ranks) {
    std::sort(ranks.begin(), ranks.end(), std::greater<>());
    return char0_star_bound(ranks);
}

bool OddCharBound::holds_for(const mpz_class& measured) const {
    mpz_class lhs = measured * measured, p3, p8;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, rank_sum);
    mpz_ui_pow_ui(p8.get_mpz_t(), 8, rank_sum);
    return lhs * p3 >= p8;
}

std::string OddCharBound::approx_decimal(int digits) const {
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_ui(x, 8, MPFR_RNDN);
    mpfr_div_ui(x, x, 3, MPFR_RNDN);
    mpfr_pow_ui(x, x, rank_sum, MPFR_RNDN);
    mpfr_sqrt(x, x, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x);
    mpfr_clear(x);
    return buf;
}

OddCharBound odd_char_star_bound(unsigned r1, unsigned r2) {
    return OddCharBound{r1 + r2};
}

Char3ExtremalPair char3_extremal_pair(unsigned l) {
    if (l < 1) throw ValidationError("pair parameter must be >= 1");
    if (2 * l > 24) throw ScaleError("extremal pair dimension beyond dense cap");
    GroupSpec g(std::vector<uint64_t>(2 * l, 3));
    std::vector<GroupElement> b1, b2;
    for (unsigned i = 0; i < 2 * l; ++i) {
        GroupElement e(2 * l, 0);
        e[i] = 1;
        b1.push_back(e);
    }
    for (unsigned i = 0; i < l; ++i) {
        GroupElement plus(2 * l, 0), minus(2 * l, 0);
        plus[2 * i] = 1;
        plus[2 * i + 1] = 1;
        minus[2 * i] = 1;
        minus[2 * i + 1] = 2;  // -1 mod 3
        b2.push_back(plus);
        b2.push_back(minus);
    }
    return {g, ElementMultiset(g, std::move(b1)), ElementMultiset(g, std::move(b2))};
}

// ---------------------------------------------------------------------------

namespace {

constexpr mpfr_prec_t sigma_prec = 160;

// acc := sigma_p(k) with every step rounded to nearest at 160 bits. The
// accumulated error stays far below the 2^-100 margin applied by callers
// (terms lie in [0,1], at most 2^20 of them, each carrying ~2^-150 error).
void sigma_acc(mpfr_t acc, uint32_t p, unsigned k) {
    if (!is_prime(p)) throw ValidationError("sigma_p needs a prime p");
    if (k < 1) throw ValidationError("sigma_p needs k >= 1");
    if (p > (1u << 20) || k > (1u << 20))
        throw ScaleError("sigma_p arguments beyond cap 2^20");
    mpfr_t pi, x, t;
    mpfr_init2(pi, sigma_prec);
    mpfr_init2(x, sigma_prec);
    mpfr_init2(t, sigma_prec);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (uint32_t u = 1; u < p; ++u) {
        mpfr_mul_ui(x, pi, u, MPFR_RNDN);
        mpfr_div_ui(x, x, p, MPFR_RNDN);
        mpfr_cos(t, x, MPFR_RNDN);
        mpfr_pow_ui(t, t, 2 * (unsigned long)k, MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    mpfr_clear(pi);
    mpfr_clear(x);
    mpfr_clear(t);
}

std::string mpfr_decimal(const mpfr_t x, int digits = 20) {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x);
    return buf;
}

}  // namespace

RealEnclosure sigma_p(uint32_t p, unsigned k) {
    mpfr_t acc, eps, y;
    mpfr_init2(acc, sigma_prec);
    mpfr_init2(eps, sigma_prec);
    mpfr_init2(y, sigma_prec);
    sigma_acc(acc, p, k);
    mpfr_set_ui_2exp(eps, 1, -100, MPFR_RNDN);

    RealEnclosure out;
    mpfr_sub(y, acc, eps, MPFR_RNDD);
    out.lo = std::max(0.0, mpfr_get_d(y, MPFR_RNDD));  // sigma_p >= 0
    mpfr_add(y, acc, eps, MPFR_RNDU);
    out.hi = mpfr_get_d(y, MPFR_RNDU);
    out.decimal = mpfr_decimal(acc);
    mpfr_clear(acc);
    mpfr_clear(eps);
    mpfr_clear(y);
    return out;
}

RealEnclosure character_sum_lower_bound(uint32_t p, unsigned r, unsigned k) {
    if (r < 1 || r > 256)
        throw ValidationError("rank must be between 1 and 256");
    mpfr_t acc, eps, den, num, y;
    mpfr_init2(acc, sigma_prec);
    mpfr_init2(eps, sigma_prec);
    mpfr_init2(den, sigma_prec);
    mpfr_init2(num, sigma_prec);
    mpfr_init2(y, sigma_prec);
    sigma_acc(acc, p, k);
    mpfr_set_ui_2exp(eps, 1, -100, MPFR_RNDN);

    mpz_class pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), p, r);

    RealEnclosure out;
    // Lower edge: largest denominator, numerator rounded down.
    mpfr_add(den, acc, eps, MPFR_RNDU);
    mpfr_add_ui(den, den, 1, MPFR_RNDU);
    mpfr_pow_ui(den, den, r, MPFR_RNDU);
    mpfr_set_z(num, pr.get_mpz_t(), MPFR_RNDD);
    mpfr_div(y, num, den, MPFR_RNDD);
    out.lo = mpfr_get_d(y, MPFR_RNDD);
    // Upper edge: smallest denominator, numerator rounded up.
    mpfr_sub(den, acc, eps, MPFR_RNDD);
    mpfr_add_ui(den, den, 1, MPFR_RNDD);
    mpfr_pow_ui(den, den, r, MPFR_RNDD);
    mpfr_set_z(num, pr.get_mpz_t(), MPFR_RNDU);
    mpfr_div(y, num, den, MPFR_RNDU);
    out.hi = mpfr_get_d(y, MPFR_RNDU);
    // Display value at nearest rounding.
    mpfr_add_ui(den, acc, 1, MPFR_RNDN);
    mpfr_pow_ui(den, den, r, MPFR_RNDN);
    mpfr_set_z(num, pr.get_mpz_t(), MPFR_RNDN);
    mpfr_div(y, num, den, MPFR_RNDN);
    out.decimal = mpfr_decimal(y);

    mpfr_clear(acc);
    mpfr_clear(eps);
    mpfr_clear(den);
    mpfr_clear(num);
    mpfr_clear(y);
    return out;
}

}  // namespace sumcover
