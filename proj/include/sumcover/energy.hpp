#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "sumcover/group.hpp"
#include "sumcover/sumsets.hpp"

namespace sumcover {

// T(A) = #{(a,b,c,d) in A^4 : a+b = c+d}.
mpz_class additive_energy(const ElementSet& A);
mpz_class additive_energy_z(const std::vector<IntVec>& A);

// T(B*) = 6^n when B is n independent vectors over odd characteristic.
mpz_class independent_star_energy(unsigned n);

// Number of pairs (x, y) in B* x B* with x - y = sum_j eps_j b_j for an
// independent family b_1..b_n and eps in {-1,0,1}^n: 2^(n - sum |eps_j|).
mpz_class independent_star_difference_count(const std::vector<int>& eps);

// |A+B| >= |A|^2 |B|^2 / sqrt(T(A) T(B)), held exactly via squaring.
struct SumsetEnergyBound {
    mpz_class num;  // |A|^2 |B|^2
    mpz_class tt;   // T(A) T(B)
    bool holds_for(const mpz_class& measured) const;
    std::string approx_decimal(int digits = 17) const;
};
SumsetEnergyBound sumset_energy_bound(const ElementSet& A, const ElementSet& B);

// Characteristic zero: |B_1*+...+B_k*| >= prod_j ((j+1)/j)^{rank_j} in the
// given order; the descending-rank ordering gives the best constant.
mpq_class char0_star_bound(const std::vector<size_t>& ranks);
mpq_class char0_star_bound_best(std::vector<size_t> ranks);

// Odd characteristic: |B_1*+B_2*| >= (8/3)^{(r_1+r_2)/2}; the compare runs on
// measured^2 * 3^s >= 8^s, s = r_1 + r_2.
struct OddCharBound {
    unsigned rank_sum = 0;
    bool holds_for(const mpz_class& measured) const;
    std::string approx_decimal(int digits = 17) const;
};
OddCharBound odd_char_star_bound(unsigned r1, unsigned r2);

// Characteristic-3 pair attaining |B_1*+B_2*| = 8^l in dimension 2l.
struct Char3ExtremalPair {
    GroupSpec group;
    ElementMultiset B1, B2;
};
Char3ExtremalPair char3_extremal_pair(unsigned l);

// Outward-rounded enclosure of a real quantity plus a display string.
struct RealEnclosure {
    double lo = 0, hi = 0;
    std::string decimal;
};

// sigma_p(k) = sum_{u=1}^{p-1} cos(pi u/p)^{2k}.
RealEnclosure sigma_p(uint32_t p, unsigned k);

// p^r / (1 + sigma_p(k))^r, a covering-size lower bound for k-fold star
// sumsets of full-rank families in F_p^r.
RealEnclosure character_sum_lower_bound(uint32_t p, unsigned r, unsigned k);

}  // namespace sumcover
