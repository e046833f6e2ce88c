#ifndef HOPF2_DIVIDED_POWER_HPP
#define HOPF2_DIVIDED_POWER_HPP

#include "hopf2/hopf_core.hpp"

#include <cstdint>

namespace hopf2 {

// Parity of binomial(a, b) by Lucas: odd iff b <= a and b AND (a-b) has no
// common set bit; 0 whenever b > a.
int binom_mod2(uint64_t a, uint64_t b);

/* The weight-k divided-power coalgebra: basis b_i(k) in degree i*k, product
 * b_i b_j = binom(i+j, i) b_{i+j} mod 2, coproduct Delta b_n = sum b_i (x) b_j
 * over i+j = n.  Connected, cocommutative, and self-dual to a polynomial
 * algebra on one degree-k variable. */
class DividedPowerAlg {
public:
    DividedPowerAlg(int weight, StructuredHopf hopf)
        : weight_(weight), hopf_(std::move(hopf)) {}

    int weight() const { return weight_; }
    const StructuredHopf& hopf() const { return hopf_; }
    int trunc() const { return hopf_.trunc(); }
    // Largest i with i * weight <= trunc.
    int max_index() const { return hopf_.trunc() / weight_; }
    BasisId beta(int i) const { return BasisId{i * weight_, 0}; }

private:
    int weight_;
    StructuredHopf hopf_;
};

DividedPowerAlg make_A1(int k, int trunc);

// n-fold tensor power of make_A1(k, trunc); n = 1 gives make_A1 itself.
StructuredHopf make_An(int k, int n, int trunc);

// The pairing of degree-d elements of A^1(k) against the monomial x^m of the
// dual polynomial algebra; requires m * k == d.
int dual_pairing(const DividedPowerAlg& a, const BitVec& coords, int degree, int m);

// The integral divided-power Hopf algebra (basis beta_i in degree 2i, product
// constants binom(i+j, i) over the integers), input for the weight regrading.
IntegralHopf integral_A1(int top_degree);

}  // namespace hopf2

#endif
