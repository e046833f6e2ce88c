#ifndef HOPF2_RW_MODEL_HPP
#define HOPF2_RW_MODEL_HPP

#include "hopf2/bar_tor.hpp"
#include "hopf2/series.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hopf2 {

/* The polynomial-over-group-ring model in one even weight: a connected free
 * commutative algebra with p(m) generators in degree k+m for every m with
 * 0 < k+m <= trunc, plus a free abelian component group of rank p(-k) (zero
 * for k > 0), carried symbolically. */
struct RWModel {
    int k;
    int trunc;
    std::vector<int> generator_degrees;  // with multiplicity, ascending
    int pi0_rank;

    static RWModel make(int k, int trunc);
    PresentedAlgebra algebra() const;  // torus rank included
};

// prod over k+m > 0 of (1 - alpha^(k+m))^(-p(m)), truncated.
TruncSeries r_prime_series(int k, int trunc);

// The same with doubled exponents: prod (1 - alpha^(2(k+m)))^(-p(m)).
TruncSeries hmu_prime_series(int k, int trunc);

// prod over k+m > 0 of (1 + alpha^(k+m))^(p(m)), truncated.
TruncSeries k_series(int k, int trunc);

// k_series(k) * hmu_prime_series(k) == r_prime_series(k), exactly.
bool eq46_check(int k, int trunc);

// Total-degree collapse of the analytic Tor table over the weight-k model
// (torus factor included) equals k_series(k+1), exactly.
bool prop39_4_check(int k, int trunc);

struct StableRangeReport {
    int k;
    int max_degree;  // degrees < max{1, 2k} are tabulated
    int pi0_rank;
    std::vector<BigInt> connected_dims;  // per degree 0..max_degree-1
};

StableRangeReport stable_range_report(int k, int trunc);

struct InductionOptions {
    // Escalate to bar homology when the blocked elimination fits under these
    // caps; the analytic route always runs.
    size_t bar_max_words = 200000;
    double bar_max_work = 2e9;
    int jobs = 1;
};

struct InductionCell {
    int ell = 0;
    int k = 0;
    int m = 0;                    // ell - k + 1
    long long tor1_dim = 0;       // dim Tor_{1,ell}
    long long k_next_dim = 0;     // coefficient of alpha^(ell+1) in the K series
    long long higher_tor_sum = 0; // sum of Tor_{s,t}, s+t = ell+1, s > 1
    bool consistent = false;
    std::string path;             // "analytic" or "analytic+bar"
    // Anti-diagonal dims (s, t, analytic dim) for s+t = ell+1, s >= 1.
    std::vector<std::array<long long, 3>> anti_diagonal;
    // When the bar oracle ran and disagreed: the offending (s, t, bar dim).
    std::optional<std::array<long long, 3>> bar_mismatch;
};

// One cell of the induction bookkeeping: with A the weight-(k-1) model,
// checks that the alpha^(ell+1) coefficient of the weight-k K series minus
// the higher Tor sum equals dim Tor_{1,ell}.
InductionCell induction_check(int ell, int k, int trunc,
                              const InductionOptions& opts = {});

// The same arithmetic on a caller-supplied algebra and K series; the public
// entry above passes the weight-(k-1) model.  Exposed so that perturbed
// inputs can be exercised directly.
InductionCell induction_check_on(const PresentedAlgebra& a, const TruncSeries& knext,
                                 int ell, const InductionOptions& opts = {});

enum class EdgeCheckStatus { Injective, NotInjective, CapExceeded };

// Runs the edge homomorphism on the degree-limited weight-k model and
// confirms injectivity by rank; refuses when the monomial count in degrees
// <= ell exceeds the cap.
EdgeCheckStatus edge_injectivity_check(int k, int ell, long long size_cap);

}  // namespace hopf2

#endif
