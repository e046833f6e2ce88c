#ifndef HOPF2_SERIES_HPP
#define HOPF2_SERIES_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hopf2 {

// All coefficient arithmetic is exact; nothing in this library ever rounds.
using BigInt = boost::multiprecision::cpp_int;

/* Truncated integer power series in one formal variable.  A series of
 * truncation degree N stores exactly the coefficients of alpha^0..alpha^N;
 * every operation discards higher degrees.  Values are immutable. */
class TruncSeries {
public:
    explicit TruncSeries(int trunc_degree);
    TruncSeries(int trunc_degree, std::vector<BigInt> coeffs);

    static TruncSeries one(int trunc_degree);
    // c * alpha^degree, or the zero series if degree > trunc_degree.
    static TruncSeries monomial(int trunc_degree, int degree, BigInt c = BigInt(1));

    int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& coeff(int degree) const;
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    std::vector<BigInt> coeffs_;  // coeffs_[d] is the coefficient of alpha^d
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);

// Cauchy product truncated at the common truncation degree.
// Throws std::invalid_argument on mismatched truncation degrees.
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);

// Multiplicative inverse.  The constant term must be +1 or -1 so that the
// inverse again has integer coefficients; otherwise std::invalid_argument.
TruncSeries inverse(const TruncSeries& a);

// a^e for integer e; negative exponents go through inverse().
TruncSeries pow(const TruncSeries& a, long long e);

struct SeriesFactor {
    TruncSeries base;
    long long exponent;
};

// Product of base^exponent over all factors, truncated at trunc_degree.
// The empty factor list yields the constant series 1.
TruncSeries product_pow(const std::vector<SeriesFactor>& factors, int trunc_degree);

// Re-truncate to a lower (or equal) truncation degree.
TruncSeries truncated(const TruncSeries& a, int trunc_degree);

// The substitution alpha -> alpha^2, truncated at trunc_degree.
TruncSeries substitute_square(const TruncSeries& a, int trunc_degree);

// Number of partitions of n, by the Euler pentagonal-number recurrence.
// p(0) = 1; throws std::invalid_argument for n < 0.
BigInt partitions(long long n);

// partitions() narrowed to long long, with p(m) = 0 for m < 0.  Throws if the
// value does not fit; used where partition numbers appear as exponents.
long long partitions_ll(long long m);

std::string to_string(const TruncSeries& a);  // e.g. "1 + a + 2 a^2"

/* Bigraded truncated integer series: coefficients c_{s,t} for 0 <= s <= S,
 * 0 <= t <= N.  The s variable is written sigma, the t variable alpha. */
class BiSeries {
public:
    BiSeries(int s_trunc, int t_trunc);

    static BiSeries one(int s_trunc, int t_trunc);
    // (1 + sigma^s_deg * alpha^t_deg)^e with e >= 0, expanded exactly.
    static BiSeries binomial_factor(int s_trunc, int t_trunc, int s_deg, int t_deg,
                                    long long e);

    int s_trunc() const { return s_trunc_; }
    int t_trunc() const { return t_trunc_; }
    const BigInt& at(int s, int t) const;
    void set(int s, int t, BigInt v);

    // Collapse to the single grading in which (s,t) has degree s+t.  Entries
    // with s+t <= t_trunc are summed; the caller must pick s_trunc >= t_trunc
    // if no total degree may be lost.
    TruncSeries total_degree_collapse() const;

    friend bool operator==(const BiSeries&, const BiSeries&) = default;

private:
    int s_trunc_;
    int t_trunc_;
    std::vector<BigInt> coeffs_;  // (s,t) at s * (t_trunc+1) + t
};

BiSeries mul(const BiSeries& a, const BiSeries& b);

// Exact binomial coefficient, used as a test oracle and for torus factors.
BigInt binomial(long long n, long long k);

}  // namespace hopf2

#endif
