#include "hopf2/series.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace hopf2 {

TruncSeries::TruncSeries(int trunc_degree) {
    if (trunc_degree < 0) throw std::invalid_argument("truncation degree must be >= 0");
    coeffs_.assign(static_cast<size_t>(trunc_degree) + 1, BigInt(0));
}

TruncSeries::TruncSeries(int trunc_degree, std::vector<BigInt> coeffs) {
    if (trunc_degree < 0) throw std::invalid_argument("truncation degree must be >= 0");
    if (coeffs.size() != static_cast<size_t>(trunc_degree) + 1)
        throw std::invalid_argument("coefficient count must be trunc_degree + 1");
    coeffs_ = std::move(coeffs);
}

TruncSeries TruncSeries::one(int trunc_degree) {
    TruncSeries s(trunc_degree);
    s.coeffs_[0] = 1;
    return s;
}

TruncSeries TruncSeries::monomial(int trunc_degree, int degree, BigInt c) {
    if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
    TruncSeries s(trunc_degree);
    if (degree <= trunc_degree) s.coeffs_[degree] = std::move(c);
    return s;
}

const BigInt& TruncSeries::coeff(int degree) const {
    if (degree < 0 || degree > trunc_degree())
        throw std::out_of_range("coefficient degree out of range");
    return coeffs_[static_cast<size_t>(degree)];
}

bool TruncSeries::is_zero() const {
    for (const BigInt& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool TruncSeries::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (size_t d = 1; d < coeffs_.size(); ++d)
        if (coeffs_[d] != 0) return false;
    return true;
}

static void require_same_trunc(const TruncSeries& a, const TruncSeries& b) {
    if (a.trunc_degree() != b.trunc_degree())
        throw std::invalid_argument("mismatched truncation degrees");
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
    require_same_trunc(a, b);
    std::vector<BigInt> c(a.coeffs());
    for (int d = 0; d <= b.trunc_degree(); ++d) c[d] += b.coeff(d);
    return TruncSeries(a.trunc_degree(), std::move(c));
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) {
    require_same_trunc(a, b);
    std::vector<BigInt> c(a.coeffs());
    for (int d = 0; d <= b.trunc_degree(); ++d) c[d] -= b.coeff(d);
    return TruncSeries(a.trunc_degree(), std::move(c));
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    require_same_trunc(a, b);
    const int n = a.trunc_degree();
    std::vector<BigInt> c(static_cast<size_t>(n) + 1, BigInt(0));
    for (int i = 0; i <= n; ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.coeff(j) == 0) continue;
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
    }
    return TruncSeries(n, std::move(c));
}

TruncSeries inverse(const TruncSeries& a) {
    const BigInt& c0 = a.coeff(0);
    if (c0 != 1 && c0 != -1)
        throw std::invalid_argument("inverse requires constant term +1 or -1");
    const int n = a.trunc_degree();
    // b_0 = 1/c_0 = c_0; b_d = -c_0 * sum_{i=1..d} a_i b_{d-i}.
    std::vector<BigInt> b(static_cast<size_t>(n) + 1, BigInt(0));
    b[0] = c0;
    for (int d = 1; d <= n; ++d) {
        BigInt acc(0);
        for (int i = 1; i <= d; ++i) acc += a.coeff(i) * b[static_cast<size_t>(d - i)];
        b[static_cast<size_t>(d)] = -c0 * acc;
    }
    return TruncSeries(n, std::move(b));
}

TruncSeries pow(const TruncSeries& a, long long e) {
    if (e < 0) return pow(inverse(a), -e);
    TruncSeries acc = TruncSeries::one(a.trunc_degree());
    TruncSeries base = a;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k > 0) {
        if (k & 1ull) acc = mul(acc, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return acc;
}

TruncSeries product_pow(const std::vector<SeriesFactor>& factors, int trunc_degree) {
    TruncSeries acc = TruncSeries::one(trunc_degree);
    for (const SeriesFactor& f : factors) {
        TruncSeries base = f.base.trunc_degree() == trunc_degree
                               ? f.base
                               : truncated(f.base, trunc_degree);
        acc = mul(acc, pow(base, f.exponent));
    }
    return acc;
}

TruncSeries truncated(const TruncSeries& a, int trunc_degree) {
    if (trunc_degree > a.trunc_degree())
        throw std::invalid_argument("cannot raise a truncation degree");
    std::vector<BigInt> c(a.coeffs().begin(),
                          a.coeffs().begin() + trunc_degree + 1);
    return TruncSeries(trunc_degree, std::move(c));
}

TruncSeries substitute_square(const TruncSeries& a, int trunc_degree) {
    TruncSeries s(trunc_degree);
    std::vector<BigInt> c(static_cast<size_t>(trunc_degree) + 1, BigInt(0));
    for (int d = 0; d <= a.trunc_degree() && 2 * d <= trunc_degree; ++d)
        c[static_cast<size_t>(2 * d)] = a.coeff(d);
    return TruncSeries(trunc_degree, std::move(c));
}

BigInt partitions(long long n) {
    if (n < 0) throw std::invalid_argument("partitions(n) requires n >= 0");
    static std::vector<BigInt> cache{BigInt(1)};  // p(0) = 1
    if (static_cast<size_t>(n) < cache.size()) return cache[static_cast<size_t>(n)];
    for (long long m = static_cast<long long>(cache.size()); m <= n; ++m) {
        BigInt v(0);
        for (long long k = 1;; ++k) {
            const long long g1 = k * (3 * k - 1) / 2;
            const long long g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            const BigInt s1 = cache[static_cast<size_t>(m - g1)];
            const BigInt s2 = g2 <= m ? cache[static_cast<size_t>(m - g2)] : BigInt(0);
            if (k % 2 == 1)
                v += s1 + s2;
            else
                v -= s1 + s2;
        }
        cache.push_back(v);
    }
    return cache[static_cast<size_t>(n)];
}

long long partitions_ll(long long m) {
    if (m < 0) return 0;
    BigInt v = partitions(m);
    if (v > std::numeric_limits<long long>::max())
        throw std::overflow_error("partition number does not fit in long long");
    return v.convert_to<long long>();
}

std::string to_string(const TruncSeries& a) {
    std::ostringstream out;
    bool first = true;
    for (int d = 0; d <= a.trunc_degree(); ++d) {
        const BigInt& c = a.coeff(d);
        if (c == 0) continue;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        BigInt abs_c = c < 0 ? BigInt(-c) : c;
        if (d == 0) {
            out << abs_c;
        } else {
            if (abs_c != 1) out << abs_c << " ";
            out << "a";
            if (d > 1) out << "^" << d;
        }
    }
    if (first) out << "0";
    return out.str();
}

BiSeries::BiSeries(int s_trunc, int t_trunc) : s_trunc_(s_trunc), t_trunc_(t_trunc) {
    if (s_trunc < 0 || t_trunc < 0)
        throw std::invalid_argument("truncation degrees must be >= 0");
    coeffs_.assign(static_cast<size_t>(s_trunc + 1) * (t_trunc + 1), BigInt(0));
}

BiSeries BiSeries::one(int s_trunc, int t_trunc) {
    BiSeries b(s_trunc, t_trunc);
    b.set(0, 0, BigInt(1));
    return b;
}

BiSeries BiSeries::binomial_factor(int s_trunc, int t_trunc, int s_deg, int t_deg,
                                   long long e) {
    if (e < 0) throw std::invalid_argument("binomial_factor requires e >= 0");
    if (s_deg < 0 || t_deg < 0 || (s_deg == 0 && t_deg == 0))
        throw std::invalid_argument("factor must have positive bidegree");
    BiSeries b(s_trunc, t_trunc);
    BigInt c(1);
    for (long long j = 0;; ++j) {
        const long long s = j * s_deg, t = j * t_deg;
        if (s > s_trunc || t > t_trunc) break;
        b.set(static_cast<int>(s), static_cast<int>(t), c);
        if (j >= e) break;
        c = c * (e - j) / (j + 1);  // exact: running binomial C(e, j+1)
    }
    return b;
}

const BigInt& BiSeries::at(int s, int t) const {
    if (s < 0 || s > s_trunc_ || t < 0 || t > t_trunc_)
        throw std::out_of_range("BiSeries index out of range");
    return coeffs_[static_cast<size_t>(s) * (t_trunc_ + 1) + t];
}

void BiSeries::set(int s, int t, BigInt v) {
    if (s < 0 || s > s_trunc_ || t < 0 || t > t_trunc_)
        throw std::out_of_range("BiSeries index out of range");
    coeffs_[static_cast<size_t>(s) * (t_trunc_ + 1) + t] = std::move(v);
}

TruncSeries BiSeries::total_degree_collapse() const {
    std::vector<BigInt> c(static_cast<size_t>(t_trunc_) + 1, BigInt(0));
    for (int s = 0; s <= s_trunc_; ++s)
        for (int t = 0; t <= t_trunc_; ++t) {
            const int d = s + t;
            if (d <= t_trunc_) c[static_cast<size_t>(d)] += at(s, t);
        }
    return TruncSeries(t_trunc_, std::move(c));
}

BiSeries mul(const BiSeries& a, const BiSeries& b) {
    if (a.s_trunc() != b.s_trunc() || a.t_trunc() != b.t_trunc())
        throw std::invalid_argument("mismatched truncation degrees");
    BiSeries c(a.s_trunc(), a.t_trunc());
    for (int s1 = 0; s1 <= a.s_trunc(); ++s1)
        for (int t1 = 0; t1 <= a.t_trunc(); ++t1) {
            const BigInt& x = a.at(s1, t1);
            if (x == 0) continue;
            for (int s2 = 0; s1 + s2 <= a.s_trunc(); ++s2)
                for (int t2 = 0; t1 + t2 <= a.t_trunc(); ++t2) {
                    const BigInt& y = b.at(s2, t2);
                    if (y == 0) continue;
                    c.set(s1 + s2, t1 + t2, c.at(s1 + s2, t1 + t2) + x * y);
                }
        }
    return c;
}

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt c(1);
    for (long long j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
    return c;
}

}  // namespace hopf2
