#include "hopf2/rw_model.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hopf2 {

RWModel RWModel::make(int k, int trunc) {
    if (trunc < 0) throw std::invalid_argument("truncation must be >= 0");
    RWModel model;
    model.k = k;
    model.trunc = trunc;
    model.pi0_rank = k <= 0 ? static_cast<int>(partitions_ll(-k)) : 0;
    for (long long m = std::max(0LL, 1LL - k);; ++m) {
        const long long degree = k + m;
        if (degree > trunc) break;
        const long long count = partitions_ll(m);
        for (long long i = 0; i < count; ++i)
            model.generator_degrees.push_back(static_cast<int>(degree));
    }
    return model;
}

PresentedAlgebra RWModel::algebra() const {
    return PresentedAlgebra(generator_degrees, pi0_rank, trunc);
}

namespace {

// Factors (1 +/- alpha^(step*(k+m)))^(sign * p(m)) over all m with k+m > 0,
// including exactly the factors whose lowest nonconstant degree fits.
TruncSeries rw_product(int k, int trunc, int step, int term_sign, bool negate_exponent) {
    std::vector<SeriesFactor> factors;
    for (long long m = std::max(0LL, 1LL - k);; ++m) {
        const long long degree = static_cast<long long>(step) * (k + m);
        if (degree > trunc) break;
        TruncSeries base = add(TruncSeries::one(trunc),
                               TruncSeries::monomial(trunc, static_cast<int>(degree),
                                                     BigInt(term_sign)));
        const long long e = partitions_ll(m);
        factors.push_back(SeriesFactor{std::move(base), negate_exponent ? -e : e});
    }
    return product_pow(factors, trunc);
}

}  // namespace

TruncSeries r_prime_series(int k, int trunc) {
    return rw_product(k, trunc, 1, -1, true);
}

TruncSeries hmu_prime_series(int k, int trunc) {
    return rw_product(k, trunc, 2, -1, true);
}

TruncSeries k_series(int k, int trunc) {
    return rw_product(k, trunc, 1, +1, false);
}

bool eq46_check(int k, int trunc) {
    return mul(k_series(k, trunc), hmu_prime_series(k, trunc)) ==
           r_prime_series(k, trunc);
}

bool prop39_4_check(int k, int trunc) {
    const RWModel model = RWModel::make(k, trunc);
    const BiSeries tor = analytic_tor_biseries(model.algebra(), trunc, trunc);
    return tor.total_degree_collapse() == k_series(k + 1, trunc);
}

StableRangeReport stable_range_report(int k, int trunc) {
    StableRangeReport report;
    report.k = k;
    report.max_degree = std::max(1, 2 * k);
    report.pi0_rank = k <= 0 ? static_cast<int>(partitions_ll(-k)) : 0;
    const TruncSeries series = r_prime_series(k, trunc);
    for (int d = 0; d < report.max_degree && d <= trunc; ++d)
        report.connected_dims.push_back(series.coeff(d));
    return report;
}

InductionCell induction_check_on(const PresentedAlgebra& a, const TruncSeries& knext,
                                 int ell, const InductionOptions& opts) {
    if (ell < 1) throw std::invalid_argument("induction degree must be >= 1");
    if (ell + 1 > a.trunc() || ell + 1 > knext.trunc_degree())
        throw std::invalid_argument("truncation too small for the requested degree");

    InductionCell cell;
    cell.ell = ell;

    const int bound = ell + 1;
    const BiSeries tor = analytic_tor_biseries(a, bound, bound);

    cell.tor1_dim = BigInt(tor.at(1, ell)).convert_to<long long>();
    for (int s = 1; s <= bound; ++s) {
        const int t = bound - s;
        const long long dim = BigInt(tor.at(s, t)).convert_to<long long>();
        cell.anti_diagonal.push_back({s, t, dim});
        if (s > 1) cell.higher_tor_sum += dim;
    }
    cell.k_next_dim = knext.coeff(bound).convert_to<long long>();
    cell.consistent = cell.k_next_dim - cell.higher_tor_sum == cell.tor1_dim;
    cell.path = "analytic";

    // Escalate to bar homology when the instance fits under the caps: compare
    // the computed table against the analytic one on the degrees used above.
    PresentedAlgebra small(
        [&] {
            std::vector<int> gens;
            for (int d : a.generator_degrees())
                if (d <= bound) gens.push_back(d);
            return gens;
        }(),
        a.torus_rank(), bound);
    TorLimits limits;
    limits.max_words = opts.bar_max_words;
    limits.max_work = opts.bar_max_work;
    std::optional<TorTable> bar = tor_dims_capped(small, bound, bound, limits, opts.jobs);
    if (bar.has_value()) {
        cell.path = "analytic+bar";
        const TorTable analytic = analytic_tor(small, bound, bound);
        for (int s = 0; s <= bound && !cell.bar_mismatch; ++s)
            for (int t = 0; s + t <= bound + 1 && t <= bound; ++t)
                if (bar->dim(s, t) != analytic.dim(s, t)) {
                    cell.bar_mismatch = std::array<long long, 3>{s, t, bar->dim(s, t)};
                    cell.consistent = false;
                    break;
                }
    }
    return cell;
}

InductionCell induction_check(int ell, int k, int trunc, const InductionOptions& opts) {
    const RWModel model = RWModel::make(k - 1, trunc);
    InductionCell cell = induction_check_on(model.algebra(), k_series(k, trunc), ell, opts);
    cell.k = k;
    cell.m = ell - k + 1;
    return cell;
}

EdgeCheckStatus edge_injectivity_check(int k, int ell, long long size_cap) {
    if (ell < 1) throw std::invalid_argument("degree must be >= 1");
    // Gate on the monomial count before materializing the basis; the model's
    // Poincare series carries exactly the per-degree counts.
    const TruncSeries poincare = r_prime_series(k, ell);
    BigInt monomial_total(0);
    for (int d = 0; d <= ell; ++d) monomial_total += poincare.coeff(d);
    if (monomial_total > size_cap) return EdgeCheckStatus::CapExceeded;
    const RWModel model = RWModel::make(k, ell);
    const EdgeHom e = edge_hom(model.algebra(), ell);
    return e.injective ? EdgeCheckStatus::Injective : EdgeCheckStatus::NotInjective;
}

}  // namespace hopf2
