#ifndef HOPF2_BAR_TOR_HPP
#define HOPF2_BAR_TOR_HPP

#include "hopf2/f2linalg.hpp"
#include "hopf2/hopf_core.hpp"
#include "hopf2/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopf2 {

// Sparse monomial: sorted (generator index, exponent) pairs, exponents > 0.
using Monomial = std::vector<std::pair<int, int>>;

// Canonical order: lexicographic on dense exponent vectors in the fixed
// generator numbering (degree ordering is handled by the per-degree lists).
bool monomial_lex_less(const Monomial& a, const Monomial& b);

Monomial monomial_mul(const Monomial& a, const Monomial& b);

/* Free graded-commutative F2 algebra on a finite generator multiset, with a
 * monomial basis enumerated per degree up to the truncation.  A torus rank
 * records a group-algebra tensor factor F2[Z^r] that is never materialized;
 * it only enters Tor tables analytically. */
class PresentedAlgebra {
public:
    PresentedAlgebra(std::vector<int> generator_degrees, int torus_rank, int trunc);

    const std::vector<int>& generator_degrees() const { return gen_degrees_; }
    int torus_rank() const { return torus_rank_; }
    int trunc() const { return trunc_; }

    int degree_of(const Monomial& m) const;
    const std::vector<Monomial>& monomials(int degree) const;
    long long monomial_count(int degree) const;
    // Index within the canonical per-degree list; -1 if absent.
    long long monomial_index(int degree, const Monomial& m) const;

    // Generator counts by degree (dim Q in each degree).
    std::vector<int> generator_counts() const;

    friend bool operator==(const PresentedAlgebra&, const PresentedAlgebra&) = default;

private:
    std::vector<int> gen_degrees_;
    int torus_rank_;
    int trunc_;
    std::vector<std::vector<Monomial>> monomials_;  // per degree, canonical order
};

// The primitively generated polynomial Hopf structure on the monomial basis;
// the bridge to the structural operations (indecomposables, primitives).
StructuredHopf to_hopf(const PresentedAlgebra& a);

/* Reduced bar complex of a connected presented algebra: the basis at (s,t)
 * consists of words [a_1|...|a_s] of positive-degree monomials with total
 * degree t, and the differential folds adjacent slots by the product (all
 * signs trivial over F2).  Blocks are built per (s,t) on demand. */
class BarComplex {
public:
    BarComplex(PresentedAlgebra algebra, int s_max, int t_max);

    const PresentedAlgebra& algebra() const { return algebra_; }
    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }

    std::vector<std::vector<Monomial>> words(int s, int t) const;
    size_t word_count(int s, int t) const;

    // d1: (s,t) -> (s-1,t).  Rows index the target words, columns the source
    // words, both in canonical order.
    BitMatrix differential(int s, int t) const;

private:
    PresentedAlgebra algebra_;
    int s_max_, t_max_;
};

BarComplex build_bar(const PresentedAlgebra& a, int s_max, int t_max);

enum class TorProvenance { Computed, Analytic };

class TorTable {
public:
    TorTable(int s_max, int t_max, TorProvenance p);

    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }
    TorProvenance provenance() const { return provenance_; }

    long long dim(int s, int t) const;  // zero outside the stored support
    void set_dim(int s, int t, long long v);

    const std::map<std::pair<int, int>, long long>& dims() const { return dims_; }

    // Aligned text grid, s increasing upwards and t to the right.
    std::string text_grid() const;

    TruncSeries total_degree_collapse() const;

private:
    int s_max_, t_max_;
    TorProvenance provenance_;
    std::map<std::pair<int, int>, long long> dims_;
};

// Entrywise equality of dimensions over the common index range; provenance
// and bounds are not compared.
bool dims_equal(const TorTable& a, const TorTable& b);

struct TorLimits {
    // Cap on the bar-word count of any single (s,t) level.
    size_t max_words = SIZE_MAX;
    // Cap on the estimated elimination work in 64-bit word operations.
    double max_work = 1e18;
};

// Tor_{s,t}(F2, F2) for s <= S, t <= N by bar homology: per-(s,t) blocks are
// split along the multidegree (which the differential preserves) and each
// block rank is computed by packed-row elimination.  A positive torus rank is
// folded in analytically.  Blocks may be processed by several worker threads;
// the result does not depend on the worker count.
TorTable tor_dims(const PresentedAlgebra& a, int S, int N, int jobs = 1);

// As tor_dims, but refuses oversized inputs: returns std::nullopt when the
// word-count or work estimate exceeds the limits.
std::optional<TorTable> tor_dims_capped(const PresentedAlgebra& a, int S, int N,
                                        const TorLimits& limits, int jobs = 1);

// Estimated elimination work (64-bit word operations) for tor_dims at the
// given bounds, from the word-count generating series.
double tor_work_estimate(const PresentedAlgebra& a, int S, int N);

// The same table from the closed form: an exterior algebra on one (1, |g|)
// class per generator times (1+sigma)^torus_rank, expanded exactly.
TorTable analytic_tor(const PresentedAlgebra& a, int S, int N);
BiSeries analytic_tor_biseries(const PresentedAlgebra& a, int S, int N);

// True iff the table agrees, in all total degrees <= up_to_degree + 1, with
// the exterior algebra generated by its own (1,t) column.  The table must
// cover total degree up_to_degree + 1.
bool tor_one_generated_check(const TorTable& t, int up_to_degree);

struct EdgeHom {
    LinMap map;      // Q(A)_ell -> Tor_{1,ell}, single block at degree ell
    bool injective;  // rank equals dim Q(A)_ell
    int ell;
    long long tor_dim;
    // Quotient data: B_{1,ell} coordinates -> Tor_{1,ell} coordinates.
    BitMatrix quotient;
};

// The edge homomorphism sending an indecomposable to the one-letter bar word;
// well defined on Q = I/I^2 since [ab] = d[a|b] over F2.
EdgeHom edge_hom(const PresentedAlgebra& a, int ell);

// The Tor_{1,ell} class of an arbitrary degree-ell monomial.
BitVec edge_class_of_monomial(const EdgeHom& e, const PresentedAlgebra& a,
                              const Monomial& m);

namespace detail {
// Quotient construction behind edge_hom with the boundary row space supplied
// by the caller; lets verification inject corrupted differentials.
EdgeHom edge_hom_from_boundaries(const PresentedAlgebra& a, int ell,
                                 const BitMatrix& boundary_rows);
}  // namespace detail

}  // namespace hopf2

#endif
