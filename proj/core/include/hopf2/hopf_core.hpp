#ifndef HOPF2_HOPF_CORE_HPP
#define HOPF2_HOPF_CORE_HPP

#include "hopf2/f2linalg.hpp"
#include "hopf2/series.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopf2 {

struct BasisId {
    int degree;
    int index;
    auto operator<=>(const BasisId&) const = default;
};

// An F2 sum of basis elements, kept sorted and duplicate-free.
using SparseElem = std::vector<BasisId>;
// An F2 sum of basis tensors x (x) y, kept sorted and duplicate-free.
using SparsePairElem = std::vector<std::pair<BasisId, BasisId>>;

// Toggle-merge: c += v over F2 (symmetric difference of sorted lists).
void sym_diff(SparseElem& c, const SparseElem& v);
void sym_diff(SparsePairElem& c, const SparsePairElem& v);

struct Pi0Descriptor {
    enum class Kind { Trivial, FreeAbelian };
    Kind kind = Kind::Trivial;
    int rank = 0;  // rank of Z^r, only for FreeAbelian

    static Pi0Descriptor trivial() { return {}; }
    static Pi0Descriptor free_abelian(int r) { return {Kind::FreeAbelian, r}; }
    friend bool operator==(const Pi0Descriptor&, const Pi0Descriptor&) = default;
};

/* A truncated graded Hopf algebra over F2 given by sparse structure
 * constants.  Degree-0 carries the multiplicative unit as its first basis
 * element; a group algebra F2[Z^r] is never materialized and is tracked by
 * the pi0 descriptor instead.  Products whose degree exceeds the truncation
 * are discarded, so all axioms are asserted only in total degree <= trunc. */
class StructuredHopf {
public:
    struct ProductEntry {
        BasisId x, y;
        SparseElem terms;  // x * y
    };
    struct CoproductEntry {
        BasisId x;
        SparsePairElem terms;  // Delta x
    };

    StructuredHopf(GradedVS space, std::vector<ProductEntry> product,
                   std::vector<CoproductEntry> coproduct,
                   std::vector<uint8_t> counit_degree0, Pi0Descriptor pi0);

    const GradedVS& space() const { return space_; }
    int trunc() const { return space_.trunc(); }
    const Pi0Descriptor& pi0() const { return pi0_; }

    BasisId unit() const { return BasisId{0, 0}; }

    // Structure constant lookups; absent entries are zero.
    const SparseElem& product_of(BasisId x, BasisId y) const;
    const SparsePairElem& coproduct_of(BasisId x) const;
    bool counit(BasisId x) const;

    const std::vector<ProductEntry>& product_entries() const { return product_; }
    const std::vector<CoproductEntry>& coproduct_entries() const { return coproduct_; }

    // Element-level maps (truncation applied on products).
    SparseElem multiply(const SparseElem& a, const SparseElem& b) const;
    SparsePairElem coproduct(const SparseElem& a) const;

    // Flat basis numbering in degree-major order, used by the JSON schema.
    size_t flat_index(BasisId x) const;
    BasisId from_flat_index(size_t i) const;

    // Corruption injection for verification: flip one structure constant.
    void toggle_product_term(BasisId x, BasisId y, BasisId target);
    void toggle_coproduct_term(BasisId x, BasisId left, BasisId right);

    friend bool operator==(const StructuredHopf&, const StructuredHopf&) = default;

private:
    GradedVS space_;
    std::vector<ProductEntry> product_;      // sorted by (x, y)
    std::vector<CoproductEntry> coproduct_;  // sorted by x
    std::vector<uint8_t> counit_;            // on degree-0 basis
    Pi0Descriptor pi0_;

    void validate() const;
};

struct AxiomFailure {
    std::string axiom;    // e.g. "coassociativity"
    std::string witness;  // offending basis elements
};

// Verifies counit, unit, cocommutativity, commutativity, coassociativity,
// associativity and the bialgebra compatibility on all basis tuples within
// truncation.  Failures are data, not errors; an empty report is a pass.
std::vector<AxiomFailure> check_axioms(const StructuredHopf& h,
                                       bool stop_at_first = false);

// Equality of dimensions and structure constants, ignoring basis labels.
bool same_structure(const StructuredHopf& a, const StructuredHopf& b);

struct AxiomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis of the connected component of the unit in the given degree, as
// ambient coordinate vectors (Hopf-algebra pullback of the unit component).
std::vector<BitVec> connected_component_basis(const StructuredHopf& h, int degree);

// Basis of the primitives in the given degree, restricted to the connected
// part: the kernel of x -> Delta x - x(x)1 - 1(x)x.
std::vector<BitVec> primitives(const StructuredHopf& h, int degree);

struct IndecomposablesResult {
    int dim_q;   // dim Q = dim I/I^2 in this degree
    int dim_i;   // dim of the augmentation ideal in this degree
    int dim_i2;  // dim of the span of products of positive-degree elements
    // Projection from connected-part coordinates onto Q coordinates.
    BitMatrix projection;
    // Connected-part basis in ambient coordinates (identity for connected h).
    std::vector<BitVec> connected_basis;
};

// Q = I/I^2 in one degree (augmentation ideal modulo decomposables).
IndecomposablesResult indecomposables(const StructuredHopf& h, int degree);

// The graded projection onto indecomposables across all positive degrees.
LinMap indecomposables_map(const StructuredHopf& h);

// The degree-doubled regrading V^phi (content of degree n lands in 2n),
// truncated at the original truncation.
GradedVS doubled_space(const GradedVS& v, int trunc);
StructuredHopf phi_double(const StructuredHopf& h);

// The Verschiebung v: h -> h^phi.  On a basis element of degree 2n it reads
// off the diagonal part of the coproduct in the middle block h_n (x) h_n,
// which computes the Tate class of Delta; odd degrees map to zero.
// Requires a cocommutative input (checked; AxiomError otherwise).
LinMap verschiebung(const StructuredHopf& h);

// Per-degree kernel dimension of the Verschiebung on the connected part.
std::vector<int> verschiebung_kernel_dims(const StructuredHopf& h);

// Checks that the Verschiebung is a map of Hopf algebras onto the doubled
// regrading: v(xy) = v(x)v(y) and Delta(v x) = (v (x) v)(Delta x) on every
// basis tuple within truncation.
bool verschiebung_is_hopf_map(const StructuredHopf& h);

struct SplitReport {
    bool ok;
    std::vector<int> total_dims;      // dim h_d
    std::vector<int> connected_dims;  // dim h'_d
    int degree0_dim;
    Pi0Descriptor pi0;
    bool symbolic_pi0;                // group-ring factor reported symbolically
    std::vector<std::string> failures;
};

// Verifies the splitting h = h_0 (x) h' degreewise: the connected component
// of the unit is computed from the coproduct and the multiplication map
// h_0 (x) h'_d -> h_d must be an isomorphism in every degree.  For a
// free-abelian pi0 descriptor the degree-0 factor is reported symbolically;
// a materialized non-connected degree 0 is an error.
SplitReport component_split_check(const StructuredHopf& h);

// The antipode of a connected h, by the graded recursion over the reduced
// coproduct; the defining diagrams are verified up to truncation and an
// AxiomError reports corrupted structure constants.
LinMap antipode(const StructuredHopf& h);

// Componentwise tensor product of Hopf algebras, truncated at the smaller
// truncation.  Basis labels are joined as "x|y".
StructuredHopf tensor_product(const StructuredHopf& a, const StructuredHopf& b);

/* Evenly graded free abelian input data for the weight-k regrading, which
 * sends integral degree 2n to degree k*n and reduces mod 2. */
struct IntegralGraded {
    std::vector<std::vector<std::string>> labels_by_degree;
};

GradedVS phi_regrade(const IntegralGraded& v, int k, int trunc);

struct IntegralHopf {
    std::vector<std::vector<std::string>> labels;  // by integral degree
    struct PEntry {
        BasisId x, y;
        std::vector<std::pair<BasisId, BigInt>> terms;
    };
    struct CEntry {
        BasisId x;
        std::vector<std::tuple<BasisId, BasisId, BigInt>> terms;
    };
    std::vector<PEntry> product;
    std::vector<CEntry> coproduct;
};

// Weight-k regrading with structure constants carried along mod 2.
StructuredHopf phi_regrade_hopf(const IntegralHopf& h, int k, int trunc);

}  // namespace hopf2

#endif
