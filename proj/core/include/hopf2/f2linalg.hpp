#ifndef HOPF2_F2LINALG_HPP
#define HOPF2_F2LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hopf2 {

/* Bit vector over F2, packed 64 entries per word. */
class BitVec {
public:
    BitVec() : size_(0) {}
    explicit BitVec(size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    size_t size() const { return size_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        const uint64_t m = uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o);
    bool is_zero() const;
    size_t count() const;
    // Index of the first set bit, or size() if none.
    size_t first_set() const;

    const std::vector<uint64_t>& words() const { return words_; }
    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    size_t size_;
    std::vector<uint64_t> words_;
};

/* Dense matrix over F2 with packed bit rows.  Entries are addressed as
 * (row, col); the matrix acts on coordinate columns, y = M x. */
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        const uint64_t m = uint64_t(1) << (c & 63);
        uint64_t& w = data_[r * wpr_ + (c >> 6)];
        if (v) w |= m; else w &= ~m;
    }
    void flip(size_t r, size_t c) { data_[r * wpr_ + (c >> 6)] ^= uint64_t(1) << (c & 63); }

    void xor_row_into(size_t src, size_t dst);  // row dst ^= row src

    BitMatrix transposed() const;
    BitMatrix row_permuted(const std::vector<size_t>& perm) const;

    // Rank by Gaussian elimination on packed rows; the matrix is not modified.
    size_t rank() const;

    // Basis of the null space { x : M x = 0 }, vectors of length cols().
    std::vector<BitVec> kernel_basis() const;

    // Basis of the column space, vectors of length rows().  The basis consists
    // of the original columns at the pivot positions of the row echelon form.
    std::vector<BitVec> image_basis() const;

    BitVec apply(const BitVec& x) const;                 // M x
    BitMatrix multiplied_by(const BitMatrix& rhs) const; // this * rhs

    BitVec row(size_t r) const;
    BitVec col(size_t c) const;

    // Rows of 0/1 characters, one row per line; golden-test friendly.
    std::string debug_text() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    size_t rows_, cols_, wpr_;
    std::vector<uint64_t> data_;

    friend size_t rank_destructive(BitMatrix&& m);
    // Reduced row echelon form in place; returns pivot (row, col) pairs in
    // increasing column order.
    std::vector<std::pair<size_t, size_t>> rref_in_place();
};

// Rank computation that consumes the matrix (no defensive copy).
size_t rank_destructive(BitMatrix&& m);

// Solve W c = v where the columns of W are the given basis vectors; returns
// the coordinates c.  Throws std::invalid_argument if v is not in the span.
BitVec express_in_basis(const std::vector<BitVec>& basis, const BitVec& v);

/* Finite graded F2 vector space with named basis, degrees 0..trunc.
 * Labels are opaque; they must be duplicate-free within each degree. */
class GradedVS {
public:
    explicit GradedVS(std::vector<std::vector<std::string>> labels_by_degree);

    int trunc() const { return static_cast<int>(labels_.size()) - 1; }
    int dim(int degree) const;
    const std::vector<std::string>& labels(int degree) const;
    const std::string& label(int degree, int index) const;

    size_t total_dim() const;

    friend bool operator==(const GradedVS&, const GradedVS&) = default;

private:
    std::vector<std::vector<std::string>> labels_;
};

/* Degree-homogeneous linear map between graded spaces: the block at source
 * degree d maps into target degree d + degree_shift.  Blocks not set are zero.
 * Immutable once built; concurrent queries are safe. */
class LinMap {
public:
    LinMap(GradedVS source, GradedVS target, int degree_shift);

    const GradedVS& source() const { return source_; }
    const GradedVS& target() const { return target_; }
    int degree_shift() const { return shift_; }

    void set_block(int source_degree, BitMatrix block);
    // The block at a source degree; a zero block of the right shape if unset.
    // Throws std::out_of_range if the degree is outside the source truncation.
    const BitMatrix& block(int source_degree) const;

    size_t rank(int source_degree) const;
    std::vector<BitVec> kernel_basis(int source_degree) const;
    std::vector<BitVec> image_basis(int source_degree) const;
    BitVec apply(int source_degree, const BitVec& x) const;

    friend bool operator==(const LinMap&, const LinMap&) = default;

private:
    GradedVS source_, target_;
    int shift_;
    std::vector<BitMatrix> blocks_;  // indexed by source degree, always materialized

    void check_degree(int d) const;
};

// Blockwise composition g after f; degree shifts add.  Requires the target of
// f and the source of g to have equal dimensions in every degree.
LinMap compose(const LinMap& g, const LinMap& f);

LinMap identity_map(const GradedVS& v);

}  // namespace hopf2

#endif
