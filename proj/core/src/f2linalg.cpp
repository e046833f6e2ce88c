#include "hopf2/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace hopf2 {

void BitVec::xor_with(const BitVec& o) {
    if (o.size_ != size_) throw std::invalid_argument("BitVec size mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
}

bool BitVec::is_zero() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

size_t BitVec::count() const {
    size_t n = 0;
    for (uint64_t w : words_) n += static_cast<size_t>(std::popcount(w));
    return n;
}

size_t BitVec::first_set() const {
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return i * 64 + static_cast<size_t>(std::countr_zero(words_[i]));
    return size_;
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::xor_row_into(size_t src, size_t dst) {
    uint64_t* d = data_.data() + dst * wpr_;
    const uint64_t* s = data_.data() + src * wpr_;
    for (size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        const uint64_t* row = data_.data() + r * wpr_;
        for (size_t w = 0; w < wpr_; ++w) {
            uint64_t bits = row[w];
            while (bits) {
                const size_t c = w * 64 + static_cast<size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::row_permuted(const std::vector<size_t>& perm) const {
    if (perm.size() != rows_) throw std::invalid_argument("permutation size mismatch");
    BitMatrix m(rows_, cols_);
    for (size_t r = 0; r < rows_; ++r)
        std::copy(data_.begin() + static_cast<long>(perm[r] * wpr_),
                  data_.begin() + static_cast<long>((perm[r] + 1) * wpr_),
                  m.data_.begin() + static_cast<long>(r * wpr_));
    return m;
}

/* Incremental elimination: each row is reduced against the pivot rows found
 * so far; pivot rows keep their leading bit as the first set bit, so the
 * reduction strictly advances.  pivot_of_col maps a column to its pivot row. */
static size_t eliminate_rows(std::vector<uint64_t>& data, size_t rows, size_t wpr,
                             size_t cols, std::vector<size_t>* pivot_cols_out) {
    std::vector<uint32_t> pivot_of_col(cols, UINT32_MAX);
    size_t rank = 0;
    for (size_t r = 0; r < rows; ++r) {
        uint64_t* row = data.data() + r * wpr;
        for (;;) {
            size_t lead = cols;
            for (size_t w = 0; w < wpr; ++w)
                if (row[w]) {
                    lead = w * 64 + static_cast<size_t>(std::countr_zero(row[w]));
                    break;
                }
            if (lead >= cols) break;  // row reduced to zero
            const uint32_t p = pivot_of_col[lead];
            if (p == UINT32_MAX) {
                pivot_of_col[lead] = static_cast<uint32_t>(r);
                if (pivot_cols_out) pivot_cols_out->push_back(lead);
                ++rank;
                break;
            }
            const uint64_t* prow = data.data() + static_cast<size_t>(p) * wpr;
            for (size_t w = lead >> 6; w < wpr; ++w) row[w] ^= prow[w];
        }
    }
    if (pivot_cols_out) std::sort(pivot_cols_out->begin(), pivot_cols_out->end());
    return rank;
}

size_t BitMatrix::rank() const {
    std::vector<uint64_t> work(data_);
    return eliminate_rows(work, rows_, wpr_, cols_, nullptr);
}

size_t rank_destructive(BitMatrix&& m) {
    return eliminate_rows(m.data_, m.rows_, m.wpr_, m.cols_, nullptr);
}

std::vector<std::pair<size_t, size_t>> BitMatrix::rref_in_place() {
    std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
    size_t next_row = 0;
    for (size_t c = 0; c < cols_ && next_row < rows_; ++c) {
        size_t pivot = rows_;
        for (size_t r = next_row; r < rows_; ++r)
            if (get(r, c)) { pivot = r; break; }
        if (pivot == rows_) continue;
        if (pivot != next_row)
            for (size_t w = 0; w < wpr_; ++w)
                std::swap(data_[pivot * wpr_ + w], data_[next_row * wpr_ + w]);
        for (size_t r = 0; r < rows_; ++r)
            if (r != next_row && get(r, c)) xor_row_into(next_row, r);
        pivots.emplace_back(next_row, c);
        ++next_row;
    }
    return pivots;
}

std::vector<BitVec> BitMatrix::kernel_basis() const {
    BitMatrix m(*this);
    const auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot_col(cols_, false);
    for (const auto& [r, c] : pivots) is_pivot_col[c] = true;
    std::vector<BitVec> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot_col[f]) continue;
        BitVec v(cols_);
        v.set(f, true);
        for (const auto& [r, c] : pivots)
            if (m.get(r, f)) v.set(c, true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<BitVec> BitMatrix::image_basis() const {
    BitMatrix m(*this);
    const auto pivots = m.rref_in_place();
    std::vector<BitVec> basis;
    basis.reserve(pivots.size());
    for (const auto& [r, c] : pivots) basis.push_back(col(c));
    return basis;
}

BitVec BitMatrix::apply(const BitVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector size mismatch");
    BitVec y(rows_);
    for (size_t r = 0; r < rows_; ++r) {
        const uint64_t* row = data_.data() + r * wpr_;
        uint64_t acc = 0;
        for (size_t w = 0; w < wpr_; ++w) acc ^= row[w] & x.words()[w];
        y.set(r, std::popcount(acc) & 1);
    }
    return y;
}

BitMatrix BitMatrix::multiplied_by(const BitMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("incompatible shapes");
    BitMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        uint64_t* orow = out.data_.data() + r * out.wpr_;
        const uint64_t* row = data_.data() + r * wpr_;
        for (size_t w = 0; w < wpr_; ++w) {
            uint64_t bits = row[w];
            while (bits) {
                const size_t k = w * 64 + static_cast<size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const uint64_t* brow = rhs.data_.data() + k * rhs.wpr_;
                for (size_t j = 0; j < rhs.wpr_; ++j) orow[j] ^= brow[j];
            }
        }
    }
    return out;
}

BitVec BitMatrix::row(size_t r) const {
    BitVec v(cols_);
    for (size_t c = 0; c < cols_; ++c)
        if (get(r, c)) v.set(c, true);
    return v;
}

BitVec BitMatrix::col(size_t c) const {
    BitVec v(rows_);
    for (size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

std::string BitMatrix::debug_text() const {
    std::string out;
    out.reserve(rows_ * (cols_ + 1));
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BitVec express_in_basis(const std::vector<BitVec>& basis, const BitVec& v) {
    const size_t n = v.size();
    // Augmented elimination: [basis vector | unit coordinate row].
    const size_t k = basis.size();
    BitMatrix aug(k + 1, n + k);
    for (size_t j = 0; j < k; ++j) {
        if (basis[j].size() != n) throw std::invalid_argument("basis size mismatch");
        for (size_t i = 0; i < n; ++i)
            if (basis[j].get(i)) aug.set(j, i, true);
        aug.set(j, n + j, true);
    }
    for (size_t i = 0; i < n; ++i)
        if (v.get(i)) aug.set(k, i, true);
    // Reduce the last row against the basis rows.
    std::vector<uint32_t> pivot_of_col(n, UINT32_MAX);
    for (size_t j = 0; j < k; ++j) {
        // Basis rows reduced among themselves first.
        for (;;) {
            size_t lead = n;
            for (size_t c = 0; c < n; ++c)
                if (aug.get(j, c)) { lead = c; break; }
            if (lead == n)
                throw std::invalid_argument("basis vectors are linearly dependent");
            if (pivot_of_col[lead] == UINT32_MAX) {
                pivot_of_col[lead] = static_cast<uint32_t>(j);
                break;
            }
            aug.xor_row_into(pivot_of_col[lead], j);
        }
    }
    for (;;) {
        size_t lead = n;
        for (size_t c = 0; c < n; ++c)
            if (aug.get(k, c)) { lead = c; break; }
        if (lead == n) break;
        if (pivot_of_col[lead] == UINT32_MAX)
            throw std::invalid_argument("vector is not in the span of the basis");
        aug.xor_row_into(pivot_of_col[lead], k);
    }
    BitVec coords(k);
    for (size_t j = 0; j < k; ++j)
        if (aug.get(k, n + j)) coords.set(j, true);
    return coords;
}

GradedVS::GradedVS(std::vector<std::vector<std::string>> labels_by_degree)
    : labels_(std::move(labels_by_degree)) {
    if (labels_.empty()) throw std::invalid_argument("GradedVS needs degree 0");
    for (const auto& degree_labels : labels_) {
        std::unordered_set<std::string> seen;
        for (const auto& l : degree_labels)
            if (!seen.insert(l).second)
                throw std::invalid_argument("duplicate basis label: " + l);
    }
}

int GradedVS::dim(int degree) const {
    if (degree < 0 || degree > trunc()) return 0;
    return static_cast<int>(labels_[static_cast<size_t>(degree)].size());
}

const std::vector<std::string>& GradedVS::labels(int degree) const {
    if (degree < 0 || degree > trunc()) throw std::out_of_range("degree out of range");
    return labels_[static_cast<size_t>(degree)];
}

const std::string& GradedVS::label(int degree, int index) const {
    const auto& ls = labels(degree);
    return ls.at(static_cast<size_t>(index));
}

size_t GradedVS::total_dim() const {
    size_t n = 0;
    for (const auto& ls : labels_) n += ls.size();
    return n;
}

LinMap::LinMap(GradedVS source, GradedVS target, int degree_shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(degree_shift) {
    blocks_.reserve(static_cast<size_t>(source_.trunc()) + 1);
    for (int d = 0; d <= source_.trunc(); ++d) {
        const int td = d + shift_;
        const size_t trows =
            (td >= 0 && td <= target_.trunc()) ? static_cast<size_t>(target_.dim(td)) : 0;
        blocks_.emplace_back(trows, static_cast<size_t>(source_.dim(d)));
    }
}

void LinMap::check_degree(int d) const {
    if (d < 0 || d > source_.trunc())
        throw std::out_of_range("degree outside source truncation");
}

void LinMap::set_block(int source_degree, BitMatrix block) {
    check_degree(source_degree);
    BitMatrix& slot = blocks_[static_cast<size_t>(source_degree)];
    if (block.rows() != slot.rows() || block.cols() != slot.cols())
        throw std::invalid_argument("block dimensions do not match the graded spaces");
    slot = std::move(block);
}

const BitMatrix& LinMap::block(int source_degree) const {
    check_degree(source_degree);
    return blocks_[static_cast<size_t>(source_degree)];
}

size_t LinMap::rank(int source_degree) const { return block(source_degree).rank(); }

std::vector<BitVec> LinMap::kernel_basis(int source_degree) const {
    return block(source_degree).kernel_basis();
}

std::vector<BitVec> LinMap::image_basis(int source_degree) const {
    return block(source_degree).image_basis();
}

BitVec LinMap::apply(int source_degree, const BitVec& x) const {
    return block(source_degree).apply(x);
}

LinMap compose(const LinMap& g, const LinMap& f) {
    // f.target and g.source must agree dimensionwise degree by degree.
    for (int d = 0; d <= std::max(f.target().trunc(), g.source().trunc()); ++d)
        if (f.target().dim(d) != g.source().dim(d))
            throw std::invalid_argument("incompatible shapes: f.target vs g.source");
    LinMap out(f.source(), g.target(), f.degree_shift() + g.degree_shift());
    for (int d = 0; d <= f.source().trunc(); ++d) {
        const int mid = d + f.degree_shift();
        if (mid < 0 || mid > g.source().trunc()) continue;  // zero through zero space
        out.set_block(d, g.block(mid).multiplied_by(f.block(d)));
    }
    return out;
}

LinMap identity_map(const GradedVS& v) {
    LinMap m(v, v, 0);
    for (int d = 0; d <= v.trunc(); ++d)
        m.set_block(d, BitMatrix::identity(static_cast<size_t>(v.dim(d))));
    return m;
}

}  // namespace hopf2
