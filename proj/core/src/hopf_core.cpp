#include "hopf2/hopf_core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hopf2 {

namespace {

template <typename T>
void toggle_sorted(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x)
        v.erase(it);
    else
        v.insert(it, x);
}

template <typename T>
void sym_diff_impl(std::vector<T>& c, const std::vector<T>& v) {
    if (c.empty()) {
        c = v;
        return;
    }
    std::vector<T> out;
    out.reserve(c.size() + v.size());
    std::set_symmetric_difference(c.begin(), c.end(), v.begin(), v.end(),
                                  std::back_inserter(out));
    c = std::move(out);
}

}  // namespace

void sym_diff(SparseElem& c, const SparseElem& v) { sym_diff_impl(c, v); }
void sym_diff(SparsePairElem& c, const SparsePairElem& v) { sym_diff_impl(c, v); }

StructuredHopf::StructuredHopf(GradedVS space, std::vector<ProductEntry> product,
                               std::vector<CoproductEntry> coproduct,
                               std::vector<uint8_t> counit_degree0, Pi0Descriptor pi0)
    : space_(std::move(space)),
      product_(std::move(product)),
      coproduct_(std::move(coproduct)),
      counit_(std::move(counit_degree0)),
      pi0_(pi0) {
    std::sort(product_.begin(), product_.end(),
              [](const ProductEntry& a, const ProductEntry& b) {
                  return std::tie(a.x, a.y) < std::tie(b.x, b.y);
              });
    std::sort(coproduct_.begin(), coproduct_.end(),
              [](const CoproductEntry& a, const CoproductEntry& b) { return a.x < b.x; });
    for (auto& e : product_) std::sort(e.terms.begin(), e.terms.end());
    for (auto& e : coproduct_) std::sort(e.terms.begin(), e.terms.end());
    validate();
}

void StructuredHopf::validate() const {
    if (space_.dim(0) < 1)
        throw std::invalid_argument("degree 0 must contain the unit");
    if (counit_.size() != static_cast<size_t>(space_.dim(0)))
        throw std::invalid_argument("counit vector size must match degree-0 dimension");
    const int n = trunc();
    auto check_id = [&](BasisId b) {
        if (b.degree < 0 || b.degree > n || b.index < 0 || b.index >= space_.dim(b.degree))
            throw std::invalid_argument("basis id out of range");
    };
    for (size_t i = 0; i < product_.size(); ++i) {
        const auto& e = product_[i];
        check_id(e.x);
        check_id(e.y);
        if (i > 0 && product_[i - 1].x == e.x && product_[i - 1].y == e.y)
            throw std::invalid_argument("duplicate product entry");
        for (const BasisId& t : e.terms) {
            check_id(t);
            if (t.degree != e.x.degree + e.y.degree)
                throw std::invalid_argument("product term with wrong degree");
        }
        for (size_t j = 1; j < e.terms.size(); ++j)
            if (e.terms[j] == e.terms[j - 1])
                throw std::invalid_argument("duplicate product term");
    }
    for (size_t i = 0; i < coproduct_.size(); ++i) {
        const auto& e = coproduct_[i];
        check_id(e.x);
        if (i > 0 && coproduct_[i - 1].x == e.x)
            throw std::invalid_argument("duplicate coproduct entry");
        for (const auto& [a, b] : e.terms) {
            check_id(a);
            check_id(b);
            if (a.degree + b.degree != e.x.degree)
                throw std::invalid_argument("coproduct term with wrong degree");
        }
        for (size_t j = 1; j < e.terms.size(); ++j)
            if (e.terms[j] == e.terms[j - 1])
                throw std::invalid_argument("duplicate coproduct term");
    }
}

const SparseElem& StructuredHopf::product_of(BasisId x, BasisId y) const {
    static const SparseElem empty;
    auto it = std::lower_bound(product_.begin(), product_.end(), std::make_pair(x, y),
                               [](const ProductEntry& e, const std::pair<BasisId, BasisId>& k) {
                                   return std::tie(e.x, e.y) < std::tie(k.first, k.second);
                               });
    if (it == product_.end() || it->x != x || it->y != y) return empty;
    return it->terms;
}

const SparsePairElem& StructuredHopf::coproduct_of(BasisId x) const {
    static const SparsePairElem empty;
    auto it = std::lower_bound(coproduct_.begin(), coproduct_.end(), x,
                               [](const CoproductEntry& e, BasisId k) { return e.x < k; });
    if (it == coproduct_.end() || it->x != x) return empty;
    return it->terms;
}

bool StructuredHopf::counit(BasisId x) const {
    if (x.degree != 0) return false;
    return counit_[static_cast<size_t>(x.index)] != 0;
}

SparseElem StructuredHopf::multiply(const SparseElem& a, const SparseElem& b) const {
    SparseElem acc;
    for (const BasisId& x : a)
        for (const BasisId& y : b) sym_diff(acc, product_of(x, y));
    return acc;
}

SparsePairElem StructuredHopf::coproduct(const SparseElem& a) const {
    SparsePairElem acc;
    for (const BasisId& x : a) sym_diff(acc, coproduct_of(x));
    return acc;
}

size_t StructuredHopf::flat_index(BasisId x) const {
    size_t off = 0;
    for (int d = 0; d < x.degree; ++d) off += static_cast<size_t>(space_.dim(d));
    return off + static_cast<size_t>(x.index);
}

BasisId StructuredHopf::from_flat_index(size_t i) const {
    for (int d = 0; d <= trunc(); ++d) {
        const size_t dim = static_cast<size_t>(space_.dim(d));
        if (i < dim) return BasisId{d, static_cast<int>(i)};
        i -= dim;
    }
    throw std::out_of_range("flat basis index out of range");
}

void StructuredHopf::toggle_product_term(BasisId x, BasisId y, BasisId target) {
    if (target.degree != x.degree + y.degree)
        throw std::invalid_argument("toggle target has incompatible degree");
    auto it = std::lower_bound(product_.begin(), product_.end(), std::make_pair(x, y),
                               [](const ProductEntry& e, const std::pair<BasisId, BasisId>& k) {
                                   return std::tie(e.x, e.y) < std::tie(k.first, k.second);
                               });
    if (it == product_.end() || it->x != x || it->y != y) {
        ProductEntry e{x, y, {target}};
        product_.insert(it, std::move(e));
        return;
    }
    toggle_sorted(it->terms, target);
    if (it->terms.empty()) product_.erase(it);
}

void StructuredHopf::toggle_coproduct_term(BasisId x, BasisId left, BasisId right) {
    if (left.degree + right.degree != x.degree)
        throw std::invalid_argument("toggle term has incompatible degree");
    auto it = std::lower_bound(coproduct_.begin(), coproduct_.end(), x,
                               [](const CoproductEntry& e, BasisId k) { return e.x < k; });
    if (it == coproduct_.end() || it->x != x) {
        CoproductEntry e{x, {{left, right}}};
        coproduct_.insert(it, std::move(e));
        return;
    }
    toggle_sorted(it->terms, std::make_pair(left, right));
    if (it->terms.empty()) coproduct_.erase(it);
}

namespace {

std::string witness_label(const StructuredHopf& h, BasisId x) {
    return h.space().label(x.degree, x.index);
}

std::string witness_labels(const StructuredHopf& h, std::initializer_list<BasisId> xs) {
    std::string out;
    for (BasisId x : xs) {
        if (!out.empty()) out += ", ";
        out += witness_label(h, x);
    }
    return out;
}

// All basis ids in degree-major order.
std::vector<BasisId> all_basis(const StructuredHopf& h) {
    std::vector<BasisId> out;
    for (int d = 0; d <= h.trunc(); ++d)
        for (int i = 0; i < h.space().dim(d); ++i) out.push_back(BasisId{d, i});
    return out;
}

bool counit_of_elem(const StructuredHopf& h, const SparseElem& e) {
    bool acc = false;
    for (const BasisId& x : e) acc ^= h.counit(x);
    return acc;
}

}  // namespace

std::vector<AxiomFailure> check_axioms(const StructuredHopf& h, bool stop_at_first) {
    std::vector<AxiomFailure> failures;
    auto record = [&](const std::string& axiom, const std::string& witness) {
        failures.push_back(AxiomFailure{axiom, witness});
    };
    auto done = [&]() { return stop_at_first && !failures.empty(); };

    const std::vector<BasisId> basis = all_basis(h);
    const BasisId u = h.unit();

    // Counit axiom: (eps (x) id) Delta x = x = (id (x) eps) Delta x.
    for (BasisId x : basis) {
        SparseElem left, right;
        for (const auto& [a, b] : h.coproduct_of(x)) {
            if (h.counit(a)) toggle_sorted(right, b);
            if (h.counit(b)) toggle_sorted(left, a);
        }
        const SparseElem expect{x};
        if (left != expect || right != expect) {
            record("counit", witness_label(h, x));
            if (done()) return failures;
        }
    }

    // Counit is an algebra map on degree 0.
    if (!h.counit(u)) record("counit_algebra_map", "unit");
    if (done()) return failures;
    for (int i = 0; i < h.space().dim(0); ++i)
        for (int j = 0; j < h.space().dim(0); ++j) {
            const BasisId x{0, i}, y{0, j};
            if (counit_of_elem(h, h.product_of(x, y)) != (h.counit(x) && h.counit(y))) {
                record("counit_algebra_map", witness_labels(h, {x, y}));
                if (done()) return failures;
            }
        }

    // Unit axiom.
    for (BasisId x : basis) {
        const SparseElem expect{x};
        if (h.product_of(u, x) != expect || h.product_of(x, u) != expect) {
            record("unit", witness_label(h, x));
            if (done()) return failures;
        }
    }

    // Cocommutativity: the coproduct is symmetric term by term.
    for (const auto& e : h.coproduct_entries()) {
        SparsePairElem swapped;
        swapped.reserve(e.terms.size());
        for (const auto& [a, b] : e.terms) swapped.emplace_back(b, a);
        std::sort(swapped.begin(), swapped.end());
        if (swapped != e.terms) {
            record("cocommutativity", witness_label(h, e.x));
            if (done()) return failures;
        }
    }

    // Commutativity: compare each stored entry against its mirror.
    for (const auto& e : h.product_entries()) {
        const SparseElem& mirror = h.product_of(e.y, e.x);
        if (mirror != e.terms) {
            const bool mirror_present = !mirror.empty();
            // Report each unordered pair once.
            if (std::tie(e.x, e.y) <= std::tie(e.y, e.x) || !mirror_present) {
                record("commutativity", witness_labels(h, {e.x, e.y}));
                if (done()) return failures;
            }
        }
    }

    // Coassociativity.
    using Triple = std::tuple<BasisId, BasisId, BasisId>;
    for (BasisId x : basis) {
        std::vector<Triple> left, right;
        for (const auto& [a, b] : h.coproduct_of(x)) {
            for (const auto& [a1, a2] : h.coproduct_of(a))
                toggle_sorted(left, Triple{a1, a2, b});
            for (const auto& [b1, b2] : h.coproduct_of(b))
                toggle_sorted(right, Triple{a, b1, b2});
        }
        if (left != right) {
            record("coassociativity", witness_label(h, x));
            if (done()) return failures;
        }
    }

    // Associativity on every basis triple within truncation.
    const int n = h.trunc();
    for (BasisId x : basis) {
        if (done()) return failures;
        for (BasisId y : basis) {
            if (x.degree + y.degree > n) break;  // degree-major order
            for (BasisId z : basis) {
                if (x.degree + y.degree + z.degree > n) break;
                SparseElem lhs, rhs;
                for (const BasisId& t : h.product_of(x, y)) sym_diff(lhs, h.product_of(t, z));
                for (const BasisId& t : h.product_of(y, z)) sym_diff(rhs, h.product_of(x, t));
                if (lhs != rhs) {
                    record("associativity", witness_labels(h, {x, y, z}));
                    if (done()) return failures;
                }
            }
        }
    }

    // Bialgebra compatibility, diagonal pairs first.
    auto bialgebra_pair = [&](BasisId x, BasisId y) -> bool {
        SparsePairElem lhs = h.coproduct(h.product_of(x, y));
        SparsePairElem rhs;
        for (const auto& [x1, x2] : h.coproduct_of(x))
            for (const auto& [y1, y2] : h.coproduct_of(y)) {
                const SparseElem& l = h.product_of(x1, y1);
                if (l.empty()) continue;
                const SparseElem& r = h.product_of(x2, y2);
                for (const BasisId& a : l)
                    for (const BasisId& b : r) toggle_sorted(rhs, std::make_pair(a, b));
            }
        return lhs == rhs;
    };
    for (BasisId x : basis) {
        if (2 * x.degree > n) break;
        if (!bialgebra_pair(x, x)) {
            record("bialgebra", witness_labels(h, {x, x}));
            if (done()) return failures;
        }
    }
    for (BasisId x : basis) {
        if (done()) return failures;
        for (BasisId y : basis) {
            if (x.degree + y.degree > n) break;
            if (x == y) continue;
            if (!bialgebra_pair(x, y)) {
                record("bialgebra", witness_labels(h, {x, y}));
                if (done()) return failures;
            }
        }
    }

    return failures;
}

bool same_structure(const StructuredHopf& a, const StructuredHopf& b) {
    if (a.trunc() != b.trunc()) return false;
    for (int d = 0; d <= a.trunc(); ++d)
        if (a.space().dim(d) != b.space().dim(d)) return false;
    auto entries_equal = [](const auto& ea, const auto& eb) {
        if (ea.size() != eb.size()) return false;
        for (size_t i = 0; i < ea.size(); ++i) {
            if constexpr (requires { ea[i].y; }) {
                if (ea[i].x != eb[i].x || ea[i].y != eb[i].y || ea[i].terms != eb[i].terms)
                    return false;
            } else {
                if (ea[i].x != eb[i].x || ea[i].terms != eb[i].terms) return false;
            }
        }
        return true;
    };
    if (!entries_equal(a.product_entries(), b.product_entries())) return false;
    if (!entries_equal(a.coproduct_entries(), b.coproduct_entries())) return false;
    for (int i = 0; i < a.space().dim(0); ++i)
        if (a.counit(BasisId{0, i}) != b.counit(BasisId{0, i})) return false;
    return a.pi0() == b.pi0();
}

std::vector<BitVec> connected_component_basis(const StructuredHopf& h, int degree) {
    if (degree < 0 || degree > h.trunc()) throw std::out_of_range("degree out of range");
    const int dim = h.space().dim(degree);
    const int dim0 = h.space().dim(0);
    BitMatrix cond(static_cast<size_t>(dim) * dim0, static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        const BasisId x{degree, j};
        for (const auto& [a, b] : h.coproduct_of(x))
            if (b.degree == 0)
                cond.flip(static_cast<size_t>(a.index) * dim0 + b.index,
                          static_cast<size_t>(j));
        cond.flip(static_cast<size_t>(j) * dim0 + 0, static_cast<size_t>(j));
    }
    return cond.kernel_basis();
}

std::vector<BitVec> primitives(const StructuredHopf& h, int degree) {
    if (degree < 1 || degree > h.trunc())
        throw std::out_of_range("primitives: degree out of range");
    const std::vector<BitVec> conn = connected_component_basis(h, degree);
    const int d = degree;
    // Row offsets for the components of h (x) h in total degree d.
    std::vector<size_t> offset(static_cast<size_t>(d) + 2, 0);
    for (int a = 0; a <= d; ++a)
        offset[static_cast<size_t>(a) + 1] =
            offset[static_cast<size_t>(a)] +
            static_cast<size_t>(h.space().dim(a)) * h.space().dim(d - a);
    const size_t rows = offset.back();
    auto pair_row = [&](BasisId a, BasisId b) {
        return offset[static_cast<size_t>(a.degree)] +
               static_cast<size_t>(a.index) * h.space().dim(b.degree) + b.index;
    };
    BitMatrix cond(rows, conn.size());
    const BasisId u = h.unit();
    for (size_t j = 0; j < conn.size(); ++j) {
        for (size_t i = 0; i < conn[j].size(); ++i) {
            if (!conn[j].get(i)) continue;
            const BasisId x{d, static_cast<int>(i)};
            for (const auto& [a, b] : h.coproduct_of(x)) cond.flip(pair_row(a, b), j);
            cond.flip(pair_row(x, u), j);
            cond.flip(pair_row(u, x), j);
        }
    }
    std::vector<BitVec> coords = cond.kernel_basis();
    std::vector<BitVec> out;
    out.reserve(coords.size());
    for (const BitVec& c : coords) {
        BitVec v(static_cast<size_t>(h.space().dim(d)));
        for (size_t j = 0; j < conn.size(); ++j)
            if (c.get(j)) v.xor_with(conn[j]);
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

SparseElem sparse_from_bits(const BitVec& v, int degree) {
    SparseElem e;
    for (size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) e.push_back(BasisId{degree, static_cast<int>(i)});
    return e;
}

BitVec bits_from_sparse(const SparseElem& e, int degree, int dim) {
    BitVec v(static_cast<size_t>(dim));
    for (const BasisId& x : e) {
        if (x.degree != degree) throw std::logic_error("inhomogeneous element");
        v.flip(static_cast<size_t>(x.index));
    }
    return v;
}

}  // namespace

IndecomposablesResult indecomposables(const StructuredHopf& h, int degree) {
    if (degree < 1 || degree > h.trunc())
        throw std::out_of_range("indecomposables: degree out of range");
    const int d = degree;
    std::vector<BitVec> conn = connected_component_basis(h, d);
    const size_t dim_i = conn.size();
    const bool conn_is_ambient = dim_i == static_cast<size_t>(h.space().dim(d));

    // Span of products of positive-degree connected elements, in connected
    // coordinates.
    std::vector<BitVec> products;
    for (int a = 1; a < d; ++a) {
        const int b = d - a;
        if (b < 1) continue;
        const std::vector<BitVec> wa = connected_component_basis(h, a);
        const std::vector<BitVec> wb = connected_component_basis(h, b);
        for (const BitVec& va : wa) {
            const SparseElem ea = sparse_from_bits(va, a);
            for (const BitVec& vb : wb) {
                const SparseElem eb = sparse_from_bits(vb, b);
                const SparseElem prod = h.multiply(ea, eb);
                if (prod.empty()) continue;
                BitVec ambient = bits_from_sparse(prod, d, h.space().dim(d));
                if (conn_is_ambient) {
                    products.push_back(std::move(ambient));
                } else {
                    products.push_back(express_in_basis(conn, ambient));
                }
            }
        }
    }

    BitMatrix span(products.size(), dim_i);
    for (size_t r = 0; r < products.size(); ++r)
        for (size_t c = 0; c < dim_i; ++c)
            if (products[r].get(c)) span.set(r, c, true);
    // RREF of the subspace spanned by the product vectors.
    BitMatrix red = span;
    struct Rref {
        static std::vector<std::pair<size_t, size_t>> run(BitMatrix& m) {
            std::vector<std::pair<size_t, size_t>> pivots;
            size_t next = 0;
            for (size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
                size_t p = m.rows();
                for (size_t r = next; r < m.rows(); ++r)
                    if (m.get(r, c)) { p = r; break; }
                if (p == m.rows()) continue;
                if (p != next)
                    for (size_t cc = 0; cc < m.cols(); ++cc) {
                        const bool t = m.get(p, cc);
                        m.set(p, cc, m.get(next, cc));
                        m.set(next, cc, t);
                    }
                for (size_t r = 0; r < m.rows(); ++r)
                    if (r != next && m.get(r, c)) m.xor_row_into(next, r);
                pivots.emplace_back(next, c);
                ++next;
            }
            return pivots;
        }
    };
    const auto pivots = Rref::run(red);
    const size_t dim_i2 = pivots.size();
    const size_t dim_q = dim_i - dim_i2;

    std::vector<bool> is_pivot(dim_i, false);
    for (const auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<size_t> free_pos(dim_i, 0);
    size_t nf = 0;
    for (size_t c = 0; c < dim_i; ++c)
        if (!is_pivot[c]) free_pos[c] = nf++;

    BitMatrix projection(dim_q, dim_i);
    for (size_t c = 0; c < dim_i; ++c) {
        if (!is_pivot[c]) {
            projection.set(free_pos[c], c, true);
        } else {
            size_t row = 0;
            for (const auto& [r, pc] : pivots)
                if (pc == c) { row = r; break; }
            for (size_t f = 0; f < dim_i; ++f)
                if (!is_pivot[f] && red.get(row, f)) projection.set(free_pos[f], c, true);
        }
    }

    return IndecomposablesResult{static_cast<int>(dim_q), static_cast<int>(dim_i),
                                 static_cast<int>(dim_i2), std::move(projection),
                                 std::move(conn)};
}

LinMap indecomposables_map(const StructuredHopf& h) {
    if (h.space().dim(0) != 1)
        throw std::invalid_argument("indecomposables_map requires a connected input");
    const int n = h.trunc();
    std::vector<std::vector<std::string>> qlabels(static_cast<size_t>(n) + 1);
    std::vector<BitMatrix> blocks(static_cast<size_t>(n) + 1);
    for (int d = 1; d <= n; ++d) {
        IndecomposablesResult r = indecomposables(h, d);
        for (int i = 0; i < r.dim_q; ++i) {
            std::ostringstream name;
            name << "q" << d << "_" << i;
            qlabels[static_cast<size_t>(d)].push_back(name.str());
        }
        blocks[static_cast<size_t>(d)] = std::move(r.projection);
    }
    LinMap m(h.space(), GradedVS(std::move(qlabels)), 0);
    for (int d = 1; d <= n; ++d) m.set_block(d, std::move(blocks[static_cast<size_t>(d)]));
    return m;
}

GradedVS doubled_space(const GradedVS& v, int trunc) {
    std::vector<std::vector<std::string>> labels(static_cast<size_t>(trunc) + 1);
    for (int m = 0; 2 * m <= trunc && m <= v.trunc(); ++m)
        labels[static_cast<size_t>(2 * m)] = v.labels(m);
    return GradedVS(std::move(labels));
}

StructuredHopf phi_double(const StructuredHopf& h) {
    const int n = h.trunc();
    auto dbl = [](BasisId x) { return BasisId{2 * x.degree, x.index}; };
    std::vector<StructuredHopf::ProductEntry> product;
    for (const auto& e : h.product_entries()) {
        if (2 * (e.x.degree + e.y.degree) > n) continue;
        StructuredHopf::ProductEntry ne{dbl(e.x), dbl(e.y), {}};
        for (const BasisId& t : e.terms) ne.terms.push_back(dbl(t));
        product.push_back(std::move(ne));
    }
    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (const auto& e : h.coproduct_entries()) {
        if (2 * e.x.degree > n) continue;
        StructuredHopf::CoproductEntry ne{dbl(e.x), {}};
        for (const auto& [a, b] : e.terms) ne.terms.emplace_back(dbl(a), dbl(b));
        coproduct.push_back(std::move(ne));
    }
    std::vector<uint8_t> counit;
    for (int i = 0; i < h.space().dim(0); ++i)
        counit.push_back(h.counit(BasisId{0, i}) ? 1 : 0);
    return StructuredHopf(doubled_space(h.space(), n), std::move(product),
                          std::move(coproduct), std::move(counit), h.pi0());
}

LinMap verschiebung(const StructuredHopf& h) {
    // The Tate class of the coproduct only makes sense cocommutatively.
    for (const auto& e : h.coproduct_entries()) {
        SparsePairElem swapped;
        swapped.reserve(e.terms.size());
        for (const auto& [a, b] : e.terms) swapped.emplace_back(b, a);
        std::sort(swapped.begin(), swapped.end());
        if (swapped != e.terms)
            throw AxiomError("verschiebung requires a cocommutative coproduct (fails at " +
                             h.space().label(e.x.degree, e.x.index) + ")");
    }
    const int n = h.trunc();
    LinMap v(h.space(), doubled_space(h.space(), n), 0);
    for (int d = 0; d <= n; d += 2) {
        const int half = d / 2;
        BitMatrix block(static_cast<size_t>(h.space().dim(half)),
                        static_cast<size_t>(h.space().dim(d)));
        for (int j = 0; j < h.space().dim(d); ++j)
            for (const auto& [a, b] : h.coproduct_of(BasisId{d, j}))
                if (a.degree == half && a == b)
                    block.flip(static_cast<size_t>(a.index), static_cast<size_t>(j));
        v.set_block(d, std::move(block));
    }
    return v;
}

bool verschiebung_is_hopf_map(const StructuredHopf& h) {
    const LinMap v = verschiebung(h);
    const StructuredHopf dbl = phi_double(h);
    const int n = h.trunc();
    auto v_of = [&](const SparseElem& e, int degree) -> SparseElem {
        BitVec x(static_cast<size_t>(h.space().dim(degree)));
        for (const BasisId& b : e) {
            if (b.degree != degree) throw std::logic_error("inhomogeneous element");
            x.flip(static_cast<size_t>(b.index));
        }
        const BitVec y = v.apply(degree, x);
        SparseElem out;
        for (size_t i = 0; i < y.size(); ++i)
            if (y.get(i)) out.push_back(BasisId{degree, static_cast<int>(i)});
        return out;
    };
    // Algebra map.
    for (int d1 = 0; d1 <= n; ++d1)
        for (int i1 = 0; i1 < h.space().dim(d1); ++i1)
            for (int d2 = 0; d1 + d2 <= n; ++d2)
                for (int i2 = 0; i2 < h.space().dim(d2); ++i2) {
                    const BasisId x{d1, i1}, y{d2, i2};
                    const SparseElem lhs = v_of(h.product_of(x, y), d1 + d2);
                    const SparseElem rhs = dbl.multiply(v_of(SparseElem{x}, d1),
                                                        v_of(SparseElem{y}, d2));
                    if (lhs != rhs) return false;
                }
    // Coalgebra map.
    for (int d = 0; d <= n; ++d)
        for (int i = 0; i < h.space().dim(d); ++i) {
            const BasisId x{d, i};
            const SparsePairElem lhs = dbl.coproduct(v_of(SparseElem{x}, d));
            SparsePairElem rhs;
            for (const auto& [a, b] : h.coproduct_of(x)) {
                const SparseElem va = v_of(SparseElem{a}, a.degree);
                const SparseElem vb = v_of(SparseElem{b}, b.degree);
                for (const BasisId& ta : va)
                    for (const BasisId& tb : vb)
                        toggle_sorted(rhs, std::make_pair(ta, tb));
            }
            if (lhs != rhs) return false;
        }
    return true;
}

std::vector<int> verschiebung_kernel_dims(const StructuredHopf& h) {
    const LinMap v = verschiebung(h);
    std::vector<int> dims;
    dims.reserve(static_cast<size_t>(h.trunc()) + 1);
    for (int d = 0; d <= h.trunc(); ++d) {
        const std::vector<BitVec> conn = connected_component_basis(h, d);
        BitMatrix restricted(v.block(d).rows(), conn.size());
        for (size_t j = 0; j < conn.size(); ++j) {
            BitVec img = v.block(d).apply(conn[j]);
            for (size_t r = 0; r < img.size(); ++r)
                if (img.get(r)) restricted.set(r, j, true);
        }
        dims.push_back(static_cast<int>(conn.size() - restricted.rank()));
    }
    return dims;
}

SplitReport component_split_check(const StructuredHopf& h) {
    const int dim0 = h.space().dim(0);
    if (dim0 > 1) {
        if (h.pi0().kind == Pi0Descriptor::Kind::FreeAbelian)
            throw std::invalid_argument(
                "materialized non-connected degree 0 conflicts with the symbolic pi0 "
                "descriptor");
        throw std::invalid_argument(
            "non-connected degree-0 structure without a pi0 descriptor");
    }
    SplitReport report;
    report.degree0_dim = dim0;
    report.pi0 = h.pi0();
    report.symbolic_pi0 = h.pi0().kind == Pi0Descriptor::Kind::FreeAbelian;
    report.ok = true;
    const SparseElem unit_elem{h.unit()};
    for (int d = 0; d <= h.trunc(); ++d) {
        const std::vector<BitVec> conn = connected_component_basis(h, d);
        const int dim = h.space().dim(d);
        report.total_dims.push_back(dim);
        report.connected_dims.push_back(static_cast<int>(conn.size()));
        // Multiplication h_0 (x) h'_d -> h_d must be an isomorphism.
        BitMatrix mult(static_cast<size_t>(dim), conn.size());
        for (size_t j = 0; j < conn.size(); ++j) {
            const SparseElem w = sparse_from_bits(conn[j], d);
            const SparseElem prod = h.multiply(unit_elem, w);
            for (const BasisId& t : prod) mult.flip(static_cast<size_t>(t.index), j);
        }
        const bool dims_match = dim == static_cast<int>(conn.size()) * dim0;
        const bool iso = mult.rank() == static_cast<size_t>(dim);
        if (!dims_match || !iso) {
            report.ok = false;
            std::ostringstream msg;
            msg << "degree " << d << ": dim " << dim << ", connected dim " << conn.size()
                << (iso ? "" : ", multiplication not surjective");
            report.failures.push_back(msg.str());
        }
    }
    return report;
}

LinMap antipode(const StructuredHopf& h) {
    if (h.space().dim(0) != 1)
        throw std::invalid_argument("antipode requires a connected input");
    const int n = h.trunc();
    const BasisId u = h.unit();
    // chi on each basis element, filled in by increasing degree.
    std::vector<std::vector<SparseElem>> chi(static_cast<size_t>(n) + 1);
    chi[0] = {SparseElem{u}};
    for (int d = 1; d <= n; ++d) {
        chi[static_cast<size_t>(d)].resize(static_cast<size_t>(h.space().dim(d)));
        for (int j = 0; j < h.space().dim(d); ++j) {
            const BasisId x{d, j};
            SparseElem acc{x};
            for (const auto& [a, b] : h.coproduct_of(x)) {
                if (b.degree == 0) {
                    // The (d,0) component must be x (x) unit.
                    if (!(a == x && b == u))
                        throw AxiomError("antipode recursion inconsistency at " +
                                         witness_label(h, x));
                    continue;
                }
                if (a.degree == 0) {
                    if (!(a == u && b == x))
                        throw AxiomError("antipode recursion inconsistency at " +
                                         witness_label(h, x));
                    continue;
                }
                // chi(b) is known: |b| < d.
                const SparseElem& chib = chi[static_cast<size_t>(b.degree)]
                                            [static_cast<size_t>(b.index)];
                sym_diff(acc, h.multiply(SparseElem{a}, chib));
            }
            chi[static_cast<size_t>(d)][static_cast<size_t>(j)] = std::move(acc);
        }
    }
    // Verify both defining diagrams.
    for (int d = 0; d <= n; ++d)
        for (int j = 0; j < h.space().dim(d); ++j) {
            const BasisId x{d, j};
            SparseElem lhs, rhs;
            for (const auto& [a, b] : h.coproduct_of(x)) {
                sym_diff(lhs, h.multiply(SparseElem{a},
                                         chi[static_cast<size_t>(b.degree)]
                                            [static_cast<size_t>(b.index)]));
                sym_diff(rhs, h.multiply(chi[static_cast<size_t>(a.degree)]
                                            [static_cast<size_t>(a.index)],
                                         SparseElem{b}));
            }
            SparseElem expect;
            if (h.counit(x)) expect.push_back(u);
            if (lhs != expect || rhs != expect)
                throw AxiomError("antipode diagram fails at " + witness_label(h, x));
        }
    LinMap m(h.space(), h.space(), 0);
    for (int d = 0; d <= n; ++d) {
        BitMatrix block(static_cast<size_t>(h.space().dim(d)),
                        static_cast<size_t>(h.space().dim(d)));
        for (int j = 0; j < h.space().dim(d); ++j)
            for (const BasisId& t : chi[static_cast<size_t>(d)][static_cast<size_t>(j)])
                block.flip(static_cast<size_t>(t.index), static_cast<size_t>(j));
        m.set_block(d, std::move(block));
    }
    return m;
}

namespace {

struct TensorIndexer {
    const GradedVS& a;
    const GradedVS& b;
    int trunc;
    // offsets[d][da] = flat index of the first (da, d-da) pair in degree d.
    std::vector<std::vector<int>> offsets;

    TensorIndexer(const GradedVS& a_, const GradedVS& b_, int trunc_)
        : a(a_), b(b_), trunc(trunc_) {
        offsets.resize(static_cast<size_t>(trunc) + 1);
        for (int d = 0; d <= trunc; ++d) {
            offsets[static_cast<size_t>(d)].resize(static_cast<size_t>(d) + 2, 0);
            int acc = 0;
            for (int da = 0; da <= d; ++da) {
                offsets[static_cast<size_t>(d)][static_cast<size_t>(da)] = acc;
                acc += a.dim(da) * b.dim(d - da);
            }
            offsets[static_cast<size_t>(d)][static_cast<size_t>(d) + 1] = acc;
        }
    }

    BasisId id(BasisId xa, BasisId xb) const {
        const int d = xa.degree + xb.degree;
        const int idx = offsets[static_cast<size_t>(d)][static_cast<size_t>(xa.degree)] +
                        xa.index * b.dim(xb.degree) + xb.index;
        return BasisId{d, idx};
    }
};

}  // namespace

StructuredHopf tensor_product(const StructuredHopf& ha, const StructuredHopf& hb) {
    const int n = std::min(ha.trunc(), hb.trunc());
    TensorIndexer ix(ha.space(), hb.space(), n);

    std::vector<std::vector<std::string>> labels(static_cast<size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        for (int da = 0; da <= d; ++da)
            for (int i = 0; i < ha.space().dim(da); ++i)
                for (int j = 0; j < hb.space().dim(d - da); ++j)
                    labels[static_cast<size_t>(d)].push_back(
                        ha.space().label(da, i) + "|" + hb.space().label(d - da, j));

    std::vector<StructuredHopf::ProductEntry> product;
    for (int d1 = 0; d1 <= n; ++d1)
        for (int d2 = 0; d1 + d2 <= n; ++d2)
            for (int a1 = 0; a1 <= d1; ++a1)
                for (int a2 = 0; a2 <= d2; ++a2) {
                    const int b1 = d1 - a1, b2 = d2 - a2;
                    for (int i1 = 0; i1 < ha.space().dim(a1); ++i1)
                        for (int j1 = 0; j1 < hb.space().dim(b1); ++j1)
                            for (int i2 = 0; i2 < ha.space().dim(a2); ++i2)
                                for (int j2 = 0; j2 < hb.space().dim(b2); ++j2) {
                                    const SparseElem& pa =
                                        ha.product_of({a1, i1}, {a2, i2});
                                    if (pa.empty()) continue;
                                    const SparseElem& pb =
                                        hb.product_of({b1, j1}, {b2, j2});
                                    if (pb.empty()) continue;
                                    StructuredHopf::ProductEntry e{
                                        ix.id({a1, i1}, {b1, j1}),
                                        ix.id({a2, i2}, {b2, j2}),
                                        {}};
                                    for (const BasisId& ta : pa)
                                        for (const BasisId& tb : pb)
                                            e.terms.push_back(ix.id(ta, tb));
                                    product.push_back(std::move(e));
                                }
                }

    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (int d = 0; d <= n; ++d)
        for (int da = 0; da <= d; ++da)
            for (int i = 0; i < ha.space().dim(da); ++i)
                for (int j = 0; j < hb.space().dim(d - da); ++j) {
                    StructuredHopf::CoproductEntry e{ix.id({da, i}, {d - da, j}), {}};
                    for (const auto& [x1, x2] : ha.coproduct_of({da, i}))
                        for (const auto& [y1, y2] : hb.coproduct_of({d - da, j}))
                            e.terms.emplace_back(ix.id(x1, y1), ix.id(x2, y2));
                    coproduct.push_back(std::move(e));
                }

    std::vector<uint8_t> counit;
    for (int i = 0; i < ha.space().dim(0); ++i)
        for (int j = 0; j < hb.space().dim(0); ++j)
            counit.push_back((ha.counit({0, i}) && hb.counit({0, j})) ? 1 : 0);

    Pi0Descriptor pi0 = Pi0Descriptor::trivial();
    if (ha.pi0().kind == Pi0Descriptor::Kind::FreeAbelian ||
        hb.pi0().kind == Pi0Descriptor::Kind::FreeAbelian)
        pi0 = Pi0Descriptor::free_abelian(
            (ha.pi0().kind == Pi0Descriptor::Kind::FreeAbelian ? ha.pi0().rank : 0) +
            (hb.pi0().kind == Pi0Descriptor::Kind::FreeAbelian ? hb.pi0().rank : 0));

    return StructuredHopf(GradedVS(std::move(labels)), std::move(product),
                          std::move(coproduct), std::move(counit), pi0);
}

GradedVS phi_regrade(const IntegralGraded& v, int k, int trunc) {
    if (k < 1) throw std::invalid_argument("phi_regrade requires k >= 1");
    std::vector<std::vector<std::string>> labels(static_cast<size_t>(trunc) + 1);
    for (size_t d = 0; d < v.labels_by_degree.size(); ++d) {
        if (v.labels_by_degree[d].empty()) continue;
        if (d % 2 != 0)
            throw std::invalid_argument("phi_regrade input has odd-degree content");
        const long long m = static_cast<long long>(k) * (static_cast<long long>(d) / 2);
        if (m > trunc) continue;
        labels[static_cast<size_t>(m)] = v.labels_by_degree[d];
    }
    return GradedVS(std::move(labels));
}

StructuredHopf phi_regrade_hopf(const IntegralHopf& h, int k, int trunc) {
    if (k < 1) throw std::invalid_argument("phi_regrade requires k >= 1");
    for (size_t d = 0; d < h.labels.size(); ++d)
        if (d % 2 != 0 && !h.labels[d].empty())
            throw std::invalid_argument("phi_regrade input has odd-degree content");
    auto regrade = [&](BasisId x) -> BasisId {
        return BasisId{k * (x.degree / 2), x.index};
    };
    auto in_range = [&](BasisId x) { return regrade(x).degree <= trunc; };

    GradedVS space = phi_regrade(IntegralGraded{h.labels}, k, trunc);

    std::vector<StructuredHopf::ProductEntry> product;
    for (const auto& e : h.product) {
        if (!in_range(e.x) || !in_range(e.y)) continue;
        StructuredHopf::ProductEntry ne{regrade(e.x), regrade(e.y), {}};
        if (ne.x.degree + ne.y.degree > trunc) continue;
        for (const auto& [t, c] : e.terms)
            if (c % 2 != 0) ne.terms.push_back(regrade(t));
        if (!ne.terms.empty()) product.push_back(std::move(ne));
    }
    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (const auto& e : h.coproduct) {
        if (!in_range(e.x)) continue;
        StructuredHopf::CoproductEntry ne{regrade(e.x), {}};
        for (const auto& [a, b, c] : e.terms)
            if (c % 2 != 0) ne.terms.emplace_back(regrade(a), regrade(b));
        coproduct.push_back(std::move(ne));
    }
    std::vector<uint8_t> counit(static_cast<size_t>(space.dim(0)), 1);
    return StructuredHopf(std::move(space), std::move(product), std::move(coproduct),
                          std::move(counit), Pi0Descriptor::trivial());
}

}  // namespace hopf2
