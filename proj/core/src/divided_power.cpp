#include "hopf2/divided_power.hpp"

#include <sstream>
#include <stdexcept>

namespace hopf2 {

int binom_mod2(uint64_t a, uint64_t b) {
    if (b > a) return 0;
    return (b & (a - b)) == 0 ? 1 : 0;
}

static std::string beta_label(int i, int k) {
    std::ostringstream out;
    out << "b" << i << "(" << k << ")";
    return out.str();
}

DividedPowerAlg make_A1(int k, int trunc) {
    if (k < 1) throw std::invalid_argument("weight must be >= 1");
    if (trunc < 0) throw std::invalid_argument("truncation must be >= 0");
    const int top = trunc / k;  // largest index i with i*k <= trunc

    std::vector<std::vector<std::string>> labels(static_cast<size_t>(trunc) + 1);
    for (int i = 0; i <= top; ++i)
        labels[static_cast<size_t>(i * k)].push_back(beta_label(i, k));

    std::vector<StructuredHopf::ProductEntry> product;
    for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j)
            if (binom_mod2(static_cast<uint64_t>(i + j), static_cast<uint64_t>(i)))
                product.push_back({BasisId{i * k, 0}, BasisId{j * k, 0},
                                   {BasisId{(i + j) * k, 0}}});

    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (int m = 0; m <= top; ++m) {
        StructuredHopf::CoproductEntry e{BasisId{m * k, 0}, {}};
        for (int i = 0; i <= m; ++i)
            e.terms.emplace_back(BasisId{i * k, 0}, BasisId{(m - i) * k, 0});
        coproduct.push_back(std::move(e));
    }

    StructuredHopf h(GradedVS(std::move(labels)), std::move(product),
                     std::move(coproduct), {1}, Pi0Descriptor::trivial());
    return DividedPowerAlg(k, std::move(h));
}

StructuredHopf make_An(int k, int n, int trunc) {
    if (n < 1) throw std::invalid_argument("tensor power must be >= 1");
    StructuredHopf acc = make_A1(k, trunc).hopf();
    for (int i = 1; i < n; ++i) acc = tensor_product(acc, make_A1(k, trunc).hopf());
    return acc;
}

int dual_pairing(const DividedPowerAlg& a, const BitVec& coords, int degree, int m) {
    if (m < 0 || static_cast<long long>(m) * a.weight() != degree)
        throw std::invalid_argument("dual_pairing: monomial degree mismatch");
    if (degree > a.trunc()) throw std::out_of_range("degree beyond truncation");
    const int dim = a.hopf().space().dim(degree);
    if (coords.size() != static_cast<size_t>(dim))
        throw std::invalid_argument("coordinate vector has the wrong dimension");
    // Degree m*k of A^1(k) is spanned by b_m(k) alone.
    if (dim == 0) return 0;
    return coords.get(0) ? 1 : 0;
}

IntegralHopf integral_A1(int top_degree) {
    if (top_degree < 0) throw std::invalid_argument("top degree must be >= 0");
    const int top = top_degree / 2;
    IntegralHopf h;
    h.labels.resize(static_cast<size_t>(top_degree) + 1);
    for (int i = 0; i <= top; ++i) {
        std::ostringstream name;
        name << "b" << i;
        h.labels[static_cast<size_t>(2 * i)].push_back(name.str());
    }
    for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j) {
            IntegralHopf::PEntry e{BasisId{2 * i, 0}, BasisId{2 * j, 0}, {}};
            e.terms.emplace_back(BasisId{2 * (i + j), 0},
                                 binomial(static_cast<long long>(i) + j, i));
            h.product.push_back(std::move(e));
        }
    for (int m = 0; m <= top; ++m) {
        IntegralHopf::CEntry e{BasisId{2 * m, 0}, {}};
        for (int i = 0; i <= m; ++i)
            e.terms.emplace_back(BasisId{2 * i, 0}, BasisId{2 * (m - i), 0}, BigInt(1));
        h.coproduct.push_back(std::move(e));
    }
    return h;
}

}  // namespace hopf2
