#include "hopf2/json_io.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>

namespace hopf2 {

using nlohmann::json;

namespace {

long long coeff_to_int64(const BigInt& c) {
    if (c < std::numeric_limits<long long>::min() ||
        c > std::numeric_limits<long long>::max())
        throw std::overflow_error("coefficient exceeds the JSON integer range");
    return c.convert_to<long long>();
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, true);  // throws json::parse_error
    return j;
}

}  // namespace

std::string series_to_json(const TruncSeries& s) {
    json j;
    j["trunc"] = s.trunc_degree();
    json coeffs = json::array();
    for (const BigInt& c : s.coeffs()) coeffs.push_back(coeff_to_int64(c));
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

TruncSeries series_from_json(const std::string& text) {
    const json j = parse(text);
    const int trunc = j.at("trunc").get<int>();
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<long long>());
    return TruncSeries(trunc, std::move(coeffs));
}

std::string hopf_to_json(const StructuredHopf& h) {
    json j;
    j["trunc"] = h.trunc();
    json basis = json::array();
    for (int d = 0; d <= h.trunc(); ++d) basis.push_back(h.space().labels(d));
    j["basis"] = std::move(basis);

    json product = json::array();
    for (const auto& e : h.product_entries())
        for (const BasisId& t : e.terms)
            product.push_back({h.flat_index(e.x), h.flat_index(e.y), h.flat_index(t), 1});
    j["product"] = std::move(product);

    json coproduct = json::array();
    for (const auto& e : h.coproduct_entries())
        for (const auto& [a, b] : e.terms)
            coproduct.push_back({h.flat_index(e.x), h.flat_index(a), h.flat_index(b), 1});
    j["coproduct"] = std::move(coproduct);

    if (h.pi0().kind == Pi0Descriptor::Kind::FreeAbelian)
        j["pi0"] = {{"kind", "free_abelian"}, {"rank", h.pi0().rank}};
    else
        j["pi0"] = {{"kind", "trivial"}};
    return j.dump();
}

StructuredHopf hopf_from_json(const std::string& text) {
    const json j = parse(text);
    const int trunc = j.at("trunc").get<int>();
    if (trunc < 0) throw std::invalid_argument("trunc must be >= 0");

    std::vector<std::vector<std::string>> labels;
    for (const auto& degree_labels : j.at("basis"))
        labels.push_back(degree_labels.get<std::vector<std::string>>());
    if (static_cast<int>(labels.size()) != trunc + 1)
        throw std::invalid_argument("basis must list labels for degrees 0..trunc");
    GradedVS space(labels);

    std::vector<size_t> degree_of_flat, index_of_flat;
    for (int d = 0; d <= trunc; ++d)
        for (int i = 0; i < space.dim(d); ++i) {
            degree_of_flat.push_back(static_cast<size_t>(d));
            index_of_flat.push_back(static_cast<size_t>(i));
        }
    auto id_from_flat = [&](size_t f) -> BasisId {
        if (f >= degree_of_flat.size())
            throw std::invalid_argument("basis index out of range");
        return BasisId{static_cast<int>(degree_of_flat[f]),
                       static_cast<int>(index_of_flat[f])};
    };

    std::vector<StructuredHopf::ProductEntry> product;
    for (const auto& row : j.at("product")) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("product rows must be [i, j, k, c]");
        if (row[3].get<long long>() != 1)
            throw std::invalid_argument("structure constants over F2 must be 1");
        const BasisId x = id_from_flat(row[0].get<size_t>());
        const BasisId y = id_from_flat(row[1].get<size_t>());
        const BasisId t = id_from_flat(row[2].get<size_t>());
        if (t.degree != x.degree + y.degree)
            throw std::invalid_argument("product term with incompatible degree");
        auto it = std::find_if(product.begin(), product.end(),
                               [&](const StructuredHopf::ProductEntry& e) {
                                   return e.x == x && e.y == y;
                               });
        if (it == product.end())
            product.push_back({x, y, {t}});
        else
            it->terms.push_back(t);
    }

    std::vector<StructuredHopf::CoproductEntry> coproduct;
    for (const auto& row : j.at("coproduct")) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("coproduct rows must be [k, i, j, c]");
        if (row[3].get<long long>() != 1)
            throw std::invalid_argument("structure constants over F2 must be 1");
        const BasisId x = id_from_flat(row[0].get<size_t>());
        const BasisId a = id_from_flat(row[1].get<size_t>());
        const BasisId b = id_from_flat(row[2].get<size_t>());
        if (a.degree + b.degree != x.degree)
            throw std::invalid_argument("coproduct term with incompatible degree");
        auto it = std::find_if(coproduct.begin(), coproduct.end(),
                               [&](const StructuredHopf::CoproductEntry& e) {
                                   return e.x == x;
                               });
        if (it == coproduct.end())
            coproduct.push_back({x, {{a, b}}});
        else
            it->terms.emplace_back(a, b);
    }

    Pi0Descriptor pi0 = Pi0Descriptor::trivial();
    if (j.contains("pi0")) {
        const std::string kind = j.at("pi0").at("kind").get<std::string>();
        if (kind == "free_abelian")
            pi0 = Pi0Descriptor::free_abelian(j.at("pi0").at("rank").get<int>());
        else if (kind != "trivial")
            throw std::invalid_argument("unknown pi0 kind: " + kind);
    }

    std::vector<uint8_t> counit(static_cast<size_t>(space.dim(0)), 1);
    return StructuredHopf(std::move(space), std::move(product), std::move(coproduct),
                          std::move(counit), pi0);
}

std::string tor_table_to_json(const TorTable& t) {
    json j;
    j["s_max"] = t.s_max();
    j["t_max"] = t.t_max();
    j["provenance"] = t.provenance() == TorProvenance::Computed ? "computed" : "analytic";
    json dims = json::array();
    for (const auto& [st, v] : t.dims()) dims.push_back({st.first, st.second, v});
    j["dims"] = std::move(dims);
    return j.dump();
}

TorTable tor_table_from_json(const std::string& text) {
    const json j = parse(text);
    const std::string prov = j.at("provenance").get<std::string>();
    TorTable t(j.at("s_max").get<int>(), j.at("t_max").get<int>(),
               prov == "computed" ? TorProvenance::Computed : TorProvenance::Analytic);
    for (const auto& row : j.at("dims"))
        t.set_dim(row[0].get<int>(), row[1].get<int>(), row[2].get<long long>());
    return t;
}

}  // namespace hopf2
