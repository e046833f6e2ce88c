#include "hopf2/report.hpp"

#include "hopf2/divided_power.hpp"
#include "hopf2/json_io.hpp"
#include "hopf2/parallel.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace hopf2 {

using nlohmann::json;

GridRange parse_range(const std::string& text) {
    const size_t dots = text.find("..");
    GridRange r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("range must be an integer or a..b: " + text);
    }
    if (r.hi < r.lo) throw std::invalid_argument("empty range: " + text);
    return r;
}

A1VerschiebungReport verify_verschiebung_a1(int k, int trunc) {
    A1VerschiebungReport report;
    report.k = k;
    report.trunc = trunc;
    const DividedPowerAlg a1 = make_A1(k, trunc);
    const StructuredHopf& h = a1.hopf();
    const LinMap v = verschiebung(h);

    report.formula_ok = true;
    for (int i = 0; i * k <= trunc; ++i) {
        const int d = i * k;
        const BitMatrix& block = v.block(d);
        if (i % 2 == 0) {
            // b_{2n}(k) -> b_n(2k): the block is the 1x1 identity.
            if (block.rows() != 1 || block.cols() != 1 || !block.get(0, 0))
                report.formula_ok = false;
        } else {
            for (size_t r = 0; r < block.rows(); ++r)
                for (size_t c = 0; c < block.cols(); ++c)
                    if (block.get(r, c)) report.formula_ok = false;
        }
    }

    const GradedVS doubled = doubled_space(h.space(), trunc);
    report.surjective = true;
    for (int d = 0; d <= trunc; ++d) {
        const int target_dim = doubled.dim(d);
        if (target_dim == 0) continue;
        if (v.rank(d) != static_cast<size_t>(target_dim)) report.surjective = false;
    }

    report.hopf_map = verschiebung_is_hopf_map(h);
    report.doubled_match =
        same_structure(phi_double(h), make_A1(2 * k, trunc).hopf());
    return report;
}

namespace {

json series_json(const TruncSeries& s) { return json::parse(series_to_json(s)); }

json a1_verschiebung_json(const A1VerschiebungReport& r) {
    return json{{"k", r.k},
                {"trunc", r.trunc},
                {"formula", r.formula_ok},
                {"surjective", r.surjective},
                {"hopf_map", r.hopf_map},
                {"doubled_regrading_matches", r.doubled_match},
                {"ok", r.ok()}};
}

json eq46_section(GridRange k_range, int trunc, int jobs, bool* all_ok) {
    const size_t cells = static_cast<size_t>(k_range.hi - k_range.lo + 1);
    std::vector<json> rows(cells);
    parallel_for(cells, jobs, [&](size_t i) {
        const int k = k_range.lo + static_cast<int>(i);
        rows[i] = json{{"k", k}, {"trunc", trunc}, {"holds", eq46_check(k, trunc)}};
    });
    json out = json::array();
    bool ok = true;
    for (auto& r : rows) {
        ok = ok && r.at("holds").get<bool>();
        out.push_back(std::move(r));
    }
    if (all_ok) *all_ok = ok;
    return out;
}

json tor_k_section(GridRange k_range, int trunc, int jobs, bool* all_ok) {
    const size_t cells = static_cast<size_t>(k_range.hi - k_range.lo + 1);
    std::vector<json> rows(cells);
    parallel_for(cells, jobs, [&](size_t i) {
        const int k = k_range.lo + static_cast<int>(i);
        rows[i] = json{{"k", k}, {"trunc", trunc}, {"holds", prop39_4_check(k, trunc)}};
    });
    json out = json::array();
    bool ok = true;
    for (auto& r : rows) {
        ok = ok && r.at("holds").get<bool>();
        out.push_back(std::move(r));
    }
    if (all_ok) *all_ok = ok;
    return out;
}

json induction_cell_json(const InductionCell& c) {
    json row{{"ell", c.ell},
             {"k", c.k},
             {"m", c.m},
             {"tor1_dim", c.tor1_dim},
             {"k_next_dim", c.k_next_dim},
             {"higher_tor_sum", c.higher_tor_sum},
             {"consistent", c.consistent},
             {"path", c.path}};
    json anti = json::array();
    for (const auto& [s, t, d] : c.anti_diagonal) anti.push_back({s, t, d});
    row["anti_diagonal"] = std::move(anti);
    if (c.bar_mismatch)
        row["bar_mismatch"] = {(*c.bar_mismatch)[0], (*c.bar_mismatch)[1],
                               (*c.bar_mismatch)[2]};
    return row;
}

json induction_section(GridRange m_range, int trunc, int jobs, bool* all_ok) {
    struct Cell {
        int m, k, ell;
    };
    std::vector<Cell> cells;
    for (int m = m_range.lo; m <= m_range.hi; ++m)
        for (int k = -2; k <= m + 1; ++k) cells.push_back(Cell{m, k, m + k - 1});
    std::vector<json> rows(cells.size());
    InductionOptions opts;
    opts.jobs = 1;  // the grid is already parallel cell by cell
    parallel_for(cells.size(), jobs, [&](size_t i) {
        const Cell& c = cells[i];
        if (c.ell < 1) {
            rows[i] = json{{"ell", c.ell}, {"k", c.k},   {"m", c.m},
                           {"base_case", true},          {"consistent", true},
                           {"path", "stable-range"}};
            return;
        }
        rows[i] = induction_cell_json(induction_check(c.ell, c.k, trunc, opts));
    });
    json out = json::array();
    bool ok = true;
    for (auto& r : rows) {
        ok = ok && r.at("consistent").get<bool>();
        out.push_back(std::move(r));
    }
    if (all_ok) *all_ok = ok;
    return out;
}

std::string render_status_text(const json& j) {
    std::ostringstream out;
    out << j.dump(2) << "\n";
    return out.str();
}

RunResult finish(RunStatus status, const json& j, bool json_output,
                 const std::string& text) {
    RunResult r;
    r.status = status;
    r.json = j.dump();
    r.text = json_output ? r.json + "\n" : text;
    return r;
}

}  // namespace

RunResult run_partitions(long long n, bool json_output) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    const BigInt p = partitions(n);
    json j{{"schema", 1}, {"n", n}, {"p", p.str()}};
    return finish(RunStatus::Ok, j, json_output, p.str() + "\n");
}

RunResult run_series(const std::string& which, int k, int trunc, bool json_output) {
    TruncSeries s = TruncSeries::one(trunc);
    if (which == "rprime")
        s = r_prime_series(k, trunc);
    else if (which == "hmu")
        s = hmu_prime_series(k, trunc);
    else if (which == "k")
        s = k_series(k, trunc);
    else if (which == "partition-gf") {
        std::vector<SeriesFactor> factors;
        for (int m = 1; m <= trunc; ++m)
            factors.push_back(SeriesFactor{
                sub(TruncSeries::one(trunc), TruncSeries::monomial(trunc, m)), -1});
        s = product_pow(factors, trunc);
    } else {
        throw std::invalid_argument("unknown series kind: " + which);
    }
    json j{{"schema", 1}, {"kind", which}, {"k", k}, {"series", series_json(s)}};
    return finish(RunStatus::Ok, j, json_output, to_string(s) + "\n");
}

RunResult run_hopf_check(const std::string& model_json, bool json_output) {
    const StructuredHopf h = hopf_from_json(model_json);
    const std::vector<AxiomFailure> failures = check_axioms(h);
    json fails = json::array();
    for (const auto& f : failures) fails.push_back({{"axiom", f.axiom}, {"witness", f.witness}});
    json j{{"schema", 1},
           {"trunc", h.trunc()},
           {"ok", failures.empty()},
           {"failures", std::move(fails)}};
    std::ostringstream text;
    if (failures.empty()) {
        text << "all axioms hold (trunc " << h.trunc() << ")\n";
    } else {
        for (const auto& f : failures)
            text << "FAIL " << f.axiom << " at " << f.witness << "\n";
    }
    return finish(failures.empty() ? RunStatus::Ok : RunStatus::IdentityFailure, j,
                  json_output, text.str());
}

RunResult run_verschiebung(const std::string& model_json, int a1_weight, int trunc,
                           bool json_output) {
    if (!model_json.empty()) {
        const StructuredHopf h = hopf_from_json(model_json);
        const std::vector<int> kernel = verschiebung_kernel_dims(h);
        json j{{"schema", 1}, {"trunc", h.trunc()}, {"kernel_dims", kernel},
               {"hopf_map", verschiebung_is_hopf_map(h)}};
        std::ostringstream text;
        text << "verschiebung kernel dims:";
        for (int d : kernel) text << " " << d;
        text << "\n";
        return finish(RunStatus::Ok, j, json_output, text.str());
    }
    const A1VerschiebungReport report = verify_verschiebung_a1(a1_weight, trunc);
    const json j = json{{"schema", 1}, {"a1", a1_verschiebung_json(report)}};
    std::ostringstream text;
    text << "A1(" << a1_weight << ") trunc " << trunc << ": formula "
         << (report.formula_ok ? "ok" : "FAIL") << ", surjective "
         << (report.surjective ? "ok" : "FAIL") << ", hopf map "
         << (report.hopf_map ? "ok" : "FAIL") << ", regrading "
         << (report.doubled_match ? "ok" : "FAIL") << "\n";
    return finish(report.ok() ? RunStatus::Ok : RunStatus::IdentityFailure, j,
                  json_output, text.str());
}

RunResult run_tor(const std::vector<int>& gens, int torus_rank, int s_max, int trunc,
                  const std::string& method, int jobs, bool json_output) {
    const PresentedAlgebra a(gens, torus_rank, trunc);
    json j{{"schema", 1}, {"gens", gens}, {"torus_rank", torus_rank}};
    std::ostringstream text;
    RunStatus status = RunStatus::Ok;
    if (method == "analytic" || method == "both") {
        const TorTable t = analytic_tor(a, s_max, trunc);
        j["analytic"] = json::parse(tor_table_to_json(t));
        text << "analytic:\n" << t.text_grid();
    }
    if (method == "bar" || method == "both") {
        const TorTable t = tor_dims(a, s_max, trunc, jobs);
        j["computed"] = json::parse(tor_table_to_json(t));
        text << "computed:\n" << t.text_grid();
    }
    if (method == "both") {
        const bool agree = dims_equal(tor_dims(a, s_max, trunc, jobs),
                                      analytic_tor(a, s_max, trunc));
        j["agree"] = agree;
        text << (agree ? "tables agree\n" : "TABLES DISAGREE\n");
        if (!agree) status = RunStatus::IdentityFailure;
    }
    return finish(status, j, json_output, text.str());
}

RunResult run_edge(const std::vector<int>& gens, int rw_k, int ell, long long size_cap,
                   bool json_output) {
    if (!gens.empty()) {
        const PresentedAlgebra a(gens, 0, ell);
        const EdgeHom e = edge_hom(a, ell);
        json j{{"schema", 1}, {"ell", ell}, {"q_dim", a.generator_counts()[static_cast<size_t>(ell)]},
               {"tor1_dim", e.tor_dim}, {"injective", e.injective}};
        std::ostringstream text;
        text << "edge Q_" << ell << " -> Tor_{1," << ell << "}: "
             << (e.injective ? "injective" : "NOT injective") << "\n";
        return finish(e.injective ? RunStatus::Ok : RunStatus::IdentityFailure, j,
                      json_output, text.str());
    }
    const EdgeCheckStatus status = edge_injectivity_check(rw_k, ell, size_cap);
    json j{{"schema", 1},
           {"k", rw_k},
           {"ell", ell},
           {"size_cap", size_cap},
           {"status", status == EdgeCheckStatus::Injective      ? "injective"
                      : status == EdgeCheckStatus::NotInjective ? "not-injective"
                                                                : "cap-exceeded"}};
    std::ostringstream text;
    text << "edge check k=" << rw_k << " ell=" << ell << ": "
         << j.at("status").get<std::string>() << "\n";
    RunStatus rs = status == EdgeCheckStatus::Injective ? RunStatus::Ok
                   : status == EdgeCheckStatus::NotInjective
                       ? RunStatus::IdentityFailure
                       : RunStatus::ResourceCap;
    return finish(rs, j, json_output, text.str());
}

RunResult run_verify_eq46(GridRange k_range, int trunc, int jobs, bool json_output) {
    bool ok = false;
    json cells = eq46_section(k_range, trunc, jobs, &ok);
    json j{{"schema", 1}, {"check", "eq46"}, {"cells", std::move(cells)}};
    std::ostringstream text;
    for (const auto& c : j.at("cells"))
        text << "k=" << c.at("k").get<int>() << " N=" << trunc << " "
             << (c.at("holds").get<bool>() ? "ok" : "FAIL") << "\n";
    text << (ok ? "eq46 grid: all hold\n" : "eq46 grid: FAILURES\n");
    return finish(ok ? RunStatus::Ok : RunStatus::IdentityFailure, j, json_output,
                  text.str());
}

RunResult run_verify_tor_k(GridRange k_range, int trunc, int jobs, bool json_output) {
    bool ok = false;
    json cells = tor_k_section(k_range, trunc, jobs, &ok);
    json j{{"schema", 1}, {"check", "tor-k"}, {"cells", std::move(cells)}};
    std::ostringstream text;
    for (const auto& c : j.at("cells"))
        text << "k=" << c.at("k").get<int>() << " N=" << trunc << " "
             << (c.at("holds").get<bool>() ? "ok" : "FAIL") << "\n";
    text << (ok ? "tor-k grid: all hold\n" : "tor-k grid: FAILURES\n");
    return finish(ok ? RunStatus::Ok : RunStatus::IdentityFailure, j, json_output,
                  text.str());
}

RunResult run_verify_induction(GridRange m_range, int trunc, int jobs,
                               bool json_output) {
    bool ok = false;
    json cells = induction_section(m_range, trunc, jobs, &ok);
    json j{{"schema", 1}, {"check", "induction"}, {"cells", std::move(cells)}};
    std::ostringstream text;
    for (const auto& c : j.at("cells")) {
        text << "m=" << c.at("m").get<int>() << " k=" << c.at("k").get<int>();
        if (c.contains("base_case")) {
            text << " base case\n";
            continue;
        }
        text << " ell=" << c.at("ell").get<int>() << " tor1=" << c.at("tor1_dim").get<long long>()
             << " knext=" << c.at("k_next_dim").get<long long>()
             << " higher=" << c.at("higher_tor_sum").get<long long>() << " ["
             << c.at("path").get<std::string>() << "] "
             << (c.at("consistent").get<bool>() ? "ok" : "FAIL") << "\n";
    }
    text << (ok ? "induction grid: all consistent\n" : "induction grid: FAILURES\n");
    return finish(ok ? RunStatus::Ok : RunStatus::IdentityFailure, j, json_output,
                  text.str());
}

RunResult run_report_all(int jobs, bool json_output) {
    json j{{"schema", 1}};
    bool all_ok = true;

    // Partition numbers against the product expansion, n <= 30.
    {
        const int n = 30;
        std::vector<SeriesFactor> factors;
        for (int m = 1; m <= n; ++m)
            factors.push_back(SeriesFactor{
                sub(TruncSeries::one(n), TruncSeries::monomial(n, m)), -1});
        const TruncSeries expansion = product_pow(factors, n);
        bool ok = true;
        json values = json::array();
        for (int i = 0; i <= n; ++i) {
            const BigInt p = partitions(i);
            ok = ok && p == expansion.coeff(i);
            values.push_back(p.str());
        }
        j["partitions"] = json{{"max_n", n}, {"values", std::move(values)}, {"ok", ok}};
        all_ok = all_ok && ok;
    }

    {
        bool ok = false;
        j["eq46"] = json{{"trunc", 20}, {"cells", eq46_section(GridRange{-4, 8}, 20, jobs, &ok)}};
        j["eq46"]["ok"] = ok;
        all_ok = all_ok && ok;
    }
    {
        bool ok = false;
        j["tor_k"] =
            json{{"trunc", 16}, {"cells", tor_k_section(GridRange{-3, 6}, 16, jobs, &ok)}};
        j["tor_k"]["ok"] = ok;
        all_ok = all_ok && ok;
    }
    {
        bool ok = false;
        j["induction"] = json{{"trunc", 16},
                              {"cells", induction_section(GridRange{1, 6}, 16, jobs, &ok)}};
        j["induction"]["ok"] = ok;
        all_ok = all_ok && ok;
    }
    {
        std::vector<json> rows(3);
        parallel_for(3, jobs, [&](size_t i) {
            rows[i] = a1_verschiebung_json(verify_verschiebung_a1(static_cast<int>(i) + 1, 24));
        });
        bool ok = true;
        json arr = json::array();
        for (auto& r : rows) {
            ok = ok && r.at("ok").get<bool>();
            arr.push_back(std::move(r));
        }
        j["verschiebung_a1"] = json{{"trunc", 24}, {"cells", std::move(arr)}, {"ok", ok}};
        all_ok = all_ok && ok;
    }
    {
        // Axiom suite on the divided-power models.
        struct ModelSpec {
            int k, n;
        };
        std::vector<ModelSpec> specs{{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {3, 2}};
        std::vector<json> rows(specs.size());
        parallel_for(specs.size(), jobs, [&](size_t i) {
            const StructuredHopf h = make_An(specs[i].k, specs[i].n, 16);
            const auto failures = check_axioms(h);
            rows[i] = json{{"k", specs[i].k},
                           {"n", specs[i].n},
                           {"trunc", 16},
                           {"ok", failures.empty()}};
        });
        bool ok = true;
        json arr = json::array();
        for (auto& r : rows) {
            ok = ok && r.at("ok").get<bool>();
            arr.push_back(std::move(r));
        }
        j["hopf_axioms"] = json{{"cells", std::move(arr)}, {"ok", ok}};
        all_ok = all_ok && ok;
    }
    {
        struct EdgeSpec {
            int k, ell;
        };
        std::vector<EdgeSpec> specs{{1, 3}, {2, 4}, {3, 4}, {0, 3}, {-1, 3}};
        std::vector<json> rows(specs.size());
        parallel_for(specs.size(), jobs, [&](size_t i) {
            const EdgeCheckStatus s = edge_injectivity_check(specs[i].k, specs[i].ell, 20000);
            rows[i] = json{{"k", specs[i].k},
                           {"ell", specs[i].ell},
                           {"status", s == EdgeCheckStatus::Injective      ? "injective"
                                      : s == EdgeCheckStatus::NotInjective ? "not-injective"
                                                                           : "cap-exceeded"}};
        });
        bool ok = true;
        json arr = json::array();
        for (auto& r : rows) {
            ok = ok && r.at("status").get<std::string>() != "not-injective";
            arr.push_back(std::move(r));
        }
        j["edge"] = json{{"size_cap", 20000}, {"cells", std::move(arr)}, {"ok", ok}};
        all_ok = all_ok && ok;
    }

    j["ok"] = all_ok;
    std::ostringstream text;
    text << "report-all: " << (all_ok ? "all checks hold" : "FAILURES") << "\n"
         << render_status_text(j);
    return finish(all_ok ? RunStatus::Ok : RunStatus::IdentityFailure, j, json_output,
                  text.str());
}

}  // namespace hopf2
