#include "hopf2/divided_power.hpp"
#include "hopf2/json_io.hpp"
#include "hopf2/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<int> parse_gens(const std::string& text) {
    std::vector<int> gens;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) gens.push_back(std::stoi(item));
    return gens;
}

int emit(const hopf2::RunResult& result) {
    std::cout << result.text;
    return static_cast<int>(result.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact graded-Hopf-algebra and partition-series verifier"};
    app.require_subcommand(1);

    std::string output = "text";
    app.add_option("--output", output, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    int jobs = 1;
    app.add_option("--jobs,-j", jobs, "worker threads for grid commands")
        ->check(CLI::PositiveNumber);

    long long n = 0;
    auto* cmd_partitions = app.add_subcommand("partitions", "partition numbers p(n)");
    cmd_partitions->add_option("--n", n, "argument")->required();

    std::string series_kind = "rprime";
    int k = 1;
    int trunc = 16;
    auto* cmd_series =
        app.add_subcommand("series", "dimension series of the weight-k model");
    cmd_series->add_option("--which", series_kind,
                           "rprime, hmu, k, or partition-gf");
    cmd_series->add_option("--k", k, "weight index");
    cmd_series->add_option("--trunc", trunc, "truncation degree");

    std::string model_path;
    auto* cmd_hopf = app.add_subcommand("hopf-check", "verify the Hopf axioms of a model");
    cmd_hopf->add_option("--model", model_path, "model JSON path")->required();

    std::string v_model_path;
    int v_weight = 1;
    int v_trunc = 24;
    auto* cmd_versch = app.add_subcommand(
        "verschiebung", "Verschiebung checks on a model or the weight-k coalgebra");
    cmd_versch->add_option("--model", v_model_path, "model JSON path");
    cmd_versch->add_option("--k", v_weight, "divided-power weight");
    cmd_versch->add_option("--trunc", v_trunc, "truncation degree");

    std::string gens_text;
    int torus_rank = 0;
    int s_max = 4;
    int tor_trunc = 12;
    std::string method = "both";
    auto* cmd_tor = app.add_subcommand("tor", "Tor tables of a presented algebra");
    cmd_tor->add_option("--gens", gens_text, "generator degrees, comma separated")
        ->required();
    cmd_tor->add_option("--torus", torus_rank, "group-algebra rank");
    cmd_tor->add_option("--smax", s_max, "homological bound");
    cmd_tor->add_option("--trunc", tor_trunc, "internal degree bound");
    cmd_tor->add_option("--method", method, "analytic, bar, or both")
        ->check(CLI::IsMember({"analytic", "bar", "both"}));

    std::string edge_gens;
    int edge_k = 0;
    int edge_ell = 0;
    long long edge_cap = 20000;
    auto* cmd_edge = app.add_subcommand("edge", "edge monomorphism check");
    cmd_edge->add_option("--gens", edge_gens, "generator degrees, comma separated");
    cmd_edge->add_option("--k", edge_k, "weight-k model");
    cmd_edge->add_option("--degree", edge_ell, "indecomposables degree")->required();
    cmd_edge->add_option("--cap", edge_cap, "monomial count cap");

    std::string k_range_text = "-4..8";
    int eq46_trunc = 20;
    auto* cmd_eq46 = app.add_subcommand("verify-eq46", "K * H == R series identity grid");
    cmd_eq46->add_option("--k", k_range_text, "inclusive range a..b");
    cmd_eq46->add_option("--trunc", eq46_trunc, "truncation degree");

    std::string tk_range_text = "-3..6";
    int tk_trunc = 16;
    auto* cmd_tork = app.add_subcommand(
        "verify-tor-k", "total Tor series equals the next K series, grid");
    cmd_tork->add_option("--k", tk_range_text, "inclusive range a..b");
    cmd_tork->add_option("--trunc", tk_trunc, "truncation degree");

    std::string m_range_text = "1..6";
    int ind_trunc = 16;
    auto* cmd_ind =
        app.add_subcommand("verify-induction", "dimension-count induction grid");
    cmd_ind->add_option("--m", m_range_text, "inclusive range a..b");
    cmd_ind->add_option("--trunc", ind_trunc, "truncation degree");

    auto* cmd_all = app.add_subcommand("report-all", "run every verification");

    int exp_k = 1;
    int exp_n = 1;
    int exp_trunc = 16;
    auto* cmd_export =
        app.add_subcommand("export-model", "write a divided-power model as JSON");
    cmd_export->add_option("--k", exp_k, "weight");
    cmd_export->add_option("--n", exp_n, "tensor power");
    cmd_export->add_option("--trunc", exp_trunc, "truncation degree");

    CLI11_PARSE(app, argc, argv);
    const bool json_output = output == "json";

    try {
        if (cmd_partitions->parsed()) return emit(hopf2::run_partitions(n, json_output));
        if (cmd_series->parsed())
            return emit(hopf2::run_series(series_kind, k, trunc, json_output));
        if (cmd_hopf->parsed())
            return emit(hopf2::run_hopf_check(read_file(model_path), json_output));
        if (cmd_versch->parsed())
            return emit(hopf2::run_verschiebung(
                v_model_path.empty() ? "" : read_file(v_model_path), v_weight, v_trunc,
                json_output));
        if (cmd_tor->parsed())
            return emit(hopf2::run_tor(parse_gens(gens_text), torus_rank, s_max,
                                       tor_trunc, method, jobs, json_output));
        if (cmd_edge->parsed())
            return emit(hopf2::run_edge(parse_gens(edge_gens), edge_k, edge_ell,
                                        edge_cap, json_output));
        if (cmd_eq46->parsed())
            return emit(hopf2::run_verify_eq46(hopf2::parse_range(k_range_text),
                                               eq46_trunc, jobs, json_output));
        if (cmd_tork->parsed())
            return emit(hopf2::run_verify_tor_k(hopf2::parse_range(tk_range_text),
                                                tk_trunc, jobs, json_output));
        if (cmd_ind->parsed())
            return emit(hopf2::run_verify_induction(hopf2::parse_range(m_range_text),
                                                    ind_trunc, jobs, json_output));
        if (cmd_all->parsed()) return emit(hopf2::run_report_all(jobs, json_output));
        if (cmd_export->parsed()) {
            std::cout << hopf2::hopf_to_json(hopf2::make_An(exp_k, exp_n, exp_trunc))
                      << "\n";
            return 0;
        }
    } catch (const std::overflow_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return static_cast<int>(hopf2::RunStatus::ResourceCap);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return static_cast<int>(hopf2::RunStatus::InputError);
    }
    return 0;
}
