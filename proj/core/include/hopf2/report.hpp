#ifndef HOPF2_REPORT_HPP
#define HOPF2_REPORT_HPP

#include "hopf2/rw_model.hpp"

#include <string>
#include <vector>

namespace hopf2 {

// Inclusive integer range; single values are degenerate ranges.
struct GridRange {
    int lo = 0;
    int hi = 0;
};

// Parses "a..b" or a single integer "a".
GridRange parse_range(const std::string& text);

enum class RunStatus : int {
    Ok = 0,
    IdentityFailure = 1,
    InputError = 2,
    ResourceCap = 3,
};

struct RunResult {
    RunStatus status = RunStatus::Ok;
    std::string text;  // human-readable report
    std::string json;  // machine-readable report, schema-versioned
};

struct A1VerschiebungReport {
    int k = 0;
    int trunc = 0;
    bool formula_ok = false;    // v(b_{2n}(k)) = b_n(2k), v(b_{2n+1}(k)) = 0
    bool surjective = false;    // full rank onto every populated target degree
    bool hopf_map = false;      // algebra and coalgebra map onto the regrading
    bool doubled_match = false; // the doubled regrading is the weight-2k model
    bool ok() const { return formula_ok && surjective && hopf_map && doubled_match; }
};

A1VerschiebungReport verify_verschiebung_a1(int k, int trunc);

RunResult run_partitions(long long n, bool json_output);
RunResult run_series(const std::string& which, int k, int trunc, bool json_output);
RunResult run_hopf_check(const std::string& model_json, bool json_output);
RunResult run_verschiebung(const std::string& model_json, int a1_weight, int trunc,
                           bool json_output);
RunResult run_tor(const std::vector<int>& gens, int torus_rank, int s_max, int trunc,
                  const std::string& method, int jobs, bool json_output);
RunResult run_edge(const std::vector<int>& gens, int rw_k, int ell, long long size_cap,
                   bool json_output);
RunResult run_verify_eq46(GridRange k_range, int trunc, int jobs, bool json_output);
RunResult run_verify_tor_k(GridRange k_range, int trunc, int jobs, bool json_output);
RunResult run_verify_induction(GridRange m_range, int trunc, int jobs, bool json_output);
RunResult run_report_all(int jobs, bool json_output);

}  // namespace hopf2

#endif
