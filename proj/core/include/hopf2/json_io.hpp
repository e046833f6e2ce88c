#ifndef HOPF2_JSON_IO_HPP
#define HOPF2_JSON_IO_HPP

#include "hopf2/bar_tor.hpp"
#include "hopf2/hopf_core.hpp"
#include "hopf2/series.hpp"

#include <string>

namespace hopf2 {

// {"trunc": N, "coeffs": [c0, ..., cN]}
std::string series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const std::string& text);

/* Model schema:
 *   {"trunc": N,
 *    "basis": [["1"], [], ["x"], ...],          // labels by degree
 *    "product": [[i, j, k, 1], ...],            // flat indices, F2 constants
 *    "coproduct": [[k, i, j, 1], ...],
 *    "pi0": {"kind": "trivial"} | {"kind": "free_abelian", "rank": r}}
 * The first degree-0 label is the unit; the counit is 1 on every degree-0
 * basis element. */
std::string hopf_to_json(const StructuredHopf& h);
StructuredHopf hopf_from_json(const std::string& text);

// {"s_max": S, "t_max": N, "provenance": "...", "dims": [[s, t, d], ...]}
std::string tor_table_to_json(const TorTable& t);
TorTable tor_table_from_json(const std::string& text);

}  // namespace hopf2

#endif
