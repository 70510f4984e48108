#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "osckit/classify.hpp"
#include "osckit/groups.hpp"
#include "osckit/symmetry.hpp"

namespace osckit {

using json = nlohmann::json;

// Rationals render as "p/q" with decimal numerator/denominator.
std::string rat_to_string(const Rat& v);
Rat parse_rat(const std::string& s);

std::array<long, 2> parse_residue_pair(const std::string& s);

json quad_to_json(const QuadElem& q);
QuadElem quad_from_json(const json& j);

json cycles_to_json(const Int& T, const std::vector<Cycle>& cycles);
json classlist_to_json(const ClassList& cl);
ClassList classlist_from_json(const json& j);
json symmetry_to_json(const SymmetryData& sd);
json iso_to_json(const IsoResult& res);
json commensurable_to_json(const CommResult& res);
json reduction_to_json(const Reduction& red);
json contosc_to_json(const ContOsc& g);
json lattice_generators_to_json(const LatticeParams& p);

/// Operator label "A", "B^2", ...
std::string op_label(const CycleOp& op);

/// One digraph per cycle; node labels "a b\nc d", edge labels like the
/// cycle figures.
std::string cycles_to_dot(const Int& T, const std::vector<Cycle>& cycles);

std::string cycles_to_text(const Int& T, const std::vector<Cycle>& cycles);
std::string classlist_to_text(const ClassList& cl);

/// Classification table for T = 3..tmax over the given r values, grouped
/// by congruence conditions on r.
std::string render_table(const Int& tmax, const std::vector<long>& rset);

/// Runs the invariant suite; prints one line per check to `out` and
/// returns true when everything passes.
bool run_selftest(std::ostream& out);

}  // namespace osckit
