#pragma once

#include <random>
#include <vector>

#include "osckit/groups.hpp"

namespace osckit::testing {

/// Random element of SL(2,Z) as a word of the given length in
/// hat_A^{+-1}, hat_B^{+-1}.
Mat2 random_unimodular(std::mt19937_64& rng, int length);

/// Independent brute-force isomorphism decision between two groups
/// Osc^r(B,l): enumerates generator images (K entries bounded by k_bound,
/// the Heisenberg part of the delta image bounded by m_bound), solves the
/// central exponents exactly, and accepts only candidates whose defining
/// relations all verify in exact group arithmetic and that are surjective
/// by construction. Returns true iff a verified isomorphism was found.
bool oracle_iso(const GroupRep& g1, const GroupRep& g2, long k_bound, long m_bound);

/// All symmetries of B with |entries| <= bound, by exhaustive search over
/// the first row (the remaining entries are forced by K B = B K).
std::vector<Mat2> brute_symmetries(const Mat2& B, const Int& bound);

/// All reversing symmetries of B with |entries| <= bound.
std::vector<Mat2> brute_reversers(const Mat2& B, const Int& bound);

}  // namespace osckit::testing
