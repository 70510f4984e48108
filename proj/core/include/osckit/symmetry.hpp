#pragma once

#include <optional>
#include <vector>

#include "osckit/cycles.hpp"
#include "osckit/quad.hpp"

namespace osckit {

/// Symmetry package of a trace-T matrix B: S(B) = {+-G^q}, G^j = B,
/// and a reversing symmetry R with R B R^-1 = B^-1 when B is reversible.
struct SymmetryData {
    Mat2 B;
    Mat2 G;
    Int root_index;  // j with G^j = B
    bool reversible;
    std::optional<Mat2> reversing;
};

/// Generator G of S(B) together with the maximal j such that G^j = B.
/// G is searched in the centralizer {x I + y B} via the fundamental unit
/// and returned with positive trace.
std::pair<Mat2, Int> symmetry_generator(const Mat2& B);

/// Reversing symmetry of B in H0_red, if B is reversible. The result is
/// verified exactly (R B R^-1 = B^-1) and normalized to the
/// lexicographically smaller of {R, -R}.
std::optional<Mat2> reversing_symmetry(const Mat2& B);

/// Generators {-I, G, [R]} of R(B) for arbitrary B in B_T; B is reduced
/// to H0_red internally and R transported back to B's frame.
std::vector<Mat2> reversing_group(const Mat2& B);

SymmetryData symmetry_data(const Mat2& B);

}  // namespace osckit
