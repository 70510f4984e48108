#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "osckit/mat2.hpp"

namespace osckit {

/// One conjugation arrow of a cycle: hat_A^exp or hat_B^exp with exp >= 1.
struct CycleOp {
    bool is_A;
    Int exp;

    bool operator==(const CycleOp& o) const { return is_A == o.is_A && exp == o.exp; }
};

Mat2 op_matrix(const CycleOp& op);

/// Cyclic sequence of distinct H0_red matrices; operators[i] conjugates
/// elements[i] to elements[(i+1) % size]. Stored in canonical orientation:
/// elements[0] is the lexicographically smallest member.
struct Cycle {
    std::vector<Mat2> elements;
    std::vector<CycleOp> operators;

    size_t size() const { return elements.size(); }
    bool contains(const Mat2& m) const;

    bool operator==(const Cycle& o) const {
        return elements == o.elements && operators == o.operators;
    }
};

/// All entries positive (requires det 1, trace > 2).
bool in_H0(const Mat2& B);
/// H0 and the maximal entry sits on the diagonal.
bool in_H0_red(const Mat2& B);

/// Successor of B inside its cycle, together with the conjugation operator:
/// a < d gives hat_A^q with q = floor(d/c) (c != 1) or d-1 (c = 1);
/// a > d gives hat_B^q with q = floor(a/b) (b != 1) or a-1 (b = 1).
std::pair<CycleOp, Mat2> cycle_step(const Mat2& B);

/// The full cycle through B (canonical orientation).
Cycle cycle_of(const Mat2& B);

/// Cycle decomposition of H0_red for trace T, sorted by smallest member.
std::vector<Cycle> decompose_trace(const Int& T);

/// Enumerates H0_red for trace T (sorted lexicographically).
std::vector<Mat2> enumerate_H0_red(const Int& T);

/// Elementwise transpose / conjugation by hat_U, renormalized to canonical
/// orientation. Both are again cycles in H0_red.
Cycle cycle_transpose(const Cycle& z);
Cycle cycle_bar(const Cycle& z);

Mat2 bar(const Mat2& B);

/// Conjugator M with to = M * from * M^-1 read off the cycle arrows along
/// the path from -> to. Both matrices must be members of z.
Mat2 path_conjugator(const Cycle& z, const Mat2& from, const Mat2& to);

struct Reduction {
    Mat2 rep;          // in H0_red
    Mat2 conjugator;   // in SL(2,Z), rep = conjugator * B * conjugator^-1
};

/// Raised when the bounded search cannot reach H0; carries the best
/// candidate seen so that the failure is inspectable.
class ReductionFailure : public std::runtime_error {
public:
    ReductionFailure(std::string msg, Mat2 best, Mat2 best_conjugator)
        : std::runtime_error(std::move(msg)),
          best(std::move(best)),
          best_conjugator(std::move(best_conjugator)) {}

    Mat2 best;
    Mat2 best_conjugator;
};

/// Default search budget, overridable with OSCKIT_SEARCH_BUDGET.
std::uint64_t default_search_budget();

/// Conjugates B (det 1, trace > 2) into H0_red. Greedy descent on the
/// entrywise absolute sum, with a bounded best-first search as fallback;
/// the returned pair is verified exactly before returning.
Reduction reduce_to_cycle(const Mat2& B);
Reduction reduce_to_cycle(const Mat2& B, std::uint64_t budget);

}  // namespace osckit
