#include "osckit/cycles.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace osckit {

Mat2 op_matrix(const CycleOp& op) {
    return unimodular_pow(op.is_A ? hat_A() : hat_B(), op.exp);
}

bool Cycle::contains(const Mat2& m) const {
    return std::find(elements.begin(), elements.end(), m) != elements.end();
}

bool in_H0(const Mat2& B) {
    return B.det() == 1 && B.trace() > 2 && B.a > 0 && B.b > 0 && B.c > 0 && B.d > 0;
}

bool in_H0_red(const Mat2& B) {
    if (!in_H0(B)) return false;
    Int mx = std::max(std::max(B.a, B.b), std::max(B.c, B.d));
    return mx == B.a || mx == B.d;
}

std::pair<CycleOp, Mat2> cycle_step(const Mat2& B) {
    if (!in_H0_red(B)) throw std::invalid_argument("cycle_step: matrix is not in H0_red");
    CycleOp op;
    if (B.a < B.d) {
        op.is_A = true;
        op.exp = (B.c != 1) ? Int(B.d / B.c) : Int(B.d - 1);
    } else {
        op.is_A = false;
        op.exp = (B.b != 1) ? Int(B.a / B.b) : Int(B.a - 1);
    }
    Mat2 next = conjugate(op_matrix(op), B);
    if (!in_H0_red(next)) throw std::logic_error("cycle_step: successor left H0_red");
    return {op, next};
}

namespace {

Cycle rotate_canonical(Cycle z) {
    size_t best = 0;
    for (size_t i = 1; i < z.elements.size(); ++i)
        if (lex_less(z.elements[i], z.elements[best])) best = i;
    if (best == 0) return z;
    std::rotate(z.elements.begin(), z.elements.begin() + best, z.elements.end());
    std::rotate(z.operators.begin(), z.operators.begin() + best, z.operators.end());
    return z;
}

}  // namespace

Cycle cycle_of(const Mat2& B) {
    Cycle z;
    Mat2 cur = B;
    do {
        auto [op, next] = cycle_step(cur);
        z.elements.push_back(cur);
        z.operators.push_back(op);
        cur = next;
    } while (cur != B);
    if (z.size() < 2) throw std::logic_error("cycle_of: cycle of length < 2");
    return rotate_canonical(std::move(z));
}

std::vector<Mat2> enumerate_H0_red(const Int& T) {
    if (T < 3) throw std::invalid_argument("enumerate_H0_red: T must be >= 3");
    std::vector<Mat2> out;
    for (Int a = 1; a < T; ++a) {
        Int d = T - a;
        Int n = a * d - 1;  // = b*c > 0
        if (n < 1) continue;
        Int mx = std::max(a, d);
        for (Int b = 1; b * b <= n; ++b) {
            if (n % b != 0) continue;
            Int c = n / b;
            // b is the smaller divisor; c = max(b, c) must stay on or below
            // the diagonal maximum.
            if (c > mx) continue;
            out.emplace_back(a, b, c, d);
            if (b != c) out.emplace_back(a, c, b, d);
        }
    }
    std::sort(out.begin(), out.end(), Mat2Less{});
    return out;
}

std::vector<Cycle> decompose_trace(const Int& T) {
    std::vector<Mat2> members = enumerate_H0_red(T);
    std::set<Mat2, Mat2Less> seen;
    std::vector<Cycle> cycles;
    for (const Mat2& m : members) {
        if (seen.count(m)) continue;
        Cycle z = cycle_of(m);
        for (const Mat2& e : z.elements) seen.insert(e);
        cycles.push_back(std::move(z));
    }
    std::sort(cycles.begin(), cycles.end(), [](const Cycle& l, const Cycle& r) {
        return lex_less(l.elements[0], r.elements[0]);
    });
    return cycles;
}

Mat2 bar(const Mat2& B) { return conjugate(hat_U(), B); }

namespace {

Cycle image_cycle(const Cycle& z, Mat2 (*f)(const Mat2&), const char* who) {
    Mat2 start = f(z.elements[0]);
    for (size_t i = 1; i < z.elements.size(); ++i) {
        Mat2 m = f(z.elements[i]);
        if (lex_less(m, start)) start = m;
    }
    Cycle out = cycle_of(start);
    if (out.size() != z.size()) throw std::logic_error(std::string(who) + ": image is not a cycle");
    for (const Mat2& e : z.elements)
        if (!out.contains(f(e))) throw std::logic_error(std::string(who) + ": image element escaped");
    return out;
}

Mat2 transpose_of(const Mat2& m) { return m.transpose(); }

}  // namespace

Cycle cycle_transpose(const Cycle& z) { return image_cycle(z, &transpose_of, "cycle_transpose"); }

Cycle cycle_bar(const Cycle& z) { return image_cycle(z, &bar, "cycle_bar"); }

Mat2 path_conjugator(const Cycle& z, const Mat2& from, const Mat2& to) {
    auto idx_of = [&](const Mat2& m) {
        auto it = std::find(z.elements.begin(), z.elements.end(), m);
        if (it == z.elements.end())
            throw std::invalid_argument("path_conjugator: matrix is not a member of the cycle");
        return static_cast<size_t>(it - z.elements.begin());
    };
    size_t i = idx_of(from);
    size_t j = idx_of(to);
    Mat2 M = Mat2::identity();
    while (i != j) {
        M = op_matrix(z.operators[i]) * M;
        i = (i + 1) % z.size();
    }
    return M;
}

std::uint64_t default_search_budget() {
    if (const char* env = std::getenv("OSCKIT_SEARCH_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

namespace {

Int entry_weight(const Mat2& m) {
    return abs(m.a) + abs(m.b) + abs(m.c) + abs(m.d);
}

bool all_positive(const Mat2& m) { return m.a > 0 && m.b > 0 && m.c > 0 && m.d > 0; }

struct SearchState {
    Mat2 m;
    Mat2 conj;
};

/// Finds a word in hat_A^{+-1}, hat_B^{+-1} conjugating B into H0.
/// Greedy descent on the entry weight, best-first fallback.
SearchState search_into_H0(const Mat2& B, std::uint64_t budget) {
    const Mat2 gens[4] = {hat_A(), hat_A().inverse_unimodular(), hat_B(),
                          hat_B().inverse_unimodular()};

    SearchState cur{B, Mat2::identity()};
    while (!all_positive(cur.m)) {
        Int w = entry_weight(cur.m);
        bool improved = false;
        for (const Mat2& g : gens) {
            Mat2 cand = conjugate(g, cur.m);
            if (entry_weight(cand) < w) {
                cur = {cand, g * cur.conj};
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (all_positive(cur.m)) return cur;

    // Best-first over the conjugation graph, keyed on the entry weight.
    using Key = std::array<Int, 4>;
    auto key_of = [](const Mat2& m) { return Key{m.a, m.b, m.c, m.d}; };
    std::set<Key> visited;
    using QueueItem = std::pair<Int, std::uint64_t>;
    std::map<QueueItem, SearchState> frontier;  // ordered by (weight, tiebreak)
    std::uint64_t generated = 0;
    frontier.emplace(QueueItem{entry_weight(cur.m), generated++}, cur);
    SearchState best = cur;
    Int best_weight = entry_weight(cur.m);
    while (!frontier.empty()) {
        auto it = frontier.begin();
        SearchState state = it->second;
        frontier.erase(it);
        if (!visited.insert(key_of(state.m)).second) continue;
        if (all_positive(state.m)) return state;
        if (entry_weight(state.m) < best_weight) {
            best = state;
            best_weight = entry_weight(state.m);
        }
        for (const Mat2& g : gens) {
            Mat2 cand = conjugate(g, state.m);
            if (visited.count(key_of(cand))) continue;
            if (generated >= budget)
                throw ReductionFailure(
                    "reduction failed: search budget of " + std::to_string(budget) +
                        " states exhausted (best candidate " + to_string(best.m) + ")",
                    best.m, best.conj);
            frontier.emplace(QueueItem{entry_weight(cand), generated++},
                             SearchState{cand, g * state.conj});
        }
    }
    throw ReductionFailure("reduction failed: search space exhausted", best.m, best.conj);
}

}  // namespace

Reduction reduce_to_cycle(const Mat2& B) { return reduce_to_cycle(B, default_search_budget()); }

Reduction reduce_to_cycle(const Mat2& B, std::uint64_t budget) {
    if (B.det() != 1) throw std::invalid_argument("reduce_to_cycle: determinant must be 1");
    if (B.trace() <= 2) throw std::invalid_argument("reduce_to_cycle: trace must be > 2");
    if (in_H0_red(B)) return Reduction{B, Mat2::identity()};

    SearchState s = in_H0(B) ? SearchState{B, Mat2::identity()} : search_into_H0(B, budget);

    // Inside H0, walk the cycle forward until hitting a reduced element;
    // each cycle in H0 contains at least one.
    std::set<std::array<Int, 4>> seen;
    while (!in_H0_red(s.m)) {
        if (!seen.insert({s.m.a, s.m.b, s.m.c, s.m.d}).second)
            throw std::logic_error("reduce_to_cycle: walk in H0 did not reach H0_red");
        Mat2 cand = conjugate(hat_A(), s.m);
        if (all_positive(cand)) {
            s = {cand, hat_A() * s.conj};
        } else {
            s = {conjugate(hat_B(), s.m), hat_B() * s.conj};
        }
    }

    if (s.conj.det() != 1 || conjugate(s.conj, B) != s.m)
        throw std::logic_error("reduce_to_cycle: conjugator verification failed");
    return Reduction{s.m, s.conj};
}

}  // namespace osckit
