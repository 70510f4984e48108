#pragma once

#include <array>
#include <optional>
#include <vector>

#include "osckit/cycles.hpp"
#include "osckit/quad.hpp"
#include "osckit/symmetry.hpp"

namespace osckit {

/// Presentation data (r, B, l) of the discrete split oscillator group
/// Osc^r(B, l): H^r(Z) extended by delta acting through B with residue
/// pair l. l is stored reduced to 0..r-1.
struct GroupRep {
    long r;
    Mat2 B;
    std::array<long, 2> l;

    static GroupRep make(long r, Mat2 B, std::array<long, 2> l);

    bool operator==(const GroupRep& o) const { return r == o.r && B == o.B && l == o.l; }
};

using Residue = std::array<long, 2>;

struct Orbit {
    Residue rep;                   // lexicographically smallest member
    std::vector<Residue> members;  // sorted
};

/// Orbits of the relation ~_B on (Z_r)^2: translations by the columns of
/// (B - I) mod r, merged under l -> K l for the generators of R(B).
std::vector<Orbit> residue_orbits(const Mat2& B, long r);

struct ClassEntry {
    Mat2 B;                        // one representative per cycle pair {z, bar z}
    std::vector<Residue> l_reps;   // canonical orbit representatives, sorted
};

struct ClassList {
    Int T;
    long r;
    std::vector<ClassEntry> entries;
};

/// Complete system of representatives of the isomorphism classes of
/// Osc^r(B, l) with tr(B) = T.
ClassList enumerate_classes(const Int& T, long r);

/// Witness of an isomorphism: (B2, l2) = kappa . (K, m) . (B1, l1) under
/// the group actions on B_T x (Z_r)^2.
struct IsoWitness {
    int kappa;  // +1 or -1
    Mat2 K;
    std::array<Int, 2> m;
};

struct IsoResult {
    bool isomorphic;
    std::optional<IsoWitness> witness;
};

/// Decides Osc^{r1}(B1, l1) ~= Osc^{r2}(B2, l2). A returned witness has
/// been re-checked exactly against the defining group actions.
IsoResult iso(const GroupRep& g1, const GroupRep& g2);

/// Square-free part d of T^2 - 4; the commensurability class of any
/// Osc^r(B, l) with tr(B) = T is Q(sqrt(d)).
Int commensurability_field(const Int& T);

struct CommResult {
    bool commensurable;
    Int d1, d2;
    /// exponents (m, n) with lambda(T1)^m = lambda(T2)^n, verified exactly
    std::optional<std::array<Int, 2>> witness;
};

CommResult commensurable(const GroupRep& g1, const GroupRep& g2);

}  // namespace osckit
