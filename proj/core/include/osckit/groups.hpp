#pragma once

#include <array>
#include <string>

#include "osckit/classify.hpp"
#include "osckit/quad.hpp"

namespace osckit {

// ---------------------------------------------------------------------------
// Discrete groups: H^r(Z) and Osc^r(B, l) in normal form.
// ---------------------------------------------------------------------------

/// Normal form alpha^x beta^y gamma^z of an element of H^r(Z); r is
/// supplied by context. Product rule:
/// (x,y,z)(x',y',z') = (x+x', y+y', z+z' - r x' y).
struct HeisWord {
    Int x, y, z;

    bool operator==(const HeisWord& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const HeisWord& o) const { return !(*this == o); }
    bool is_identity() const { return x == 0 && y == 0 && z == 0; }
};

HeisWord heis_mul(long r, const HeisWord& g, const HeisWord& h);
HeisWord heis_inv(long r, const HeisWord& g);
HeisWord heis_pow(long r, const HeisWord& g, const Int& n);

/// Element h * delta^k of Osc^r(B, l).
struct DOscElem {
    HeisWord h;
    Int k;

    bool operator==(const DOscElem& o) const { return h == o.h && k == o.k; }
    bool operator!=(const DOscElem& o) const { return !(*this == o); }
    bool is_identity() const { return h.is_identity() && k == 0; }
};

/// phi(delta)^k applied to a normal form; negative k uses the inverse
/// automorphism.
HeisWord dosc_phi(const GroupRep& rep, const HeisWord& w, const Int& k);
DOscElem dosc_mul(const GroupRep& rep, const DOscElem& g, const DOscElem& h);
DOscElem dosc_inv(const GroupRep& rep, const DOscElem& g);
DOscElem dosc_pow(const GroupRep& rep, const DOscElem& g, const Int& n);

// ---------------------------------------------------------------------------
// Homomorphisms Osc^r(B,l) -> Osc^r(B', l') given by generator images.
// ---------------------------------------------------------------------------

enum class HomKind { K, M, Kappa, Generic };

/// Generator images of a homomorphism between two discrete split oscillator
/// groups of the same r; target is the transform of source under the group
/// action (ga1)/(ga2) for the built-in kinds.
struct HomDescriptor {
    HomKind kind;
    GroupRep source;
    GroupRep target;
    DOscElem img_alpha, img_beta, img_gamma, img_delta;
};

HomDescriptor build_hom_K(const GroupRep& src, const Mat2& K);
HomDescriptor build_hom_m(const GroupRep& src, const std::array<Int, 2>& m);
HomDescriptor build_hom_kappa(const GroupRep& src, int kappa);

struct HomCheck {
    bool ok;
    std::string failed_relation;  // empty when ok
};

/// Checks that every defining relation of the source maps to the identity
/// of the target.
HomCheck verify_hom(const HomDescriptor& hom);

// ---------------------------------------------------------------------------
// Standard Heisenberg lattice and its stabilizer.
// ---------------------------------------------------------------------------

/// (z, xi) in Gamma_r: xi integral with z in xi1*xi2/2 + (1/r) Z.
bool gamma_r_contains(long r, const Rat& z, const std::array<Int, 2>& xi);

/// (xi, B) in B_r: B in GL(2,Z) and xi satisfies the congruence conditions
/// xi1*c - xi2*a - ac/2 in (1/r)Z and xi1*d - xi2*b - bd/2 in (1/r)Z.
bool br_check(long r, const std::array<Rat, 2>& xi, const Mat2& B);

/// Dictionary between residue pairs l and translation parts xi:
/// xi = (1/r) B l - (1/2) B (-bd, ac) and l = r B^-1 xi + (r/2)(-bd, ac).
std::array<Rat, 2> l_to_xi(long r, const Mat2& B, const std::array<long, 2>& l);
std::array<long, 2> xi_to_l(long r, const Mat2& B, const std::array<Rat, 2>& xi);

// ---------------------------------------------------------------------------
// The continuous group over Q(sqrt(d)), at times restricted to s Z.
// ---------------------------------------------------------------------------

struct QVec2 {
    QuadElem x, y;

    bool operator==(const QVec2& o) const { return x == o.x && y == o.y; }
};

struct QMat2 {
    QuadElem a, b, c, d;

    QuadElem det() const { return a * d - b * c; }
    QMat2 inverse() const;
    QVec2 apply(const QVec2& v) const;
    bool operator==(const QMat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

QMat2 operator*(const QMat2& l, const QMat2& r);

/// Group element (z, xi, k s) with e^s = lambda(T); all coordinates exact
/// in Q(sqrt(d)).
struct ContOsc {
    Int T;  // spectral context
    QuadElem z;
    QVec2 xi;
    Int k;

    bool operator==(const ContOsc& o) const {
        return T == o.T && z == o.z && xi == o.xi && k == o.k;
    }
    bool operator!=(const ContOsc& o) const { return !(*this == o); }
};

/// Exact arithmetic in the split oscillator group for a fixed trace T:
/// time coordinates are integer multiples of s = log lambda(T).
class ContGroup {
public:
    explicit ContGroup(const Int& T);

    const SpectralData& spectral() const { return spec_; }
    const Int& T() const { return spec_.T; }
    const Int& d() const { return spec_.d; }

    /// Matrix of e^{k s A}: ((l^k+l^-k)/2, (l^k-l^-k)/2; same swapped).
    QMat2 exp_sA(const Int& k) const;

    ContOsc identity() const;
    ContOsc make(QuadElem z, QVec2 xi, Int k) const;
    ContOsc mul(const ContOsc& g, const ContOsc& h) const;
    ContOsc inverse(const ContOsc& g) const;
    ContOsc pow(const ContOsc& g, const Int& n) const;

    QuadElem omega(const QVec2& u, const QVec2& v) const;

    QuadElem q_zero() const { return QuadElem::zero(spec_.d); }
    QuadElem q_one() const { return QuadElem::one(spec_.d); }
    QuadElem q_rat(const Rat& v) const { return QuadElem(v, Rat(0), spec_.d); }

private:
    SpectralData spec_;
    void check(const ContOsc& g) const;
};

/// P over Q(sqrt(d)) with P B = e^{sA} P, built from the eigenvectors of B;
/// verified exactly before returning.
QMat2 canonical_P(const Mat2& B);

/// Exact lattice parameters (eta, P, z, xi) in P_{r,s}.
struct LatticeParams {
    long r;
    Int T;
    QVec2 eta;
    QMat2 P;
    QuadElem zc;
    std::array<Rat, 2> xi;
};

/// Validates the defining conditions: B = P^-1 e^{sA} P integral and
/// (xi, B) in B_r. Returns the induced B.
Mat2 lattice_params_matrix(const LatticeParams& p);

/// Parameters of the standard embedding of Osc^r(B, l): P = canonical_P(B),
/// xi = l_to_xi(r, B, l), eta = 0, z = 0.
LatticeParams lattice_params_of_group(const GroupRep& rep);

struct LatticeGenerators {
    ContOsc gamma, alpha, beta, delta;
};

LatticeGenerators lattice_generators(const LatticeParams& p);

/// Exact membership in L_{r,s}(eta, P, z, xi).
bool lattice_contains(const LatticeParams& p, const ContOsc& g);

/// Composed automorphism F_u . F_eta . F_S; u is carried as u' = u*s so
/// that all coordinates stay in Q(sqrt(d)). S must satisfy S A = mu A S.
struct AutDescriptor {
    QuadElem u_prime;
    QVec2 eta;
    QMat2 S;
    int mu;  // +1 or -1
};

ContOsc apply_aut(const AutDescriptor& a, const ContOsc& g);

/// Elements of Gamma_r and B_r used by the parameter action.
struct GammaRElem {
    Rat z;
    std::array<Int, 2> xi;
};

struct BrElem {
    std::array<Rat, 2> zeta;
    Mat2 K;
};

/// Right action of Gamma_r x| B_r on the parameter set P_{r,s}.
LatticeParams param_action(const LatticeParams& p, const GammaRElem& gam, const BrElem& br);

/// Image of a normal form under the embedding generated by the four
/// lattice generators.
ContOsc embed_word(const ContGroup& G, const LatticeGenerators& gen, const HeisWord& w);
ContOsc embed_elem(const ContGroup& G, const LatticeGenerators& gen, const DOscElem& g);

}  // namespace osckit
