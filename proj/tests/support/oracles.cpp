#include "support/oracles.hpp"

#include <array>
#include <optional>

namespace osckit::testing {

Mat2 random_unimodular(std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<int> pick(0, 3);
    const Mat2 gens[4] = {hat_A(), hat_A().inverse_unimodular(), hat_B(),
                          hat_B().inverse_unimodular()};
    Mat2 m = Mat2::identity();
    for (int i = 0; i < length; ++i) m = m * gens[pick(rng)];
    return m;
}

namespace {

struct Candidate {
    DOscElem alpha, beta, gamma, delta;
};

bool relations_hold(const GroupRep& src, const GroupRep& tgt, const Candidate& F) {
    auto mul = [&](const DOscElem& a, const DOscElem& b) { return dosc_mul(tgt, a, b); };
    auto inv = [&](const DOscElem& a) { return dosc_inv(tgt, a); };
    auto pw = [&](const DOscElem& a, const Int& n) { return dosc_pow(tgt, a, n); };
    auto img = [&](const HeisWord& w) {
        return mul(mul(pw(F.alpha, w.x), pw(F.beta, w.y)), pw(F.gamma, w.z));
    };
    DOscElem comm = mul(mul(F.alpha, F.beta), mul(inv(F.alpha), inv(F.beta)));
    if (comm != dosc_pow(tgt, F.gamma, src.r)) return false;
    if (mul(F.alpha, F.gamma) != mul(F.gamma, F.alpha)) return false;
    if (mul(F.beta, F.gamma) != mul(F.gamma, F.beta)) return false;
    HeisWord phi_a{src.B.a, src.B.c, Int(-src.l[1])};
    HeisWord phi_b{src.B.b, src.B.d, Int(src.l[0])};
    if (mul(mul(F.delta, F.alpha), inv(F.delta)) != img(phi_a)) return false;
    if (mul(mul(F.delta, F.beta), inv(F.delta)) != img(phi_b)) return false;
    if (mul(mul(F.delta, F.gamma), inv(F.delta)) != F.gamma) return false;
    return true;
}

struct DefectProbe {
    bool central;
    Int za, zb;
};

/// gamma-exponent defect of the two delta-relations for the candidate with
/// the given central parts of the alpha/beta images.
DefectProbe probe_defect(const GroupRep& src, const GroupRep& tgt, Candidate F, long z1, long z2) {
    F.alpha.h.z = z1;
    F.beta.h.z = z2;
    auto mul = [&](const DOscElem& a, const DOscElem& b) { return dosc_mul(tgt, a, b); };
    auto inv = [&](const DOscElem& a) { return dosc_inv(tgt, a); };
    auto pw = [&](const DOscElem& a, const Int& n) { return dosc_pow(tgt, a, n); };
    auto img = [&](const HeisWord& w) {
        return mul(mul(pw(F.alpha, w.x), pw(F.beta, w.y)), pw(F.gamma, w.z));
    };
    HeisWord phi_a{src.B.a, src.B.c, Int(-src.l[1])};
    HeisWord phi_b{src.B.b, src.B.d, Int(src.l[0])};
    DOscElem da = mul(mul(mul(F.delta, F.alpha), inv(F.delta)), inv(img(phi_a)));
    DOscElem db = mul(mul(mul(F.delta, F.beta), inv(F.delta)), inv(img(phi_b)));
    if (da.h.x != 0 || da.h.y != 0 || da.k != 0 || db.h.x != 0 || db.h.y != 0 || db.k != 0)
        return {false, Int(0), Int(0)};
    return {true, da.h.z, db.h.z};
}

/// The defect is affine in (z1, z2) with coefficients independent of the
/// Heisenberg part of the delta image; solve the 2x2 integer system.
std::optional<std::pair<Int, Int>> solve_central_parts(const DefectProbe& e00, const Int& a1,
                                                       const Int& a2, const Int& b1,
                                                       const Int& b2) {
    Int det = a1 * b2 - a2 * b1;
    if (det == 0) {
        if (e00.za == 0 && e00.zb == 0) return std::make_pair(Int(0), Int(0));
        return std::nullopt;
    }
    // a1 z1 + a2 z2 = -e00.za ; b1 z1 + b2 z2 = -e00.zb
    Int n1 = -e00.za * b2 + e00.zb * a2;
    Int n2 = -e00.zb * a1 + e00.za * b1;
    if (n1 % det != 0 || n2 % det != 0) return std::nullopt;
    return std::make_pair(n1 / det, n2 / det);
}

}  // namespace

bool oracle_iso(const GroupRep& g1, const GroupRep& g2, long k_bound, long m_bound) {
    if (g1.r != g2.r) return false;  // bounded search would find nothing anyway
    for (int kappa : {1, -1}) {
        Mat2 M = (kappa == 1) ? g2.B : g2.B.inverse_unimodular();
        // K B1 = M K: the second row of K is forced by the first, since
        // M.b != 0 for any matrix with det 1 and |trace| > 2.
        if (M.b == 0) continue;
        for (long k11 = -k_bound; k11 <= k_bound; ++k11) {
            for (long k12 = -k_bound; k12 <= k_bound; ++k12) {
                Int n21 = k11 * (g1.B.a - M.a) + k12 * g1.B.c;
                Int n22 = k11 * g1.B.b + k12 * (g1.B.d - M.a);
                if (n21 % M.b != 0 || n22 % M.b != 0) continue;
                Mat2 K(Int(k11), Int(k12), n21 / M.b, n22 / M.b);
                if (!(K * g1.B == M * K)) continue;
                Int dt = K.det();
                if (dt != 1 && dt != -1) continue;
                Candidate base{DOscElem{HeisWord{K.a, K.c, Int(0)}, 0},
                               DOscElem{HeisWord{K.b, K.d, Int(0)}, 0},
                               DOscElem{HeisWord{0, 0, dt}, 0},
                               DOscElem{HeisWord{0, 0, 0}, Int(kappa)}};
                // affine coefficients of the defect in (z1, z2), probed once
                DefectProbe p00 = probe_defect(g1, g2, base, 0, 0);
                if (!p00.central) continue;
                DefectProbe p10 = probe_defect(g1, g2, base, 1, 0);
                DefectProbe p01 = probe_defect(g1, g2, base, 0, 1);
                Int a1 = p10.za - p00.za, a2 = p01.za - p00.za;
                Int b1 = p10.zb - p00.zb, b2 = p01.zb - p00.zb;
                for (long x4 = -m_bound; x4 <= m_bound; ++x4) {
                    for (long y4 = -m_bound; y4 <= m_bound; ++y4) {
                        Candidate F = base;
                        F.delta.h.x = x4;
                        F.delta.h.y = y4;
                        DefectProbe e00 = probe_defect(g1, g2, F, 0, 0);
                        if (!e00.central) continue;
                        auto zs = solve_central_parts(e00, a1, a2, b1, b2);
                        if (!zs) continue;
                        F.alpha.h.z = zs->first;
                        F.beta.h.z = zs->second;
                        if (relations_hold(g1, g2, F)) return true;
                    }
                }
            }
        }
    }
    return false;
}

std::vector<Mat2> brute_symmetries(const Mat2& B, const Int& bound) {
    std::vector<Mat2> out;
    // K B = B K forces k21 = c k12 / b and k22 = k11 + k12 (d - a)/b.
    for (Int k11 = -bound; k11 <= bound; ++k11) {
        for (Int k12 = -bound; k12 <= bound; ++k12) {
            Int num21 = B.c * k12;
            Int num22 = B.b * k11 + k12 * (B.d - B.a);
            if (num21 % B.b != 0 || num22 % B.b != 0) continue;
            Mat2 K(k11, k12, num21 / B.b, num22 / B.b);
            if (abs(K.c) > bound || abs(K.d) > bound) continue;
            if (!K.is_unimodular()) continue;
            if (K * B == B * K) out.push_back(K);
        }
    }
    return out;
}

std::vector<Mat2> brute_reversers(const Mat2& B, const Int& bound) {
    std::vector<Mat2> out;
    Mat2 Binv = B.inverse_unimodular();
    // K B = B^-1 K forces k21 = ((d - a) k11 - c k12)/b and k22 = -k11.
    for (Int k11 = -bound; k11 <= bound; ++k11) {
        for (Int k12 = -bound; k12 <= bound; ++k12) {
            Int num21 = (B.d - B.a) * k11 - B.c * k12;
            if (num21 % B.b != 0) continue;
            Mat2 K(k11, k12, num21 / B.b, -k11);
            if (abs(K.c) > bound) continue;
            if (!K.is_unimodular()) continue;
            if (K * B == Binv * K) out.push_back(K);
        }
    }
    return out;
}

}  // namespace osckit::testing
