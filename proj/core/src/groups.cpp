#include "osckit/groups.hpp"

namespace osckit {

// ---------------------------------------------------------------------------
// H^r(Z) and Osc^r(B, l)
// ---------------------------------------------------------------------------

HeisWord heis_mul(long r, const HeisWord& g, const HeisWord& h) {
    return HeisWord{g.x + h.x, g.y + h.y, g.z + h.z - r * h.x * g.y};
}

HeisWord heis_inv(long r, const HeisWord& g) {
    return HeisWord{-g.x, -g.y, -g.z - r * g.x * g.y};
}

HeisWord heis_pow(long r, const HeisWord& g, const Int& n) {
    if (n < 0) return heis_pow(r, heis_inv(r, g), -n);
    // (x,y,z)^n = (n x, n y, n z - r x y n(n-1)/2)
    return HeisWord{n * g.x, n * g.y, n * g.z - r * g.x * g.y * n * (n - 1) / 2};
}

namespace {

struct PhiImages {
    HeisWord alpha, beta;
};

PhiImages phi_forward(const GroupRep& rep) {
    return {HeisWord{rep.B.a, rep.B.c, Int(-rep.l[1])}, HeisWord{rep.B.b, rep.B.d, Int(rep.l[0])}};
}

HeisWord apply_images(long r, const PhiImages& im, const HeisWord& w) {
    HeisWord out = heis_pow(r, im.alpha, w.x);
    out = heis_mul(r, out, heis_pow(r, im.beta, w.y));
    out.z += w.z;  // gamma is fixed and central
    return out;
}

PhiImages phi_backward(const GroupRep& rep) {
    long r = rep.r;
    PhiImages fwd = phi_forward(rep);
    Mat2 Binv = rep.B.inverse_unimodular();
    // phi^-1(alpha) has exponent vector B^-1 e1; its gamma part cancels the
    // correction picked up by phi on that vector.
    HeisWord ta = apply_images(r, fwd, HeisWord{Binv.a, Binv.c, Int(0)});
    HeisWord tb = apply_images(r, fwd, HeisWord{Binv.b, Binv.d, Int(0)});
    return {HeisWord{Binv.a, Binv.c, -ta.z}, HeisWord{Binv.b, Binv.d, -tb.z}};
}

}  // namespace

HeisWord dosc_phi(const GroupRep& rep, const HeisWord& w, const Int& k) {
    PhiImages im = (k >= 0) ? phi_forward(rep) : phi_backward(rep);
    Int steps = abs(k);
    HeisWord out = w;
    for (Int i = 0; i < steps; ++i) out = apply_images(rep.r, im, out);
    return out;
}

DOscElem dosc_mul(const GroupRep& rep, const DOscElem& g, const DOscElem& h) {
    return DOscElem{heis_mul(rep.r, g.h, dosc_phi(rep, h.h, g.k)), g.k + h.k};
}

DOscElem dosc_inv(const GroupRep& rep, const DOscElem& g) {
    return DOscElem{dosc_phi(rep, heis_inv(rep.r, g.h), -g.k), -g.k};
}

DOscElem dosc_pow(const GroupRep& rep, const DOscElem& g, const Int& n) {
    if (n < 0) return dosc_pow(rep, dosc_inv(rep, g), -n);
    DOscElem out{HeisWord{0, 0, 0}, 0};
    for (Int i = 0; i < n; ++i) out = dosc_mul(rep, out, g);
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

namespace {

long mod_r_long(const Int& v, long r) {
    Int q;
    mpz_fdiv_r_ui(q.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(r));
    return q.get_si();
}

/// gamma-exponent defects of the two delta-relations of hom; the vector
/// parts must cancel (the images were built from a matching conjugacy).
std::array<Int, 2> delta_relation_defects(const HomDescriptor& hom) {
    const GroupRep& src = hom.source;
    const GroupRep& tgt = hom.target;
    auto mul = [&](const DOscElem& a, const DOscElem& b) { return dosc_mul(tgt, a, b); };
    auto inv = [&](const DOscElem& a) { return dosc_inv(tgt, a); };
    auto pw = [&](const DOscElem& a, const Int& n) { return dosc_pow(tgt, a, n); };
    auto img = [&](const HeisWord& w) {
        return mul(mul(pw(hom.img_alpha, w.x), pw(hom.img_beta, w.y)), pw(hom.img_gamma, w.z));
    };
    HeisWord phi_a{src.B.a, src.B.c, Int(-src.l[1])};
    HeisWord phi_b{src.B.b, src.B.d, Int(src.l[0])};
    DOscElem da = mul(mul(mul(hom.img_delta, hom.img_alpha), inv(hom.img_delta)), inv(img(phi_a)));
    DOscElem db = mul(mul(mul(hom.img_delta, hom.img_beta), inv(hom.img_delta)), inv(img(phi_b)));
    if (da.h.x != 0 || da.h.y != 0 || da.k != 0 || db.h.x != 0 || db.h.y != 0 || db.k != 0)
        throw std::logic_error("build_hom: image projections do not match the target action");
    return {da.h.z, db.h.z};
}

/// The generator images realize the homomorphism only up to central
/// gamma^(multiple of r) defects in the delta-relations (the normal-form
/// corrections, and the reduction of the target residues). A Heisenberg
/// factor h in delta -> (delta h)^{+-1} absorbs them; the defects are
/// affine in h with an invertible integer system, so solve exactly.
HomDescriptor finish_hom(HomKind kind, const GroupRep& src, const Mat2& Bbar,
                         const std::array<Int, 2>& l_unreduced, DOscElem img_alpha,
                         DOscElem img_beta, DOscElem img_gamma, int delta_exp) {
    std::array<long, 2> l_red{mod_r_long(l_unreduced[0], src.r),
                              mod_r_long(l_unreduced[1], src.r)};
    HomDescriptor hom;
    hom.kind = kind;
    hom.source = src;
    hom.target = GroupRep::make(src.r, Bbar, l_red);
    hom.img_alpha = std::move(img_alpha);
    hom.img_beta = std::move(img_beta);
    hom.img_gamma = std::move(img_gamma);

    auto with_h = [&](const Int& hx, const Int& hy) {
        DOscElem d{HeisWord{hx, hy, Int(0)}, 1};
        return (delta_exp == 1) ? d : dosc_inv(hom.target, d);
    };
    hom.img_delta = with_h(0, 0);
    std::array<Int, 2> e00 = delta_relation_defects(hom);
    hom.img_delta = with_h(1, 0);
    std::array<Int, 2> e10 = delta_relation_defects(hom);
    hom.img_delta = with_h(0, 1);
    std::array<Int, 2> e01 = delta_relation_defects(hom);
    Int a1 = e10[0] - e00[0], a2 = e01[0] - e00[0];
    Int b1 = e10[1] - e00[1], b2 = e01[1] - e00[1];
    Int det = a1 * b2 - a2 * b1;
    Int hx = 0, hy = 0;
    if (det != 0) {
        Int n1 = -e00[0] * b2 + e00[1] * a2;
        Int n2 = -e00[1] * a1 + e00[0] * b1;
        if (n1 % det != 0 || n2 % det != 0)
            throw std::logic_error("build_hom: defect system has no integral solution");
        hx = n1 / det;
        hy = n2 / det;
    } else if (e00[0] != 0 || e00[1] != 0) {
        throw std::logic_error("build_hom: defect system is singular");
    }
    hom.img_delta = with_h(hx, hy);
    std::array<Int, 2> check = delta_relation_defects(hom);
    if (check[0] != 0 || check[1] != 0)
        throw std::logic_error("build_hom: delta relations still defective after solving");
    return hom;
}

}  // namespace

HomDescriptor build_hom_K(const GroupRep& src, const Mat2& K) {
    if (!K.is_unimodular()) throw std::invalid_argument("build_hom_K: K must be in GL(2,Z)");
    Mat2 Bbar = conjugate(K, src.B);
    std::array<Int, 2> lbar{K.a * src.l[0] + K.b * src.l[1], K.c * src.l[0] + K.d * src.l[1]};
    return finish_hom(HomKind::K, src, Bbar, lbar, DOscElem{HeisWord{K.a, K.c, Int(0)}, 0},
                      DOscElem{HeisWord{K.b, K.d, Int(0)}, 0},
                      DOscElem{HeisWord{0, 0, K.det()}, 0}, 1);
}

HomDescriptor build_hom_m(const GroupRep& src, const std::array<Int, 2>& m) {
    Mat2 ImBinv = Mat2::identity() - src.B.inverse_unimodular();
    std::array<Int, 2> lbar{Int(src.l[0]) - (ImBinv.a * m[0] + ImBinv.b * m[1]),
                            Int(src.l[1]) - (ImBinv.c * m[0] + ImBinv.d * m[1])};
    return finish_hom(HomKind::M, src, src.B, lbar, DOscElem{HeisWord{1, 0, -m[1]}, 0},
                      DOscElem{HeisWord{0, 1, m[0]}, 0}, DOscElem{HeisWord{0, 0, 1}, 0}, 1);
}

HomDescriptor build_hom_kappa(const GroupRep& src, int kappa) {
    if (kappa != 1 && kappa != -1) throw std::invalid_argument("build_hom_kappa: kappa must be +-1");
    DOscElem a{HeisWord{1, 0, 0}, 0};
    DOscElem b{HeisWord{0, 1, 0}, 0};
    DOscElem c{HeisWord{0, 0, 1}, 0};
    if (kappa == 1)
        return finish_hom(HomKind::Kappa, src, src.B, {Int(src.l[0]), Int(src.l[1])},
                          std::move(a), std::move(b), std::move(c), 1);
    std::array<Int, 2> lbar{-(src.B.a * src.l[0] + src.B.b * src.l[1]),
                            -(src.B.c * src.l[0] + src.B.d * src.l[1])};
    return finish_hom(HomKind::Kappa, src, src.B.inverse_unimodular(), lbar, std::move(a),
                      std::move(b), std::move(c), -1);
}

HomCheck verify_hom(const HomDescriptor& hom) {
    const GroupRep& src = hom.source;
    const GroupRep& tgt = hom.target;
    auto mul = [&](const DOscElem& a, const DOscElem& b) { return dosc_mul(tgt, a, b); };
    auto inv = [&](const DOscElem& a) { return dosc_inv(tgt, a); };
    auto pw = [&](const DOscElem& a, const Int& n) { return dosc_pow(tgt, a, n); };
    const DOscElem& A = hom.img_alpha;
    const DOscElem& BETA = hom.img_beta;
    const DOscElem& C = hom.img_gamma;
    const DOscElem& D = hom.img_delta;

    auto check = [&](const DOscElem& lhs, const DOscElem& rhs, const char* name)
        -> std::optional<std::string> {
        if (mul(lhs, inv(rhs)).is_identity()) return std::nullopt;
        return std::string(name);
    };

    // [alpha, beta] = gamma^r
    DOscElem lhs = mul(mul(A, BETA), mul(inv(A), inv(BETA)));
    if (auto f = check(lhs, pw(C, src.r), "alpha beta alpha^-1 beta^-1 = gamma^r")) return {false, *f};
    // gamma central in the Heisenberg part
    if (auto f = check(mul(A, C), mul(C, A), "alpha gamma = gamma alpha")) return {false, *f};
    if (auto f = check(mul(BETA, C), mul(C, BETA), "beta gamma = gamma beta")) return {false, *f};
    // delta action: delta x delta^-1 = phi(delta)(x)
    auto phi_img = [&](const HeisWord& w) {
        DOscElem out = pw(A, w.x);
        out = mul(out, pw(BETA, w.y));
        out = mul(out, pw(C, w.z));
        return out;
    };
    HeisWord phi_a{src.B.a, src.B.c, Int(-src.l[1])};
    HeisWord phi_b{src.B.b, src.B.d, Int(src.l[0])};
    lhs = mul(mul(D, A), inv(D));
    if (auto f = check(lhs, phi_img(phi_a), "delta alpha delta^-1 = phi(alpha)")) return {false, *f};
    lhs = mul(mul(D, BETA), inv(D));
    if (auto f = check(lhs, phi_img(phi_b), "delta beta delta^-1 = phi(beta)")) return {false, *f};
    lhs = mul(mul(D, C), inv(D));
    if (auto f = check(lhs, C, "delta gamma delta^-1 = gamma")) return {false, *f};
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Gamma_r and B_r
// ---------------------------------------------------------------------------

namespace {

bool in_one_over_r(const Rat& v, long r) {
    Rat scaled = v * r;
    scaled.canonicalize();
    return scaled.get_den() == 1;
}

}  // namespace

bool gamma_r_contains(long r, const Rat& z, const std::array<Int, 2>& xi) {
    if (r < 1) throw std::invalid_argument("gamma_r_contains: r must be >= 1");
    Rat offset = z - Rat(xi[0] * xi[1]) / 2;
    return in_one_over_r(offset, r);
}

bool br_check(long r, const std::array<Rat, 2>& xi, const Mat2& B) {
    if (r < 1) throw std::invalid_argument("br_check: r must be >= 1");
    if (!B.is_unimodular()) return false;
    Rat c1 = xi[0] * Rat(B.c) - xi[1] * Rat(B.a) - Rat(B.a * B.c) / 2;
    Rat c2 = xi[0] * Rat(B.d) - xi[1] * Rat(B.b) - Rat(B.b * B.d) / 2;
    return in_one_over_r(c1, r) && in_one_over_r(c2, r);
}

std::array<Rat, 2> l_to_xi(long r, const Mat2& B, const std::array<long, 2>& l) {
    if (B.det() != 1 || B.trace() <= 2) throw std::invalid_argument("l_to_xi: B must be in B_T");
    Int v0 = -B.b * B.d;
    Int v1 = B.a * B.c;
    std::array<Rat, 2> xi{
        Rat(B.a * l[0] + B.b * l[1]) / r - Rat(B.a * v0 + B.b * v1) / 2,
        Rat(B.c * l[0] + B.d * l[1]) / r - Rat(B.c * v0 + B.d * v1) / 2};
    xi[0].canonicalize();
    xi[1].canonicalize();
    if (!br_check(r, xi, B)) throw std::logic_error("l_to_xi: result failed br_check");
    return xi;
}

std::array<long, 2> xi_to_l(long r, const Mat2& B, const std::array<Rat, 2>& xi) {
    if (B.det() != 1 || B.trace() <= 2) throw std::invalid_argument("xi_to_l: B must be in B_T");
    if (!br_check(r, xi, B)) throw std::invalid_argument("xi_to_l: (xi, B) is not in B_r");
    Mat2 Binv = B.inverse_unimodular();
    Rat l0 = Rat(r) * (Rat(Binv.a) * xi[0] + Rat(Binv.b) * xi[1]) + Rat(r) * Rat(-B.b * B.d) / 2;
    Rat l1 = Rat(r) * (Rat(Binv.c) * xi[0] + Rat(Binv.d) * xi[1]) + Rat(r) * Rat(B.a * B.c) / 2;
    l0.canonicalize();
    l1.canonicalize();
    if (l0.get_den() != 1 || l1.get_den() != 1)
        throw std::logic_error("xi_to_l: non-integral result despite br_check");
    long rr = r;
    auto reduce = [rr](const Int& v) {
        Int q;
        mpz_fdiv_r_ui(q.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(rr));
        return q.get_si();
    };
    return {reduce(l0.get_num()), reduce(l1.get_num())};
}

// ---------------------------------------------------------------------------
// The continuous group
// ---------------------------------------------------------------------------

QMat2 QMat2::inverse() const {
    QuadElem dt = det();
    if (dt.sign() == 0) throw std::domain_error("QMat2::inverse: singular matrix");
    return QMat2{d / dt, (-b) / dt, (-c) / dt, a / dt};
}

QVec2 QMat2::apply(const QVec2& v) const {
    return QVec2{a * v.x + b * v.y, c * v.x + d * v.y};
}

QMat2 operator*(const QMat2& l, const QMat2& r) {
    return QMat2{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                 l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

ContGroup::ContGroup(const Int& T) : spec_(spectral_of_trace(T)) {}

void ContGroup::check(const ContOsc& g) const {
    if (g.T != spec_.T)
        throw std::invalid_argument("ContGroup: element belongs to a different spectral context");
}

QMat2 ContGroup::exp_sA(const Int& k) const {
    QuadElem p = spec_.lambda.pow(k);
    // lambda^-k is the conjugate of lambda^k (norm one), so the entries are
    // (l^k + l^-k)/2 = x and (l^k - l^-k)/2 = y*sqrt(d) for p = x + y*sqrt(d).
    QuadElem diag(p.x(), Rat(0), spec_.d);
    QuadElem off(Rat(0), p.y(), spec_.d);
    return QMat2{diag, off, off, diag};
}

ContOsc ContGroup::identity() const { return ContOsc{spec_.T, q_zero(), QVec2{q_zero(), q_zero()}, 0}; }

ContOsc ContGroup::make(QuadElem z, QVec2 xi, Int k) const {
    ContOsc g{spec_.T, std::move(z), std::move(xi), std::move(k)};
    return g;
}

QuadElem ContGroup::omega(const QVec2& u, const QVec2& v) const {
    return u.x * v.y - v.x * u.y;
}

ContOsc ContGroup::mul(const ContOsc& g, const ContOsc& h) const {
    check(g);
    check(h);
    QMat2 E = exp_sA(g.k);
    QVec2 rotated = E.apply(h.xi);
    return ContOsc{spec_.T, g.z + h.z + omega(g.xi, rotated) / Rat(2),
                   QVec2{g.xi.x + rotated.x, g.xi.y + rotated.y}, g.k + h.k};
}

ContOsc ContGroup::inverse(const ContOsc& g) const {
    check(g);
    QMat2 Eneg = exp_sA(-g.k);
    QVec2 back = Eneg.apply(g.xi);
    return ContOsc{spec_.T, -g.z, QVec2{-back.x, -back.y}, -g.k};
}

ContOsc ContGroup::pow(const ContOsc& g, const Int& n) const {
    if (n < 0) return pow(inverse(g), -n);
    ContOsc result = identity();
    ContOsc base = g;
    Int e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

QMat2 canonical_P(const Mat2& B) {
    if (B.det() != 1 || B.trace() <= 2)
        throw std::invalid_argument("canonical_P: matrix is not in B_T");
    // b != 0 for any integer matrix with det 1 and trace > 2.
    if (B.b == 0) throw std::logic_error("canonical_P: unexpected zero off-diagonal entry");
    SpectralData sd = spectral_of_trace(B.trace());
    const Int& d = sd.d;
    QuadElem a(Rat(B.a), Rat(0), d);
    QuadElem bq(Rat(B.b), Rat(0), d);
    // Eigenvectors (1, s) and (1, t) for lambda and lambda^-1, scaled so the
    // first coordinate is one; P maps them to (1, 1) and (1, -1).
    QuadElem s = (sd.lambda - a) / bq;
    QuadElem t = (sd.lambda.conj() - a) / bq;
    QuadElem den = t - s;
    QuadElem two(Rat(2), Rat(0), d);
    QMat2 P{QuadElem::one(d), QuadElem::zero(d), (t + s) / den, -(two / den)};

    ContGroup G(B.trace());
    QMat2 E = G.exp_sA(1);
    QMat2 Blift{a, bq, QuadElem(Rat(B.c), Rat(0), d), QuadElem(Rat(B.d), Rat(0), d)};
    if (!(P * Blift == E * P)) throw std::logic_error("canonical_P: P B = e^{sA} P failed");
    return P;
}

Mat2 lattice_params_matrix(const LatticeParams& p) {
    ContGroup G(p.T);
    QMat2 Bq = p.P.inverse() * G.exp_sA(1) * p.P;
    auto as_int = [](const QuadElem& q) {
        if (!q.is_rational() || q.x().get_den() != 1)
            throw std::invalid_argument("lattice_params: P^-1 e^{sA} P is not an integer matrix");
        return Int(q.x().get_num());
    };
    Mat2 B(as_int(Bq.a), as_int(Bq.b), as_int(Bq.c), as_int(Bq.d));
    if (!br_check(p.r, p.xi, B))
        throw std::invalid_argument("lattice_params: (xi, B) is not in B_r");
    return B;
}

LatticeParams lattice_params_of_group(const GroupRep& rep) {
    QMat2 P = canonical_P(rep.B);
    std::array<Rat, 2> xi = l_to_xi(rep.r, rep.B, rep.l);
    Int T = rep.B.trace();
    Int d = spectral_of_trace(T).d;
    LatticeParams p{rep.r, T, QVec2{QuadElem::zero(d), QuadElem::zero(d)}, P,
                    QuadElem::zero(d), xi};
    lattice_params_matrix(p);  // validate
    return p;
}

LatticeGenerators lattice_generators(const LatticeParams& p) {
    ContGroup G(p.T);
    const Int& d = G.d();
    QuadElem detP = p.P.det();
    QVec2 Pe1{p.P.a, p.P.c};
    QVec2 Pe2{p.P.b, p.P.d};
    QVec2 Pxi = p.P.apply(QVec2{G.q_rat(p.xi[0]), G.q_rat(p.xi[1])});
    QMat2 E = G.exp_sA(1);
    QVec2 Eeta = E.apply(p.eta);

    LatticeGenerators gen{
        G.make(detP / Rat(p.r), QVec2{G.q_zero(), G.q_zero()}, 0),
        G.make(G.omega(p.eta, Pe1), Pe1, 0),
        G.make(G.omega(p.eta, Pe2), Pe2, 0),
        G.make(p.zc * detP -
                   G.omega(QVec2{Pxi.x + p.eta.x, Pxi.y + p.eta.y},
                           QVec2{p.eta.x + Eeta.x, p.eta.y + Eeta.y}) /
                       Rat(2),
               QVec2{Pxi.x + p.eta.x - Eeta.x, Pxi.y + p.eta.y - Eeta.y}, 1)};
    return gen;
}

bool lattice_contains(const LatticeParams& p, const ContOsc& g) {
    ContGroup G(p.T);
    if (g.T != p.T)
        throw std::invalid_argument("lattice_contains: element from a different spectral context");

    // Undo F_eta, strip the delta power, undo F_P; test Gamma_r membership.
    AutDescriptor undo_eta{G.q_zero(), QVec2{-p.eta.x, -p.eta.y},
                           QMat2{G.q_one(), G.q_zero(), G.q_zero(), G.q_one()}, 1};
    ContOsc g0 = apply_aut(undo_eta, g);
    QuadElem detP = p.P.det();
    QVec2 Pxi = p.P.apply(QVec2{G.q_rat(p.xi[0]), G.q_rat(p.xi[1])});
    ContOsc delta0 = G.make(p.zc * detP, Pxi, 1);
    ContOsc h = G.mul(g0, G.pow(delta0, -g0.k));
    if (h.k != 0) throw std::logic_error("lattice_contains: delta power did not cancel");

    QMat2 Pinv = p.P.inverse();
    QuadElem z = h.z / detP;
    QVec2 v = Pinv.apply(h.xi);
    if (!z.is_rational() || !v.x.is_rational() || !v.y.is_rational()) return false;
    if (v.x.x().get_den() != 1 || v.y.x().get_den() != 1) return false;
    return gamma_r_contains(p.r, z.x(), {Int(v.x.x().get_num()), Int(v.y.x().get_num())});
}

ContOsc apply_aut(const AutDescriptor& a, const ContOsc& g) {
    if (a.mu != 1 && a.mu != -1) throw std::invalid_argument("apply_aut: mu must be +-1");
    // S A = mu A S forces S = (p q; q p) for mu = 1, (p q; -q -p) for mu = -1.
    bool sym_ok = (a.mu == 1) ? (a.S.a == a.S.d && a.S.b == a.S.c)
                              : (a.S.a == -a.S.d && a.S.b == -a.S.c);
    if (!sym_ok || a.S.det().sign() == 0)
        throw std::invalid_argument("apply_aut: S is not in the group of admissible maps");

    ContGroup G(g.T);
    // F_S
    ContOsc out = G.make(a.S.det() * g.z, a.S.apply(g.xi), a.mu * g.k);
    // F_eta on (z, xi, t) = (z + w(eta,xi) - w(eta,E eta)/2 + w(xi, eta - E eta)/2,
    //                        xi + eta - E eta, t)
    QMat2 E = G.exp_sA(out.k);
    QVec2 Eeta = E.apply(a.eta);
    QVec2 shift{a.eta.x - Eeta.x, a.eta.y - Eeta.y};
    QuadElem z2 = out.z + G.omega(a.eta, out.xi) - G.omega(a.eta, Eeta) / Rat(2) +
                  G.omega(out.xi, shift) / Rat(2);
    out = G.make(z2, QVec2{out.xi.x + shift.x, out.xi.y + shift.y}, out.k);
    // F_u with u' = u s
    out.z = out.z + a.u_prime * Rat(out.k);
    return out;
}

LatticeParams param_action(const LatticeParams& p, const GammaRElem& gam, const BrElem& br) {
    if (!gamma_r_contains(p.r, gam.z, gam.xi))
        throw std::invalid_argument("param_action: (k,l) is not in Gamma_r");
    if (!br_check(p.r, br.zeta, br.K))
        throw std::invalid_argument("param_action: (zeta, K) is not in B_r");
    ContGroup G(p.T);
    const Int& d = G.d();
    Mat2 B = lattice_params_matrix(p);

    // (tilde1): (eta, P) . (zeta, K) = (eta + P zeta, P K)
    QVec2 zeta_q{G.q_rat(br.zeta[0]), G.q_rat(br.zeta[1])};
    QVec2 Pzeta = p.P.apply(zeta_q);
    QMat2 Kq{G.q_rat(Rat(br.K.a)), G.q_rat(Rat(br.K.b)), G.q_rat(Rat(br.K.c)),
             G.q_rat(Rat(br.K.d))};
    QVec2 eta_new{p.eta.x + Pzeta.x, p.eta.y + Pzeta.y};
    QMat2 P_new = p.P * Kq;

    // (tilde2): (z~, xi~) = F_{K^-1}((0,-zeta)(k,l)^-1 (z,xi)(0,B zeta)) in H.
    auto hpoint = [&](QuadElem z, QVec2 xi) { return G.make(std::move(z), std::move(xi), 0); };
    ContOsc f1 = hpoint(G.q_zero(), QVec2{-zeta_q.x, -zeta_q.y});
    ContOsc f2 = G.inverse(hpoint(G.q_rat(gam.z), QVec2{G.q_rat(Rat(gam.xi[0])),
                                                         G.q_rat(Rat(gam.xi[1]))}));
    ContOsc f3 = hpoint(p.zc, QVec2{G.q_rat(p.xi[0]), G.q_rat(p.xi[1])});
    Rat bz0 = Rat(B.a) * br.zeta[0] + Rat(B.b) * br.zeta[1];
    Rat bz1 = Rat(B.c) * br.zeta[0] + Rat(B.d) * br.zeta[1];
    ContOsc f4 = hpoint(G.q_zero(), QVec2{G.q_rat(bz0), G.q_rat(bz1)});
    ContOsc prod = G.mul(G.mul(G.mul(f1, f2), f3), f4);
    QMat2 Kinv = Kq.inverse();
    QuadElem z_new = Kinv.det() * prod.z;
    QVec2 xi_vec = Kinv.apply(prod.xi);
    if (!xi_vec.x.is_rational() || !xi_vec.y.is_rational())
        throw std::logic_error("param_action: xi left the rationals");
    std::array<Rat, 2> xi_new{xi_vec.x.x(), xi_vec.y.x()};

    // Cross-check with the closed form xi~ = K^-1 (xi - l + (B - I) zeta).
    Mat2 Kinv_i = br.K.inverse_unimodular();
    Rat e0 = p.xi[0] - Rat(gam.xi[0]) + Rat(B.a - 1) * br.zeta[0] + Rat(B.b) * br.zeta[1];
    Rat e1 = p.xi[1] - Rat(gam.xi[1]) + Rat(B.c) * br.zeta[0] + Rat(B.d - 1) * br.zeta[1];
    Rat c0 = Rat(Kinv_i.a) * e0 + Rat(Kinv_i.b) * e1;
    Rat c1 = Rat(Kinv_i.c) * e0 + Rat(Kinv_i.d) * e1;
    if (xi_new[0] != c0 || xi_new[1] != c1)
        throw std::logic_error("param_action: tilde-xi closed form mismatch");

    LatticeParams out{p.r, p.T, eta_new, P_new, z_new, xi_new};
    lattice_params_matrix(out);  // validates (xi~, B~) in B_r
    return out;
}

ContOsc embed_word(const ContGroup& G, const LatticeGenerators& gen, const HeisWord& w) {
    ContOsc out = G.pow(gen.alpha, w.x);
    out = G.mul(out, G.pow(gen.beta, w.y));
    out = G.mul(out, G.pow(gen.gamma, w.z));
    return out;
}

ContOsc embed_elem(const ContGroup& G, const LatticeGenerators& gen, const DOscElem& g) {
    return G.mul(embed_word(G, gen, g.h), G.pow(gen.delta, g.k));
}

}  // namespace osckit
