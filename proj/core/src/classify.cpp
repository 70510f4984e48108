#include "osckit/classify.hpp"

#include <algorithm>
#include <map>

namespace osckit {

namespace {

long mod_r(const Int& v, long r) {
    Int q;
    mpz_fdiv_r_ui(q.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(r));
    return q.get_si();
}

Residue mat_apply_mod(const Mat2& M, const Residue& l, long r) {
    return {mod_r(M.a * l[0] + M.b * l[1], r), mod_r(M.c * l[0] + M.d * l[1], r)};
}

Residue add_mod(const Residue& x, const Residue& y, long r) {
    return {(x[0] + y[0]) % r, (x[1] + y[1]) % r};
}

/// Generators of ~_B on (Z_r)^2, with enough data to lift an orbit path
/// back to an element of Z_2 x (GL(2,Z) x| Z^2).
struct OrbitGens {
    long r;
    std::vector<Residue> translations;  // columns of (B - I) mod r
    struct Lin {
        Mat2 action;  // acts on l mod r
        Mat2 Kpart;   // K-part of the corresponding pair-group element
        int kappa;    // +1 for symmetries, -1 for reversing maps
    };
    std::vector<Lin> lins;
};

OrbitGens make_orbit_gens(const Mat2& B, long r) {
    OrbitGens g;
    g.r = r;
    Mat2 BmI = B - Mat2::identity();
    g.translations.push_back({mod_r(BmI.a, r), mod_r(BmI.c, r)});
    g.translations.push_back({mod_r(BmI.b, r), mod_r(BmI.d, r)});
    std::vector<Mat2> rg = reversing_group(B);
    // rg = {-I, G, [R]}; the first two are symmetries of B, the optional
    // third reverses. A reversing map R acting as l -> R l is the pair
    // element kappa . (-B R, m): kappa(-BR, 0)(B, lam) = (B, R lam).
    for (size_t i = 0; i < rg.size(); ++i) {
        bool reversing = (i == 2);
        OrbitGens::Lin lin;
        lin.action = rg[i];
        lin.kappa = reversing ? -1 : 1;
        lin.Kpart = reversing ? Mat2(-(B * rg[i])) : rg[i];
        g.lins.push_back(std::move(lin));
    }
    return g;
}

size_t cell_index(const Residue& l, long r) {
    return static_cast<size_t>(l[0]) * static_cast<size_t>(r) + static_cast<size_t>(l[1]);
}

/// Explores the ~_B orbit of start. When target is non-null, stops once the
/// target is reached and returns the generator path (indices into
/// translations then lins); otherwise returns all members.
struct OrbitWalk {
    std::vector<Residue> members;
    bool found_target = false;
    std::vector<int> path;  // generator ids, in application order
};

OrbitWalk orbit_walk(const OrbitGens& g, const Residue& start, const Residue* target,
                     std::vector<int>& scratch_visited) {
    const long r = g.r;
    const int n_trans = static_cast<int>(g.translations.size());
    std::vector<int>& visited = scratch_visited;
    std::map<size_t, std::pair<size_t, int>> parent;  // child -> (parent, gen id)

    OrbitWalk walk;
    std::vector<size_t> queue;
    size_t s = cell_index(start, r);
    visited[s] = 1;
    queue.push_back(s);
    walk.members.push_back(start);
    auto decode = [&](size_t idx) { return Residue{static_cast<long>(idx) / r, static_cast<long>(idx) % r}; };

    for (size_t qi = 0; qi < queue.size(); ++qi) {
        size_t cur_idx = queue[qi];
        Residue cur = decode(cur_idx);
        if (target && cur == *target) {
            walk.found_target = true;
            size_t at = cur_idx;
            while (at != s) {
                auto [from, gen_id] = parent.at(at);
                walk.path.push_back(gen_id);
                at = from;
            }
            std::reverse(walk.path.begin(), walk.path.end());
            break;
        }
        auto push = [&](const Residue& nxt, int gen_id) {
            size_t ni = cell_index(nxt, r);
            if (visited[ni]) return;
            visited[ni] = 1;
            if (target) parent.emplace(ni, std::make_pair(cur_idx, gen_id));
            queue.push_back(ni);
            walk.members.push_back(nxt);
        };
        for (int t = 0; t < n_trans; ++t) push(add_mod(cur, g.translations[t], r), t);
        for (size_t i = 0; i < g.lins.size(); ++i)
            push(mat_apply_mod(g.lins[i].action, cur, r), n_trans + static_cast<int>(i));
    }
    for (size_t idx : queue) visited[idx] = 0;  // reset scratch
    return walk;
}

}  // namespace

GroupRep GroupRep::make(long r, Mat2 B, std::array<long, 2> l) {
    if (r < 1) throw std::invalid_argument("GroupRep: r must be >= 1");
    if (B.det() != 1 || B.trace() <= 2)
        throw std::invalid_argument("GroupRep: B must have det 1 and trace > 2");
    auto reduce = [r](long v) { return ((v % r) + r) % r; };
    return GroupRep{r, std::move(B), {reduce(l[0]), reduce(l[1])}};
}

std::vector<Orbit> residue_orbits(const Mat2& B, long r) {
    if (r < 1) throw std::invalid_argument("residue_orbits: r must be >= 1");
    OrbitGens gens = make_orbit_gens(B, r);
    std::vector<int> visited(static_cast<size_t>(r) * static_cast<size_t>(r), 0);
    std::vector<int> seen(visited.size(), 0);
    std::vector<Orbit> orbits;
    for (long l1 = 0; l1 < r; ++l1) {
        for (long l2 = 0; l2 < r; ++l2) {
            Residue l{l1, l2};
            if (seen[cell_index(l, r)]) continue;
            OrbitWalk walk = orbit_walk(gens, l, nullptr, visited);
            for (const Residue& m : walk.members) seen[cell_index(m, r)] = 1;
            std::sort(walk.members.begin(), walk.members.end());
            orbits.push_back(Orbit{walk.members.front(), std::move(walk.members)});
        }
    }
    return orbits;
}

ClassList enumerate_classes(const Int& T, long r) {
    if (r < 1) throw std::invalid_argument("enumerate_classes: r must be >= 1");
    std::vector<Cycle> cycles = decompose_trace(T);
    std::vector<bool> done(cycles.size(), false);
    ClassList out{T, r, {}};
    for (size_t i = 0; i < cycles.size(); ++i) {
        if (done[i]) continue;
        done[i] = true;
        Cycle zb = cycle_bar(cycles[i]);
        Mat2 rep = cycles[i].elements[0];
        if (!(zb == cycles[i])) {
            auto it = std::find(cycles.begin(), cycles.end(), zb);
            if (it == cycles.end()) throw std::logic_error("enumerate_classes: bar cycle missing");
            done[static_cast<size_t>(it - cycles.begin())] = true;
            if (lex_less(zb.elements[0], rep)) rep = zb.elements[0];
        }
        ClassEntry entry;
        entry.B = rep;
        for (const Orbit& o : residue_orbits(rep, r)) entry.l_reps.push_back(o.rep);
        std::sort(entry.l_reps.begin(), entry.l_reps.end());
        out.entries.push_back(std::move(entry));
    }
    return out;
}

namespace {

/// (B, l) carried to the canonical representative B* of its cycle pair:
/// Bstar = K B K^-1 and lam = K l mod r.
struct Canon {
    Mat2 Bstar;
    Residue lam;
    Mat2 K;
};

Canon canonicalize_from(const Mat2& rep, const Mat2& K0, const Residue& l, long r) {
    Cycle z = cycle_of(rep);
    Cycle zb = cycle_bar(z);
    Mat2 best = z.elements[0];
    if (lex_less(zb.elements[0], best)) best = zb.elements[0];
    Mat2 K2;
    if (z.contains(best)) {
        K2 = path_conjugator(z, rep, best);
    } else {
        K2 = hat_U() * path_conjugator(z, rep, bar(best));
    }
    Mat2 K = K2 * K0;
    Canon c{best, {0, 0}, K};
    c.lam = mat_apply_mod(K, {l[0], l[1]}, r);
    if (conjugate(K, conjugate(K0.inverse_unimodular(), rep)) != best)
        throw std::logic_error("canonicalize: conjugator verification failed");
    return c;
}

/// Applies kappa . (K, m) to (B, l) per the defining group actions.
std::pair<Mat2, Residue> apply_pair_action(int kappa, const Mat2& K, const std::array<Int, 2>& m,
                                           const Mat2& B, const Residue& l, long r) {
    Mat2 Binv = B.inverse_unimodular();
    Mat2 ImBinv = Mat2::identity() - Binv;
    Int u0 = Int(l[0]) - (ImBinv.a * m[0] + ImBinv.b * m[1]);
    Int u1 = Int(l[1]) - (ImBinv.c * m[0] + ImBinv.d * m[1]);
    Mat2 Bout = conjugate(K, B);
    Residue lout{mod_r(K.a * u0 + K.b * u1, r), mod_r(K.c * u0 + K.d * u1, r)};
    if (kappa == -1) {
        Residue neg{mod_r(-(Bout.a * lout[0] + Bout.b * lout[1]), r),
                    mod_r(-(Bout.c * lout[0] + Bout.d * lout[1]), r)};
        return {Bout.inverse_unimodular(), neg};
    }
    return {Bout, lout};
}

std::optional<IsoWitness> assemble_witness(const Canon& c1, const Canon& c2, int kappa_branch,
                                           const OrbitGens& gens, const std::vector<int>& path,
                                           const GroupRep& g1, const GroupRep& g2) {
    const int n_trans = static_cast<int>(gens.translations.size());
    // Pair-group element carrying (B*, lam1) to (B*^sigma, lam2): the K- and
    // kappa-parts compose multiplicatively, translations contribute neither.
    Mat2 W = Mat2::identity();
    int kappa_path = 1;
    for (int gid : path) {
        if (gid < n_trans) continue;
        const auto& lin = gens.lins[static_cast<size_t>(gid - n_trans)];
        W = lin.Kpart * W;
        kappa_path *= lin.kappa;
    }
    int kappa = kappa_branch * kappa_path;
    Mat2 K = c2.K.inverse_unimodular() * W * c1.K;

    // Recover the translation part by solving for m mod r.
    const long r = g1.r;
    for (long m0 = 0; m0 < r; ++m0) {
        for (long m1 = 0; m1 < r; ++m1) {
            std::array<Int, 2> m{Int(m0), Int(m1)};
            auto [Bout, lout] = apply_pair_action(kappa, K, m, g1.B, g1.l, r);
            if (Bout == g2.B && lout == g2.l) return IsoWitness{kappa, K, m};
        }
    }
    return std::nullopt;
}

}  // namespace

IsoResult iso(const GroupRep& g1, const GroupRep& g2) {
    if (g1.r != g2.r || g1.B.trace() != g2.B.trace()) return {false, std::nullopt};
    const long r = g1.r;

    Reduction red1 = reduce_to_cycle(g1.B);
    Canon c1 = canonicalize_from(red1.rep, red1.conjugator, g1.l, r);
    Reduction red2 = reduce_to_cycle(g2.B);
    Canon c2 = canonicalize_from(red2.rep, red2.conjugator, g2.l, r);

    int kappa_branch = 1;
    if (!(c1.Bstar == c2.Bstar)) {
        // Try kappa . (B2, l2) = (B2^-1, -B2 l2); its cycle representative is
        // rep2^T = (hat_W C2) B2^-1 (hat_W C2)^-1, already in H0_red.
        Residue l2k = mat_apply_mod(-g2.B, g2.l, r);
        c2 = canonicalize_from(red2.rep.transpose(), hat_W() * red2.conjugator, l2k, r);
        kappa_branch = -1;
        if (!(c1.Bstar == c2.Bstar)) return {false, std::nullopt};
    }

    OrbitGens gens = make_orbit_gens(c1.Bstar, r);
    std::vector<int> scratch(static_cast<size_t>(r) * static_cast<size_t>(r), 0);
    OrbitWalk walk = orbit_walk(gens, c1.lam, &c2.lam, scratch);
    if (!walk.found_target) return {false, std::nullopt};

    std::optional<IsoWitness> witness =
        assemble_witness(c1, c2, kappa_branch, gens, walk.path, g1, g2);
    if (!witness) throw std::logic_error("iso: decision true but witness assembly failed");
    return {true, witness};
}

Int commensurability_field(const Int& T) {
    if (T < 3) throw std::invalid_argument("commensurability_field: T must be >= 3");
    return squarefree_decompose(T * T - 4).second;
}

CommResult commensurable(const GroupRep& g1, const GroupRep& g2) {
    Int T1 = g1.B.trace();
    Int T2 = g2.B.trace();
    CommResult out{false, commensurability_field(T1), commensurability_field(T2), std::nullopt};
    if (out.d1 != out.d2) return out;
    SpectralData s1 = spectral_of_trace(T1);
    SpectralData s2 = spectral_of_trace(T2);
    Int g;
    mpz_gcd(g.get_mpz_t(), s1.m.get_mpz_t(), s2.m.get_mpz_t());
    std::array<Int, 2> w{s2.m / g, s1.m / g};
    if (s1.lambda.pow(w[0]) != s2.lambda.pow(w[1]))
        throw std::logic_error("commensurable: exponent witness failed verification");
    out.commensurable = true;
    out.witness = w;
    return out;
}

}  // namespace osckit
