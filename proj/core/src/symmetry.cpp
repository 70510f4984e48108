#include "osckit/symmetry.hpp"

#include <algorithm>

namespace osckit {

namespace {

std::vector<Int> divisors_descending(const Int& n) {
    std::vector<Int> divs;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        divs.push_back(i);
        if (i * i != n) divs.push_back(n / i);
    }
    std::sort(divs.begin(), divs.end(), [](const Int& l, const Int& r) { return l > r; });
    return divs;
}

Mat2 sign_normalized(const Mat2& m) {
    Mat2 neg = -m;
    return lex_less(m, neg) ? m : neg;
}

}  // namespace

std::pair<Mat2, Int> symmetry_generator(const Mat2& B) {
    if (B.det() != 1 || B.trace() <= 2)
        throw std::invalid_argument("symmetry_generator: matrix is not in B_T");
    SpectralData sd = spectral_of_trace(B.trace());

    // lambda - conj(lambda) = f*sqrt(d); for mu = eps^(m/j) the matrix
    // x I + y B with y = (mu - conj mu)/(lambda - conj lambda) and
    // x = mu - y*lambda represents mu in Q[B]. The largest j giving an
    // integer matrix wins; j = 1 reproduces B itself.
    for (const Int& j : divisors_descending(sd.m)) {
        QuadElem mu = sd.eps.pow(sd.m / j);
        Rat y = 2 * mu.y() / Rat(sd.f);
        Rat x = mu.x() - y * Rat(sd.T) / 2;
        Rat ga = x + y * Rat(B.a), gb = y * Rat(B.b);
        Rat gc = y * Rat(B.c), gd = x + y * Rat(B.d);
        if (ga.get_den() != 1 || gb.get_den() != 1 || gc.get_den() != 1 || gd.get_den() != 1)
            continue;
        Mat2 G(ga.get_num(), gb.get_num(), gc.get_num(), gd.get_num());
        if (G.trace() < 0) G = -G;
        if (unimodular_pow(G, j) != B)
            throw std::logic_error("symmetry_generator: root verification failed");
        return {G, j};
    }
    throw std::logic_error("symmetry_generator: no root found (j = 1 should always work)");
}

std::optional<Mat2> reversing_symmetry(const Mat2& B) {
    if (!in_H0_red(B)) throw std::invalid_argument("reversing_symmetry: matrix is not in H0_red");
    Cycle z = cycle_of(B);
    Mat2 Bt = B.transpose();
    Mat2 R = Mat2::identity();
    if (z.contains(Bt)) {
        Mat2 M = path_conjugator(z, B, Bt);
        R = hat_W().inverse_unimodular() * M;
    } else {
        Cycle zb = cycle_bar(z);
        if (!zb.contains(Bt)) return std::nullopt;  // z^T is a third cycle: not reversible
        Mat2 M = path_conjugator(zb, bar(B), Bt);
        R = hat_W().inverse_unimodular() * M * hat_U();
    }
    if (conjugate(R, B) != B.inverse_unimodular())
        throw std::logic_error("reversing_symmetry: verification R B R^-1 = B^-1 failed");
    return sign_normalized(R);
}

std::vector<Mat2> reversing_group(const Mat2& B) {
    auto [G, j] = symmetry_generator(B);
    std::vector<Mat2> gens{-Mat2::identity(), G};
    Reduction red = reduce_to_cycle(B);
    if (auto r = reversing_symmetry(red.rep)) {
        Mat2 Cinv = red.conjugator.inverse_unimodular();
        Mat2 Rb = sign_normalized(Cinv * (*r) * red.conjugator);
        if (conjugate(Rb, B) != B.inverse_unimodular())
            throw std::logic_error("reversing_group: transported reversing symmetry failed check");
        gens.push_back(Rb);
    }
    return gens;
}

SymmetryData symmetry_data(const Mat2& B) {
    auto [G, j] = symmetry_generator(B);
    SymmetryData out{B, G, j, false, std::nullopt};
    std::vector<Mat2> gens = reversing_group(B);
    if (gens.size() == 3) {
        out.reversible = true;
        out.reversing = gens[2];
    }
    return out;
}

}  // namespace osckit
