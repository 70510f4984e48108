#include <iostream>
#include <random>
#include <set>

#include "osckit/io.hpp"

namespace osckit {

namespace {

Mat2 random_unimodular(std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<int> pick(0, 3);
    const Mat2 gens[4] = {hat_A(), hat_A().inverse_unimodular(), hat_B(),
                          hat_B().inverse_unimodular()};
    Mat2 m = Mat2::identity();
    for (int i = 0; i < length; ++i) m = m * gens[pick(rng)];
    return m;
}

bool check_partitions(std::ostream& out, long tmax) {
    for (Int T = 3; T <= tmax; ++T) {
        std::vector<Mat2> members = enumerate_H0_red(T);
        std::set<Mat2, Mat2Less> covered;
        for (const Cycle& z : decompose_trace(T)) {
            for (const Mat2& m : z.elements) {
                if (!covered.insert(m).second) {
                    out << "FAIL cycle partition: duplicate member at T=" << T << "\n";
                    return false;
                }
            }
        }
        if (covered.size() != members.size()) {
            out << "FAIL cycle partition: size mismatch at T=" << T << "\n";
            return false;
        }
        for (const Mat2& m : members) {
            if (!covered.count(m)) {
                out << "FAIL cycle partition: member missing at T=" << T << "\n";
                return false;
            }
        }
    }
    return true;
}

bool check_cycle_step_oracle(std::ostream& out, long tmax) {
    for (Int T = 3; T <= tmax; ++T) {
        for (const Mat2& B : enumerate_H0_red(T)) {
            auto [op, next] = cycle_step(B);
            // smallest q >= 1 whose conjugate lands back in H0_red
            const Mat2& base = op.is_A ? hat_A() : hat_B();
            Int q = 0;
            Mat2 cur = B;
            do {
                cur = conjugate(base, cur);
                ++q;
            } while (!in_H0_red(cur) && q < T + 2);
            if (q != op.exp || cur != next) {
                out << "FAIL cycle_step oracle at T=" << T << " B=" << to_string(B) << "\n";
                return false;
            }
        }
    }
    return true;
}

bool check_spectral(std::ostream& out, long tmax) {
    for (Int T = 3; T <= tmax; ++T) {
        SpectralData sd = spectral_of_trace(T);
        QuadElem zero = sd.lambda * sd.lambda - sd.lambda * Rat(T) + QuadElem::one(sd.d);
        if (zero != QuadElem::zero(sd.d) || sd.eps.pow(sd.m) != sd.lambda) {
            out << "FAIL spectral data at T=" << T << "\n";
            return false;
        }
        Rat nrm = sd.eps.norm();
        if (nrm != 1 && nrm != -1) {
            out << "FAIL unit norm at T=" << T << "\n";
            return false;
        }
    }
    return true;
}

bool check_reduction_roundtrips(std::ostream& out, long tmax, int trials) {
    std::mt19937_64 rng(0xce11u);
    for (Int T = 3; T <= tmax; ++T) {
        std::vector<Cycle> cycles = decompose_trace(T);
        std::uniform_int_distribution<size_t> pick_cycle(0, cycles.size() - 1);
        for (int i = 0; i < trials; ++i) {
            const Cycle& z = cycles[pick_cycle(rng)];
            std::uniform_int_distribution<size_t> pick_el(0, z.size() - 1);
            Mat2 B = z.elements[pick_el(rng)];
            Mat2 scrambled = conjugate(random_unimodular(rng, 8), B);
            Reduction red = reduce_to_cycle(scrambled);
            if (conjugate(red.conjugator, scrambled) != red.rep || !z.contains(red.rep)) {
                out << "FAIL reduction roundtrip at T=" << T << "\n";
                return false;
            }
        }
    }
    return true;
}

bool check_heis(std::ostream& out) {
    std::mt19937_64 rng(0x4e15u);
    std::uniform_int_distribution<long> coeff(-6, 6);
    for (long r : {1L, 2L, 3L, 5L}) {
        for (int i = 0; i < 50; ++i) {
            HeisWord a{coeff(rng), coeff(rng), coeff(rng)};
            HeisWord b{coeff(rng), coeff(rng), coeff(rng)};
            HeisWord c{coeff(rng), coeff(rng), coeff(rng)};
            if (heis_mul(r, heis_mul(r, a, b), c) != heis_mul(r, a, heis_mul(r, b, c))) {
                out << "FAIL Heisenberg associativity\n";
                return false;
            }
            if (!heis_mul(r, a, heis_inv(r, a)).is_identity()) {
                out << "FAIL Heisenberg inverse\n";
                return false;
            }
        }
        HeisWord alpha{1, 0, 0}, beta{0, 1, 0};
        HeisWord comm = heis_mul(r, heis_mul(r, alpha, beta),
                                 heis_mul(r, heis_inv(r, alpha), heis_inv(r, beta)));
        if (comm != HeisWord{0, 0, Int(r)}) {
            out << "FAIL Heisenberg commutator relation\n";
            return false;
        }
    }
    return true;
}

bool check_table_spots(std::ostream& out) {
    struct Spot {
        long T, r;
        size_t classes;
    };
    // class counts from the summary table
    const Spot spots[] = {{3, 7, 1},  {4, 2, 2}, {4, 3, 1}, {5, 3, 2}, {5, 4, 1},
                          {6, 4, 6},  {6, 2, 5}, {6, 3, 2}, {7, 5, 5}, {7, 3, 2}};
    for (const Spot& s : spots) {
        ClassList cl = enumerate_classes(s.T, s.r);
        size_t total = 0;
        for (const ClassEntry& e : cl.entries) total += e.l_reps.size();
        if (total != s.classes) {
            out << "FAIL class count at T=" << s.T << " r=" << s.r << " (got " << total << ")\n";
            return false;
        }
    }
    return true;
}

bool check_embeddings(std::ostream& out) {
    for (long T = 3; T <= 7; ++T) {
        for (long r : {1L, 2L}) {
            ClassList cl = enumerate_classes(T, r);
            for (const ClassEntry& e : cl.entries) {
                for (const Residue& l : e.l_reps) {
                    GroupRep rep = GroupRep::make(r, e.B, l);
                    LatticeParams p = lattice_params_of_group(rep);
                    ContGroup G(p.T);
                    LatticeGenerators gen = lattice_generators(p);
                    HeisWord phi_a{rep.B.a, rep.B.c, Int(-rep.l[1])};
                    HeisWord phi_b{rep.B.b, rep.B.d, Int(rep.l[0])};
                    ContOsc lhs_a = G.mul(G.mul(gen.delta, gen.alpha), G.inverse(gen.delta));
                    ContOsc lhs_b = G.mul(G.mul(gen.delta, gen.beta), G.inverse(gen.delta));
                    if (lhs_a != embed_word(G, gen, phi_a) || lhs_b != embed_word(G, gen, phi_b)) {
                        out << "FAIL embedding relation at T=" << T << " r=" << r << "\n";
                        return false;
                    }
                    for (const ContOsc& g : {lhs_a, lhs_b}) {
                        if (!lattice_contains(p, g)) {
                            out << "FAIL lattice membership at T=" << T << " r=" << r << "\n";
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

bool check_transpose_identity(std::ostream& out) {
    std::mt19937_64 rng(0x7a57u);
    for (int i = 0; i < 40; ++i) {
        Mat2 B = random_unimodular(rng, 10);
        Mat2 lhs = hat_W() * B.inverse_unimodular() * hat_W().inverse_unimodular();
        if (lhs != B.transpose()) {
            out << "FAIL transpose identity W B^-1 W^-1 = B^T\n";
            return false;
        }
    }
    return true;
}

}  // namespace

bool run_selftest(std::ostream& out) {
    bool ok = true;
    auto run = [&](const char* name, bool passed) {
        out << (passed ? "ok   " : "FAIL ") << name << "\n";
        ok = ok && passed;
    };
    run("W B^-1 W^-1 = B^T on random unimodular B", check_transpose_identity(out));
    run("cycle partition of H0_red, T <= 30", check_partitions(out, 30));
    run("cycle_step exponents vs brute force, T <= 20", check_cycle_step_oracle(out, 20));
    run("spectral data exactness, T <= 60", check_spectral(out, 60));
    run("scramble/reduce roundtrips, T <= 8", check_reduction_roundtrips(out, 8, 50));
    run("Heisenberg normal form arithmetic", check_heis(out));
    run("classification table spot checks", check_table_spots(out));
    run("exact embeddings into the continuous group", check_embeddings(out));
    return ok;
}

}  // namespace osckit
