#include "osckit/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace osckit {

std::string rat_to_string(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    size_t slash = s.find('/');
    try {
        Rat v;
        if (slash == std::string::npos) {
            v = Rat(Int(s));
        } else {
            v = Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        }
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rat: malformed rational \"" + s + "\"");
    }
}

std::array<long, 2> parse_residue_pair(const std::string& s) {
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("parse_residue_pair: expected \"l1,l2\", got \"" + s + "\"");
    try {
        return {std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_residue_pair: malformed pair \"" + s + "\"");
    }
}

namespace {

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    return Int(j.get<std::string>());
}

}  // namespace

json quad_to_json(const QuadElem& q) {
    return json{{"x", rat_to_string(q.x())}, {"y", rat_to_string(q.y())}, {"d", int_to_json(q.d())}};
}

QuadElem quad_from_json(const json& j) {
    return QuadElem(parse_rat(j.at("x").get<std::string>()),
                    parse_rat(j.at("y").get<std::string>()), int_from_json(j.at("d")));
}

std::string op_label(const CycleOp& op) {
    std::string base = op.is_A ? "A" : "B";
    if (op.exp == 1) return base;
    return base + "^" + op.exp.get_str();
}

json cycles_to_json(const Int& T, const std::vector<Cycle>& cycles) {
    json out;
    out["T"] = int_to_json(T);
    out["cycles"] = json::array();
    for (const Cycle& z : cycles) {
        json jz;
        jz["elements"] = json::array();
        for (const Mat2& m : z.elements) jz["elements"].push_back(to_string(m));
        jz["operators"] = json::array();
        for (const CycleOp& op : z.operators)
            jz["operators"].push_back(json{{"base", op.is_A ? "A" : "B"}, {"exp", int_to_json(op.exp)}});
        out["cycles"].push_back(std::move(jz));
    }
    return out;
}

json classlist_to_json(const ClassList& cl) {
    json out;
    out["T"] = int_to_json(cl.T);
    out["r"] = cl.r;
    out["classes"] = json::array();
    for (const ClassEntry& e : cl.entries) {
        json je;
        je["B"] = to_string(e.B);
        je["l_reps"] = json::array();
        for (const Residue& l : e.l_reps) je["l_reps"].push_back(json::array({l[0], l[1]}));
        out["classes"].push_back(std::move(je));
    }
    return out;
}

ClassList classlist_from_json(const json& j) {
    ClassList cl{int_from_json(j.at("T")), j.at("r").get<long>(), {}};
    for (const json& je : j.at("classes")) {
        ClassEntry e;
        e.B = parse_mat2(je.at("B").get<std::string>());
        for (const json& jl : je.at("l_reps"))
            e.l_reps.push_back({jl.at(0).get<long>(), jl.at(1).get<long>()});
        cl.entries.push_back(std::move(e));
    }
    return cl;
}

json symmetry_to_json(const SymmetryData& sd) {
    json out;
    out["generator"] = to_string(sd.G);
    out["root_index"] = int_to_json(sd.root_index);
    out["reversible"] = sd.reversible;
    out["reversing"] = sd.reversing ? json(to_string(*sd.reversing)) : json(nullptr);
    return out;
}

json iso_to_json(const IsoResult& res) {
    json out;
    out["isomorphic"] = res.isomorphic;
    if (res.witness) {
        out["witness"] = json{{"kappa", res.witness->kappa},
                              {"K", to_string(res.witness->K)},
                              {"m", json::array({int_to_json(res.witness->m[0]),
                                                 int_to_json(res.witness->m[1])})}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json commensurable_to_json(const CommResult& res) {
    json out;
    out["commensurable"] = res.commensurable;
    if (res.commensurable) {
        out["field_d"] = int_to_json(res.d1);
        out["witness"] = json::array({int_to_json((*res.witness)[0]), int_to_json((*res.witness)[1])});
    } else {
        out["field_d1"] = int_to_json(res.d1);
        out["field_d2"] = int_to_json(res.d2);
        out["witness"] = nullptr;
    }
    return out;
}

json reduction_to_json(const Reduction& red) {
    return json{{"rep", to_string(red.rep)}, {"conjugator", to_string(red.conjugator)}};
}

json contosc_to_json(const ContOsc& g) {
    return json{{"z", quad_to_json(g.z)},
                {"xi", json::array({quad_to_json(g.xi.x), quad_to_json(g.xi.y)})},
                {"k", int_to_json(g.k)}};
}

json lattice_generators_to_json(const LatticeParams& p) {
    LatticeGenerators gen = lattice_generators(p);
    json out;
    out["r"] = p.r;
    out["T"] = int_to_json(p.T);
    out["d"] = int_to_json(spectral_of_trace(p.T).d);
    out["B"] = to_string(lattice_params_matrix(p));
    out["xi"] = json::array({rat_to_string(p.xi[0]), rat_to_string(p.xi[1])});
    out["generators"] = json{{"gamma", contosc_to_json(gen.gamma)},
                             {"alpha", contosc_to_json(gen.alpha)},
                             {"beta", contosc_to_json(gen.beta)},
                             {"delta", contosc_to_json(gen.delta)}};
    return out;
}

std::string cycles_to_dot(const Int& T, const std::vector<Cycle>& cycles) {
    std::ostringstream os;
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        const Cycle& z = cycles[ci];
        os << "digraph cycle_" << ci << " {\n";
        os << "  label=\"T=" << T << " cycle " << ci << "\";\n";
        for (size_t i = 0; i < z.size(); ++i) {
            const Mat2& m = z.elements[i];
            os << "  n" << i << " [label=\"" << m.a << " " << m.b << "\\n"
               << m.c << " " << m.d << "\"];\n";
        }
        for (size_t i = 0; i < z.size(); ++i) {
            os << "  n" << i << " -> n" << (i + 1) % z.size() << " [label=\""
               << op_label(z.operators[i]) << "\"];\n";
        }
        os << "}\n";
    }
    return os.str();
}

std::string cycles_to_text(const Int& T, const std::vector<Cycle>& cycles) {
    std::ostringstream os;
    os << "T = " << T << ": " << cycles.size() << (cycles.size() == 1 ? " cycle\n" : " cycles\n");
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        const Cycle& z = cycles[ci];
        os << "cycle " << ci << " (length " << z.size() << "):";
        for (size_t i = 0; i < z.size(); ++i)
            os << " [" << to_string(z.elements[i]) << "] --" << op_label(z.operators[i]) << "-->";
        os << " back\n";
    }
    return os.str();
}

namespace {

std::string residue_list(const std::vector<Residue>& reps) {
    std::ostringstream os;
    for (size_t i = 0; i < reps.size(); ++i) {
        if (i) os << ", ";
        os << "(" << reps[i][0] << "," << reps[i][1] << ")";
    }
    return os.str();
}

}  // namespace

std::string classlist_to_text(const ClassList& cl) {
    std::ostringstream os;
    os << "T = " << cl.T << ", r = " << cl.r << ": ";
    size_t total = 0;
    for (const ClassEntry& e : cl.entries) total += e.l_reps.size();
    os << total << (total == 1 ? " class\n" : " classes\n");
    for (const ClassEntry& e : cl.entries)
        os << "  B = " << to_string(e.B) << ": l = " << residue_list(e.l_reps) << "\n";
    return os.str();
}

std::string render_table(const Int& tmax, const std::vector<long>& rset) {
    std::ostringstream os;
    if (rset.empty()) return os.str();
    for (Int T = 3; T <= tmax; ++T) {
        std::map<long, ClassList> by_r;
        for (long r : rset) by_r.emplace(r, enumerate_classes(T, r));
        const ClassList& first = by_r.begin()->second;
        os << "T = " << T << "\n";
        for (size_t bi = 0; bi < first.entries.size(); ++bi) {
            os << "  B = " << to_string(first.entries[bi].B) << "\n";
            // Group the r values by identical l-representative lists.
            std::map<std::string, std::vector<long>> groups;
            for (long r : rset)
                groups[residue_list(by_r.at(r).entries[bi].l_reps)].push_back(r);
            // Describe each group by the smallest modulus that separates it.
            std::vector<std::pair<std::vector<long>, std::string>> rows;
            for (auto& [sig, rs] : groups) rows.push_back({rs, sig});
            std::sort(rows.begin(), rows.end(),
                      [](const auto& l, const auto& r) { return l.first.front() < r.first.front(); });
            for (auto& [rs, text] : rows) {
                long modulus = 0;
                for (long M = 1; M <= 24; ++M) {
                    std::map<long, bool> in_group;
                    bool consistent = true;
                    for (long r : rset) {
                        bool member = std::find(rs.begin(), rs.end(), r) != rs.end();
                        auto it = in_group.find(r % M);
                        if (it == in_group.end())
                            in_group[r % M] = member;
                        else if (it->second != member) {
                            consistent = false;
                            break;
                        }
                    }
                    if (consistent) {
                        modulus = M;
                        break;
                    }
                }
                os << "    ";
                if (modulus == 1) {
                    os << "all r";
                } else if (modulus > 0) {
                    std::vector<long> residues;
                    for (long r : rs)
                        if (std::find(residues.begin(), residues.end(), r % modulus) == residues.end())
                            residues.push_back(r % modulus);
                    std::sort(residues.begin(), residues.end());
                    os << "r = ";
                    for (size_t i = 0; i < residues.size(); ++i)
                        os << (i ? "," : "") << residues[i];
                    os << " (mod " << modulus << ")";
                } else {
                    os << "r in {";
                    for (size_t i = 0; i < rs.size(); ++i) os << (i ? "," : "") << rs[i];
                    os << "}";
                }
                os << ": " << text << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace osckit
