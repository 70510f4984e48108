#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osckit/io.hpp"

namespace {

using namespace osckit;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // verified-negative verdicts, selftest failures
constexpr int kExitUsage = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<long> parse_rset(const std::string& s) {
    std::vector<long> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stol(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty r-set");
    for (long r : out)
        if (r < 1) throw std::invalid_argument("r values must be >= 1");
    return out;
}

GroupRep parse_group(long r, const std::string& mat, const std::string& l) {
    return GroupRep::make(r, parse_mat2(mat), parse_residue_pair(l));
}

int cmd_cycles(long T, const std::string& format) {
    if (T < 3) throw std::invalid_argument("cycles: T must be >= 3");
    std::vector<Cycle> cycles = decompose_trace(T);
    if (format == "json")
        emit(cycles_to_json(T, cycles));
    else if (format == "dot")
        std::cout << cycles_to_dot(T, cycles);
    else
        std::cout << cycles_to_text(T, cycles);
    return kExitOk;
}

int cmd_classify(long T, long r, const std::string& format) {
    if (T < 3) throw std::invalid_argument("classify: T must be >= 3");
    ClassList cl = enumerate_classes(T, r);
    if (format == "json")
        emit(classlist_to_json(cl));
    else
        std::cout << classlist_to_text(cl);
    return kExitOk;
}

int cmd_table(long tmax, const std::string& rset_str, const std::string& format) {
    if (tmax < 3) throw std::invalid_argument("table: tmax must be >= 3");
    std::vector<long> rset = parse_rset(rset_str);
    if (format == "json") {
        json out = json::array();
        for (long T = 3; T <= tmax; ++T)
            for (long r : rset) out.push_back(classlist_to_json(enumerate_classes(T, r)));
        emit(out);
    } else {
        std::cout << render_table(tmax, rset);
    }
    return kExitOk;
}

int cmd_iso(long r1, const std::string& B1, const std::string& l1, long r2, const std::string& B2,
            const std::string& l2) {
    IsoResult res = iso(parse_group(r1, B1, l1), parse_group(r2, B2, l2));
    emit(iso_to_json(res));
    return res.isomorphic ? kExitOk : kExitNegative;
}

int cmd_commensurable(long r1, const std::string& B1, const std::string& l1, long r2,
                      const std::string& B2, const std::string& l2) {
    CommResult res = commensurable(parse_group(r1, B1, l1), parse_group(r2, B2, l2));
    emit(commensurable_to_json(res));
    return res.commensurable ? kExitOk : kExitNegative;
}

int cmd_symmetry(const std::string& B, const std::string& format) {
    SymmetryData sd = symmetry_data(parse_mat2(B));
    if (format == "json") {
        emit(symmetry_to_json(sd));
    } else {
        std::cout << "generator: " << to_string(sd.G) << "\nroot_index: " << sd.root_index
                  << "\nreversible: " << (sd.reversible ? "true" : "false") << "\nreversing: "
                  << (sd.reversing ? to_string(*sd.reversing) : std::string("none")) << "\n";
    }
    return kExitOk;
}

int cmd_reduce(const std::string& B, const std::string& format) {
    Mat2 m = parse_mat2(B);
    try {
        Reduction red = reduce_to_cycle(m);
        if (format == "json")
            emit(reduction_to_json(red));
        else
            std::cout << "rep: " << to_string(red.rep)
                      << "\nconjugator: " << to_string(red.conjugator) << "\n";
        return kExitOk;
    } catch (const ReductionFailure& e) {
        json out{{"error", e.what()},
                 {"best", to_string(e.best)},
                 {"best_conjugator", to_string(e.best_conjugator)}};
        std::cerr << out.dump(2) << "\n";
        return kExitNegative;
    }
}

int cmd_lattice_gens(long r, const std::string& B, const std::string& l) {
    GroupRep rep = parse_group(r, B, l);
    emit(lattice_generators_to_json(lattice_params_of_group(rep)));
    return kExitOk;
}

int cmd_selftest() { return run_selftest(std::cout) ? kExitOk : kExitNegative; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"osckit: lattices in the four-dimensional split oscillator group"};
    app.require_subcommand(1);

    std::string format = "text";
    long T = 0, r = 0, r1 = 0, r2 = 0, tmax = 7;
    std::string mat, mat1, mat2s, l, l1, l2;
    std::string rset = "1,2,3,4,5,6,7,8,9,10,11,12";

    auto add_format = [&](CLI::App* cmd, const std::string& choices) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember(CLI::detail::split(choices, ',')))
            ->default_str("text");
    };

    CLI::App* cycles = app.add_subcommand("cycles", "cycle decomposition of H0_red for a trace");
    cycles->add_option("T", T, "trace, > 2")->required();
    add_format(cycles, "text,json,dot");

    CLI::App* classify = app.add_subcommand("classify", "isomorphism classes for (T, r)");
    classify->add_option("T", T, "trace, > 2")->required();
    classify->add_option("r", r, "Heisenberg parameter, >= 1")->required();
    add_format(classify, "text,json");

    CLI::App* table = app.add_subcommand("table", "classification table for T = 3..tmax");
    table->add_option("--tmax", tmax, "largest trace");
    table->add_option("--rset", rset, "comma-separated r values");
    add_format(table, "text,json");

    CLI::App* iso_cmd = app.add_subcommand("iso", "decide isomorphism of two groups Osc^r(B,l)");
    iso_cmd->add_option("r1", r1)->required();
    iso_cmd->add_option("B1", mat1)->required();
    iso_cmd->add_option("l1", l1)->required();
    iso_cmd->add_option("r2", r2)->required();
    iso_cmd->add_option("B2", mat2s)->required();
    iso_cmd->add_option("l2", l2)->required();

    CLI::App* comm = app.add_subcommand("commensurable", "decide commensurability of two groups");
    comm->add_option("r1", r1)->required();
    comm->add_option("B1", mat1)->required();
    comm->add_option("l1", l1)->required();
    comm->add_option("r2", r2)->required();
    comm->add_option("B2", mat2s)->required();
    comm->add_option("l2", l2)->required();

    CLI::App* symmetry = app.add_subcommand("symmetry", "symmetry and reversing symmetry group");
    symmetry->add_option("B", mat)->required();
    add_format(symmetry, "text,json");
    symmetry->get_option("--format")->default_str("json");

    CLI::App* reduce = app.add_subcommand("reduce", "conjugate a matrix into H0_red");
    reduce->add_option("B", mat)->required();
    add_format(reduce, "text,json");

    CLI::App* gens = app.add_subcommand("lattice-gens", "exact lattice generators of Osc^r(B,l)");
    gens->add_option("r", r)->required();
    gens->add_option("B", mat)->required();
    gens->add_option("l", l)->required();

    app.add_subcommand("selftest", "run the invariant suite");

    // symmetry/lattice-gens/iso default to JSON output
    format = "text";
    std::string sym_format = "json";
    symmetry->get_option("--format")->each([&](const std::string& v) { sym_format = v; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cycles->parsed()) return cmd_cycles(T, format);
        if (classify->parsed()) return cmd_classify(T, r, format);
        if (table->parsed()) return cmd_table(tmax, rset, format);
        if (iso_cmd->parsed()) return cmd_iso(r1, mat1, l1, r2, mat2s, l2);
        if (comm->parsed()) return cmd_commensurable(r1, mat1, l1, r2, mat2s, l2);
        if (symmetry->parsed()) return cmd_symmetry(mat, sym_format);
        if (reduce->parsed()) return cmd_reduce(mat, format);
        if (gens->parsed()) return cmd_lattice_gens(r, mat, l);
        return cmd_selftest();
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
}
