// Command-line front end: Lie-theoretic sanity tables, curve inspection,
// cubic evaluation, period matrices and the end-to-end kappa verification.
//
// Exit codes: 0 = success / verification PASS, 2 = verification FAIL,
// 1 = any error (bad input, non-generic curve, numerical failure).

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hitchin/json_io.hpp"

namespace {

using hitchin::json_io::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hitchin::InvalidInput("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw hitchin::InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

void emit(const json& rep, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << rep.dump(2) << std::endl;
    } else {
        std::ofstream out(out_path);
        out << rep.dump(2) << std::endl;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Donagi-Markman cubics of SL2 Hitchin systems: residue formulas "
                 "cross-checked against a numerical Gauss-Manin period oracle"};
    app.require_subcommand(1);

    std::string type_name, input_path, out_path, form = "both";
    int samples = 100;
    unsigned seed = 1;

    auto* lie = app.add_subcommand("lie-check", "root system / Weyl group identities");
    lie->add_option("--type", type_name, "Cartan type (A1..A4, B2, B3, C2, C3, D4, G2)")
        ->required();
    lie->add_option("--out", out_path, "write report here instead of stdout");

    auto* adj = app.add_subcommand("adjoint-check", "Jacobian factorization of the adjoint quotient");
    adj->add_option("--type", type_name, "Cartan type")->required();
    adj->add_option("--samples", samples, "number of regular sample points");
    adj->add_option("--seed", seed, "RNG seed");
    adj->add_option("--out", out_path, "write report here instead of stdout");

    auto* info = app.add_subcommand("curve-info", "genus, branch points, genericity verdict");
    info->add_option("--input", input_path, "curve spec JSON")->required();
    info->add_option("--out", out_path, "write report here instead of stdout");

    auto* cub = app.add_subcommand("cubic", "evaluate the cubic in the leaf basis");
    cub->add_option("--input", input_path, "curve spec JSON")->required();
    cub->add_option("--form", form, "A (discriminant form), B (root-sum form), or both")
        ->check(CLI::IsMember({"A", "B", "both"}));
    cub->add_option("--out", out_path, "write report here instead of stdout");

    auto* per = app.add_subcommand("periods", "A/B periods and normalized period matrix");
    per->add_option("--input", input_path, "curve spec JSON")->required();
    per->add_option("--out", out_path, "write report here instead of stdout");

    auto* ver = app.add_subcommand("verify", "finite-difference period derivative vs cubic");
    ver->add_option("--input", input_path, "verification config JSON")->required();
    ver->add_option("--out", out_path, "write report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lie->parsed()) {
            auto t = hitchin::rootsys::CartanType::parse(type_name);
            emit(hitchin::json_io::lie_check_report(t), out_path);
            return 0;
        }
        if (adj->parsed()) {
            auto t = hitchin::rootsys::CartanType::parse(type_name);
            hitchin::adjoint::InvariantSet inv(t);
            auto rep = hitchin::adjoint::verify_chevalley(inv, inv.root_system(), samples, seed);
            emit(hitchin::json_io::discriminant_report_json(rep), out_path);
            return 0;
        }
        if (info->parsed()) {
            auto spec = hitchin::json_io::curve_spec_from_json(load_json(input_path));
            emit(hitchin::json_io::curve_info_report(spec), out_path);
            return 0;
        }
        if (cub->parsed()) {
            auto spec = hitchin::json_io::curve_spec_from_json(load_json(input_path));
            emit(hitchin::json_io::cubic_report(spec, form), out_path);
            return 0;
        }
        if (per->parsed()) {
            auto spec = hitchin::json_io::curve_spec_from_json(load_json(input_path));
            emit(hitchin::json_io::periods_report(spec), out_path);
            return 0;
        }
        if (ver->parsed()) {
            auto cfg = hitchin::json_io::config_from_json(load_json(input_path));
            auto rep = hitchin::harness::verify(cfg);
            emit(hitchin::json_io::kappa_report_json(rep), out_path);
            return rep.pass ? 0 : 2;
        }
    } catch (const hitchin::GenericityViolation& e) {
        std::cerr << "error: GenericityViolation(" << hitchin::to_string(e.kind) << "): "
                  << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
