// jcth — batch front-end: executes declarative run configs, the built-in
// verification battery, and writes JSON reports plus CSV spectrum tables.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "jcth/io.hpp"
#include "jcth/selfcheck.hpp"

namespace fs = std::filesystem;

namespace {

void list_models() {
    std::cout << "model kinds:\n";
    for (jcth::models::ModelKind k :
         {jcth::models::ModelKind::jc_resonant, jcth::models::ModelKind::jc_nonresonant,
          jcth::models::ModelKind::generalized, jcth::models::ModelKind::dressed,
          jcth::models::ModelKind::tcm_pauli, jcth::models::ModelKind::tcm_fermionic})
        std::cout << "  " << jcth::models::kind_name(k) << "\n";
    std::cout << "coupling forms (generalized): identity_jc intensity_dependent kerr "
                 "multiphoton q_oscillator\n";
    std::cout << "checks: superalgebra pseudoherm quasiherm spectrum_reality closed_form "
                 "biortho eta_gram conjecture_etaN shapeinv_grid\n";
    std::cout << "shape-invariant families:";
    for (const auto& f : jcth::shapeinv::catalog()) std::cout << " " << f.name;
    std::cout << "\n";
}

int do_self_check(const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    jcth::selfcheck::SelfCheckReport report = jcth::selfcheck::run_all(&std::cout);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fs::create_directories(out_dir);
    jcth::io::write_text((out_dir / "selfcheck_report.json").string(),
                         jcth::selfcheck::report_json(report).dump(2) + "\n");
    jcth::io::emit_spectrum_csv(report.benchmark_spectrum,
                                (out_dir / "selfcheck_spectrum.csv").string());
    std::cout << (report.all_passed ? "all criteria passed" : "FAILURES present") << "  ["
              << std::fixed << std::setprecision(1) << secs << " s total]\n";
    return report.all_passed ? 0 : 1;
}

int do_run(const std::string& config_path, const fs::path& out_dir,
           std::optional<double> tol_real, std::optional<double> tol_pair,
           std::optional<long> max_dim) {
    jcth::io::RunConfig cfg = jcth::io::load_config(config_path);
    if (max_dim) cfg.max_dim = *max_dim;
    for (auto& run : cfg.runs) {
        if (tol_real) run.tols.tol_real = *tol_real;
        if (tol_pair) run.tols.tol_pair = *tol_pair;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const jcth::io::RunReport report = jcth::io::run(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(out_dir);
    jcth::io::write_text((out_dir / "report.json").string(),
                         jcth::io::report_json(report).dump(2) + "\n");
    for (const auto& run : report.runs) {
        if (run.spectrum)
            jcth::io::emit_spectrum_csv(*run.spectrum, (out_dir / (run.name + ".csv")).string());
        std::cout << (run.passed ? "PASS" : "FAIL") << "  " << run.name << "\n";
    }
    std::cout << (report.all_passed ? "all runs passed" : "FAILURES present") << "  ["
              << std::fixed << std::setprecision(2) << secs << " s]\n";
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-Hermitian coupled-operator spectrum laboratory"};
    app.require_subcommand(0, 1);

    std::string out_dir = ".";
    std::optional<double> tol_real, tol_pair;
    std::optional<long> max_dim;
    bool flag_list = false, flag_self_check = false;
    app.add_option("--out", out_dir, "output directory for reports and CSV tables");
    app.add_option("--tol-real", tol_real, "override reality tolerance for all runs");
    app.add_option("--tol-pair", tol_pair, "override conjugate-pairing tolerance");
    app.add_option("--max-dim", max_dim, "override the matrix dimension cap");
    app.add_flag("--list-models", flag_list, "list model kinds, checks and families");
    app.add_flag("--self-check", flag_self_check, "run the built-in verification battery");

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a JSON run config");
    run_cmd->add_option("config", config_path, "path to the config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (flag_list) {
            list_models();
            return 0;
        }
        if (flag_self_check) return do_self_check(out_dir);
        if (run_cmd->parsed()) return do_run(config_path, out_dir, tol_real, tol_pair, max_dim);
        std::cerr << app.help();
        return 2;
    } catch (const jcth::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
