#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <llg/session.hpp>

namespace {

void add_common(CLI::App* cmd, llg::SessionConfig& cfg) {
    auto* input = cmd->add_option("--input", cfg.input_path, "input file (group, splitting or algebra)");
    cmd->add_option("--builtin", cfg.builtin_name,
                    "builtin input: abelian:n, heisenberg3, affine2, uppertriangular3, sl2-constants")
        ->excludes(input);
    cmd->add_option("--seed", cfg.seed, "base seed for randomized checks");
    cmd->add_option("--trials", cfg.trials, "sample points per randomized check")
        ->check(CLI::PositiveNumber);
    std::string mode = "exact";
    cmd->add_option_function<std::string>(
           "--mode",
           [&cfg](const std::string& m) { cfg.float_mode = m == "float"; },
           "evaluation mode: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tol", cfg.tol, "relative tolerance in float mode");
    cmd->add_option("--out", cfg.out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_flag("--timings", cfg.timings, "include per-check timings in the report");
    cmd->add_option("--threads", cfg.threads, "worker threads for running checks")
        ->check(CLI::PositiveNumber);
}

int emit(const llg::Report& rep, const llg::SessionConfig& cfg) {
    std::string text =
        cfg.format == "markdown" ? rep.to_markdown() : rep.to_json().dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) {
            std::cerr << "error: cannot write " << cfg.out_path << "\n";
            return 2;
        }
        out << text;
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for local group charts: splittings, connections,\n"
                 "horizontal differentials, invariance operators and cohomology"};
    app.require_subcommand(1);
    llg::SessionConfig cfg;

    auto* check = app.add_subcommand("check", "verify group and splitting axioms");
    add_common(check, cfg);

    auto* derive = app.add_subcommand("derive", "derive geometric data from the input");
    derive->add_option("--what", cfg.what,
                       "gamma, torsion, curvature, frame, structure-constants or epsilon-hat")
        ->required();
    add_common(derive, cfg);

    auto* coh = app.add_subcommand("cohomology", "cohomology of an invariant complex");
    coh->add_option("--complex", cfg.complex_name, "ilhc, hat35, biinv36 or ilhdc-row");
    coh->add_option("--coefficients", cfg.coefficients,
                    "trivial, adjoint, coadjoint, tensor:R,S or power:M");
    coh->add_option("--max-degree", cfg.max_degree, "truncate the table at this degree");
    add_common(coh, cfg);

    auto* op = app.add_subcommand("op", "apply an operator to a form file");
    op->add_option("--apply", cfg.apply, "dhat, dtilde, delta or linearize")->required();
    op->add_option("--form", cfg.form_path, "form file to read")->required();
    add_common(op, cfg);

    auto* verify = app.add_subcommand("verify", "run a suite of randomized identity checks");
    verify->add_option("--suite", cfg.suite, "all, eq2, chain, double or invariance");
    add_common(verify, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return emit(llg::run_session(cfg), cfg);
    } catch (const llg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
