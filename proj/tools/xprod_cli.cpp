// xprod: batch front-end over the crossed-product library.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 for
// usage, parse and input errors, 3 for internal errors.

#include "CLI11.hpp"
#include "commands.hpp"

#include <fstream>
#include <iostream>

using namespace xprod;
using namespace xprod::cli;

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with abelian crossed products, unitary involutions and SK1"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, report_path;
    std::uint64_t seed = 1;
    int bound_degree = 0;
    bool machine = false;
    app.add_option("--config", config_path, "instance configuration file");
    app.add_option("--seed", seed, "seed for random instances")->capture_default_str();
    app.add_option("--bound-degree", bound_degree, "largest algebra degree to accept (default from config, else 8)")
        ->check(CLI::Range(1, 16));
    app.add_option("--report", report_path, "write the JSON report to this path");
    app.add_flag("--machine-readable", machine, "print the JSON report instead of text");

    Options opt;
    auto* validate = app.add_subcommand("validate", "crossed-product relations and unitary conditions");
    auto* multiply = app.add_subcommand("multiply", "associativity on basis monomials and the product a*b");
    auto* decompose = app.add_subcommand("decompose", "inertial times DSR decomposition");
    auto* cohomology = app.add_subcommand("cohomology", "Tate cohomology, twist, Shapiro and the long exact sequence");
    auto* sk1 = app.add_subcommand("sk1", "finite-model SK1 evaluators");
    auto* examples = app.add_subcommand("examples", "built-in example regressions");
    examples->add_option("--name", opt.name, "symbol, unitary-symbol, biquaternion, cyclic-dsr, cyclicex, noninjex");
    examples->add_option("--n", opt.n, "symbol degree parameter")->capture_default_str();
    auto* verify_g = app.add_subcommand("verify-g", "identities of the g-cocycle with certified witnesses");
    verify_g->add_option("--name", opt.name, "example to use instead of the config");
    verify_g->add_option("--bound", opt.g_bound, "entry bound of the determinant table")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    auto* diagram = app.add_subcommand("diagram", "the non-injectivity diagram on bicyclic data");
    diagram->add_option("--count", opt.count, "random instances when the config gives none")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    auto* run = app.add_subcommand("run", "the stages listed in the config's [pipeline]");

    CLI11_PARSE(app, argc, argv);

    auto* sub = app.get_subcommands().front();
    Report report;
    report.command = sub->get_name();
    report.seed = seed;
    opt.seed = seed;
    try {
        std::optional<Config> cfg;
        if (!config_path.empty()) cfg = load_config(config_path, seed);
        opt.degree_bound = bound_degree ? bound_degree : (cfg ? cfg->degree_bound : 8);
        auto need = [&]() -> const Config& {
            if (!cfg) throw UsageError(sub->get_name() + " needs --config");
            return *cfg;
        };
        if (sub == validate) validate_command(need(), opt, report);
        if (sub == multiply) multiply_command(need(), opt, report);
        if (sub == decompose) decompose_command(need(), opt, report);
        if (sub == cohomology) cohomology_command(need(), opt, report);
        if (sub == sk1) sk1_command(need(), opt, report);
        if (sub == examples) examples_command(opt, report);
        if (sub == verify_g) verify_g_command(cfg, opt, report);
        if (sub == diagram) diagram_command(cfg, opt, report);
        if (sub == run) run_command(need(), opt, report);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }

    auto j = report.json();
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "error: cannot write '" << report_path << "'\n";
            return 2;
        }
        out << j.dump(2) << "\n";
    }
    if (machine)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << report.text();
    return report.ok() ? 0 : 1;
}
