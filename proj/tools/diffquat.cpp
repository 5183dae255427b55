#include <iostream>

#include "CLI11.hpp"

#include "diffquat/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"differential splitting certificates for quaternion algebras over Q(t)"};
    app.require_subcommand(1);

    diffquat::CliFlags flags;
    std::string path;

    auto add_common = [&](CLI::App* sub, bool wants_problem) {
        sub->add_option("path", path,
                        wants_problem ? "problem file" : "certificate JSON file")
            ->required();
        sub->add_option("--n-max", flags.n_max, "maximal radical index to search");
        sub->add_option("--degree-bound", flags.degree_bound, "witness degree bound");
        sub->add_option("--budget", flags.budget, "candidate cap for searches");
        sub->add_flag("--json", flags.json, "emit a JSON document on stdout");
        sub->add_option("--out", flags.out_path, "write the JSON document to a file");
        sub->add_flag("--require-both-conditions", flags.require_both_conditions,
                      "non-splitting test requires both degree and square-factor conditions");
    };

    CLI::App* split = app.add_subcommand("split", "construct and verify a splitting certificate");
    add_common(split, true);
    CLI::App* verify = app.add_subcommand("verify", "check a certificate file");
    add_common(verify, false);
    CLI::App* riccati = app.add_subcommand("riccati", "build and solve the splitting Riccati equation");
    add_common(riccati, true);
    CLI::App* standard = app.add_subcommand("standard", "standard-derivation analysis");
    add_common(standard, true);
    CLI::App* criteria = app.add_subcommand("criteria", "finite-splitting and non-splitting criteria");
    add_common(criteria, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string cmd;
    for (CLI::App* sub : {split, verify, riccati, standard, criteria})
        if (sub->parsed()) cmd = sub->get_name();

    diffquat::CommandResult res = diffquat::run_command(cmd, path, flags);
    std::cout << res.output;
    return res.exit_code;
}
