#pragma once

#include <string>

#include "diffquat/certificate.hpp"
#include "diffquat/problem.hpp"

namespace diffquat {

struct CliFlags {
    int n_max = 16;
    int degree_bound = 4;
    long budget = 10000;
    bool json = false;
    bool require_both_conditions = false; // conjunction mode for the nonsplit test
    std::string out_path;
};

// exit code 0: success / positive verdict (status may still be "inconclusive")
// exit code 1: verification failure / negative verdict
// exit code 2: usage or input error
struct CommandResult {
    int exit_code = 0;
    std::string output; // what the CLI prints (human text, or JSON with --json)
};

CommandResult run_split(const ProblemSpec& spec, const CliFlags& flags);
CommandResult run_verify(const std::string& certificate_path, const CliFlags& flags);
CommandResult run_riccati(const ProblemSpec& spec, const CliFlags& flags);
CommandResult run_standard(const ProblemSpec& spec, const CliFlags& flags);
CommandResult run_criteria(const ProblemSpec& spec, const CliFlags& flags);

// cmd in {split, verify, riccati, standard, criteria}; path is a problem file
// (or a certificate file for verify). Unknown commands and unreadable inputs
// exit with code 2.
CommandResult run_command(const std::string& cmd, const std::string& path, const CliFlags& flags);

} // namespace diffquat
