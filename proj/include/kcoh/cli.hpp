#pragma once

#include "kcoh/io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kcoh {

struct Verdict {
    std::string name;
    bool pass = true;
    std::optional<std::string> witness;  // compact description of the first failure
};

/// Result of one CLI run.  The structured rendering is a pure function of
/// the input documents, flags and seed; wall-clock timing appears only in
/// the text rendering so structured reports stay byte-stable.
struct ReportDocument {
    std::string command;
    std::map<std::string, std::string> inputs;  // flag echo; file flags as basenames
    std::uint64_t seed = 1;
    std::map<std::string, std::string> results;
    std::vector<Verdict> verdicts;
    double elapsed_ms = 0.0;

    bool pass() const;
};

struct CliOptions {
    std::string command;
    std::optional<std::string> graph;
    std::vector<std::string> phi;  // class-equal compares two; others use the first
    std::optional<std::string> coeff;
    int upto = 2;
    std::uint64_t seed = 1;
    int triples = 500;
    int bound = 2;
    std::string format = "text";
};

/// Executes one subcommand against its documents.  Malformed inputs throw;
/// failed mathematical verdicts are reported, not thrown.
ReportDocument run_command(const CliOptions& opt);

/// "structured": canonical JSON.  "text": human-readable lines with timing.
std::string emit_report(const ReportDocument& rep, const std::string& format);

/// Full dispatch: parse argv, run, print the report.  Returns 0 when every
/// verdict passed, 1 when some verdict failed, 2 on any error.
int cli_main(int argc, char** argv);

}  // namespace kcoh
