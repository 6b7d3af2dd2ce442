#pragma once
// Subcommands of the xprod tool. Each one appends itemized checks and
// exact values to a Report; a check id is the stable identifier of the
// relation it tests.

#include "config.hpp"
#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xprod::cli {

struct Check {
    std::string id;
    bool ok = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    nlohmann::ordered_json values = nlohmann::ordered_json::object();

    void check(std::string id, bool ok, std::string detail = {});
    bool ok() const;
    std::size_t failures() const;
    // deterministic for fixed inputs: no timings, ordered keys
    nlohmann::ordered_json json() const;
    std::string text() const;
};

struct Options {
    std::uint64_t seed = 1;
    int degree_bound = 8;
    std::string name;  // example name, empty for all
    int n = 2;         // symbol degree parameter
    int count = 20;    // random instances for diagram
    int g_bound = 2;   // entry bound for the determinant table
};

// Thrown when the command lacks the input it needs (exit status 2 like a
// parse error, as opposed to a failed check).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate_command(const Config& cfg, const Options& opt, Report& r);
void multiply_command(const Config& cfg, const Options& opt, Report& r);
void decompose_command(const Config& cfg, const Options& opt, Report& r);
void cohomology_command(const Config& cfg, const Options& opt, Report& r);
void sk1_command(const Config& cfg, const Options& opt, Report& r);
void examples_command(const Options& opt, Report& r);
void verify_g_command(const std::optional<Config>& cfg, const Options& opt, Report& r);
void diagram_command(const std::optional<Config>& cfg, const Options& opt, Report& r);
// the stages listed in [pipeline], in order; an empty list is a no-op
void run_command(const Config& cfg, const Options& opt, Report& r);

}  // namespace xprod::cli
