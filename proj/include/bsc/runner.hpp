#pragma once

// Check registry and run orchestration behind the bsc-verify command line.

#include "bsc/local.hpp"
#include "bsc/params.hpp"
#include "bsc/report.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace bsc {

inline constexpr const char* kLibraryVersion = "1.0.0";

enum class PairMode { canonical, random, explicit_pair };

struct RunConfig {
    int q = 3, D = 3, N = 7, k = 2;
    PairMode pair_mode = PairMode::canonical;
    std::uint64_t seed = 1;
    std::string x_text, y_text;  ///< rows separated by ';', used with PairMode::explicit_pair
    std::vector<std::string> checks{"all"};
    bool heavy = false;
    int n_max_words = 10;
    int threads = 1;
    std::filesystem::path cache_dir;  ///< empty: no caching
    CrossTableMode cross_mode = CrossTableMode::memory;
    bool timings = false;
    std::vector<Perturbation> perturbations;
};

struct CatalogEntry {
    std::string name;
    std::string group;  ///< params, bfs, local, e, s, norton, heavy
    std::string anchor;
    bool exploratory = false;
};

const std::vector<CatalogEntry>& check_catalog();
/// "name  anchor" lines; exploratory probes carry the suffix " (exploratory)".
std::string list_checks();

/// Thrown for configurations rejected before any work (exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void validate_config(const RunConfig& c);

struct RunOutcome {
    std::vector<CheckResult> results;
    json report;
    int exit_code = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs the selected checks in dependency order and builds the report.
/// Throws ConfigError for an invalid configuration.
RunOutcome run(const RunConfig& c, const ProgressFn& progress = {});

json report_json(const RunConfig& c, const std::vector<CheckResult>& results);
json export_closed_forms(const ClosedForms& cf);

}  // namespace bsc
