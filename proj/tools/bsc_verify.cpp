#include "bsc/parallel.hpp"
#include "bsc/runner.hpp"
#include "bsc/s_model.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

void write_json(const bsc::json& j, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of the balanced set condition on bilinear forms graphs"};
    bsc::RunConfig c;
    std::string pair = "canonical", checks = "all", report, cross = "memory", export_tables, export_model;
    std::string cache_dir;
    std::vector<std::string> perturb;
    bool list = false;
    int threads = 0;

    app.add_option("--q", c.q, "field size (odd prime)");
    app.add_option("--D", c.D, "diameter");
    app.add_option("--N", c.N, "N > 2D");
    app.add_option("--k", c.k, "distance between x and y, 2..D-1");
    app.add_option("--pair", pair, "canonical | random | explicit")->check(CLI::IsMember({"canonical", "random", "explicit"}));
    app.add_option("--x", c.x_text, "explicit x, rows separated by ';'");
    app.add_option("--y", c.y_text, "explicit y, rows separated by ';'");
    app.add_option("--seed", c.seed, "seed for random pairs and sampled checks");
    app.add_option("--checks", checks, "comma-separated check or group names, or all");
    app.add_flag("--heavy", c.heavy, "enable brute-force triple sums over all vertices");
    app.add_option("--n-max-words", c.n_max_words, "longest word length for the word check");
    app.add_option("--threads", threads, "worker threads (default: BSC_THREADS or hardware)");
    app.add_option("--cache-dir", cache_dir, "cache directory (default: BSC_CACHE_DIR)");
    app.add_option("--report", report, "write the JSON report here (default: stdout)");
    app.add_option("--cross-table", cross, "memory | recompute")->check(CLI::IsMember({"memory", "recompute"}));
    app.add_flag("--list-checks", list, "list the check catalog and exit");
    app.add_option("--export-tables", export_tables, "write the closed-form tables as JSON and exit");
    app.add_option("--export-model", export_model, "write the S-model as JSON and exit");
    app.add_option("--perturb", perturb, "TABLE:i:j:delta, perturb a closed-form table entry (repeatable)");
    app.add_flag("--timings", c.timings, "include elapsed_ms per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list) {
        std::cout << bsc::list_checks();
        return 0;
    }

    c.pair_mode = pair == "random" ? bsc::PairMode::random
                  : pair == "explicit" ? bsc::PairMode::explicit_pair
                                       : bsc::PairMode::canonical;
    c.cross_mode = cross == "recompute" ? bsc::CrossTableMode::recompute : bsc::CrossTableMode::memory;
    c.threads = threads > 0 ? threads : bsc::default_thread_count();
    if (cache_dir.empty())
        if (const char* env = std::getenv("BSC_CACHE_DIR")) cache_dir = env;
    c.cache_dir = cache_dir;
    c.checks.clear();
    for (const auto& part : CLI::detail::split(checks, ','))
        if (!part.empty()) c.checks.push_back(CLI::detail::trim_copy(part));

    try {
        for (const auto& p : perturb) c.perturbations.push_back(bsc::parse_perturbation(p));
        bsc::validate_config(c);
        if (!export_tables.empty() || !export_model.empty()) {
            bsc::ClosedForms cf = bsc::evaluate_closed_forms({c.q, c.D, c.N}, c.k);
            for (const auto& p : c.perturbations) bsc::apply_perturbation(cf, p);
            if (!export_tables.empty()) write_json(bsc::export_closed_forms(cf), export_tables);
            if (!export_model.empty()) write_json(bsc::export_s_model(bsc::build_s_model(cf)), export_model);
            return 0;
        }
        const auto outcome = bsc::run(c, [](const std::string& s) { std::cerr << "[bsc] " << s << '\n'; });
        write_json(outcome.report, report);
        const auto& s = outcome.report["summary"];
        std::cerr << "[bsc] pass " << s["pass"] << ", fail " << s["fail"] << ", skipped " << s["skipped"]
                  << ", consistent " << s["consistent"] << ", refuted " << s["refuted"] << '\n';
        return outcome.exit_code;
    } catch (const bsc::ConfigError& e) {
        std::cerr << "bsc-verify: " << e.what() << '\n';
        return 2;
    } catch (const bsc::InvalidParameters& e) {
        std::cerr << "bsc-verify: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "bsc-verify: internal error: " << e.what() << '\n';
        return 3;
    }
}
