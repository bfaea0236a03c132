#include <doctest.h>

#include "bsc/runner.hpp"

#include <filesystem>
#include <set>

using namespace bsc;

namespace {

const RunOutcome& full_run()
{
    static const RunOutcome o = [] {
        RunConfig c;
        c.heavy = true;
        return run(c);
    }();
    return o;
}

}  // namespace

TEST_CASE("the catalog lists every check a full run produces, with the same anchors and groups")
{
    const auto& o = full_run();
    std::set<std::string> produced;
    for (const auto& r : o.results) {
        produced.insert(r.name);
        const CatalogEntry* e = nullptr;
        for (const auto& c : check_catalog())
            if (c.name == r.name) e = &c;
        INFO(r.name);
        REQUIRE(e != nullptr);
        CHECK(e->anchor == r.anchor);
        CHECK_FALSE(r.anchor.empty());
    }
    CHECK(produced.size() == check_catalog().size());
    std::set<std::string> names;
    for (const auto& c : check_catalog()) CHECK(names.insert(c.name).second);
}

TEST_CASE("list_checks contains the headline checks")
{
    const std::string s = list_checks();
    CHECK(s.find("thm-bbalanced") != std::string::npos);
    CHECK(s.find("prop-omega-eigen") != std::string::npos);
    CHECK(s.find("conj-sym-star-sym (exploratory)") != std::string::npos);
}

TEST_CASE("a full run at (3,3,7), k = 2 passes with at least 40 checks")
{
    const auto& o = full_run();
    CHECK(o.exit_code == 0);
    CHECK(o.report["summary"]["pass"].get<int>() >= 40);
    CHECK(o.report["summary"]["fail"].get<int>() == 0);
    CHECK(o.report["library_version"] == kLibraryVersion);
    const auto& conj = o.report["checks"].back();
    CHECK(conj["name"] == "conj-sym-star-sym");
    CHECK(conj["status"] == "consistent");
}

TEST_CASE("the default run leaves heavy mode out")
{
    RunConfig c;
    c.checks = {"all"};
    c.n_max_words = 4;
    const auto o = run(c);
    for (const auto& r : o.results) CHECK(r.name.rfind("heavy-", 0) != 0);
}

TEST_CASE("invalid configurations are rejected before any work")
{
    RunConfig c;
    c.k = 3;
    CHECK_THROWS_AS(run(c), ConfigError);
    c = RunConfig{};
    c.q = 2;
    CHECK_THROWS_AS(run(c), ConfigError);
    c = RunConfig{};
    c.N = 6;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = RunConfig{};
    c.checks = {"no-such-check"};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = RunConfig{};
    c.pair_mode = PairMode::explicit_pair;
    c.x_text = "0000;0000;0000";
    c.y_text = "1000;0000;0000";  // distance 1, not k
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.y_text = "1000;0100;0000";
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("reports are byte-identical across thread counts and cache use")
{
    const auto dir = std::filesystem::temp_directory_path() / "bsc-runner-test-cache";
    std::filesystem::remove_all(dir);
    RunConfig c;
    c.checks = {"local", "e", "s-model-faithful"};
    c.pair_mode = PairMode::random;
    c.seed = 11;
    c.threads = 1;
    const std::string a = run(c).report.dump();
    c.threads = 3;
    c.cache_dir = dir;
    const std::string b = run(c).report.dump();
    const std::string cached = run(c).report.dump();
    CHECK(a == b);
    CHECK(a == cached);
    std::filesystem::remove_all(dir);
}

TEST_CASE("selection by name and by group")
{
    RunConfig c;
    c.checks = {"thm-bbalanced", "params"};
    c.n_max_words = 6;
    const auto o = run(c);
    bool saw_word = false;
    for (const auto& r : o.results) {
        saw_word = saw_word || r.name == "thm-bbalanced";
        CHECK((r.name == "thm-bbalanced" || r.name.rfind("params-", 0) == 0 || r.name.rfind("cf-", 0) == 0));
    }
    CHECK(saw_word);
}

TEST_CASE("a perturbed table fails the run with a witness")
{
    RunConfig c;
    c.checks = {"params", "s", "norton"};
    c.perturbations = {parse_perturbation("mu:3:1")};
    const auto o = run(c);
    CHECK(o.exit_code == 1);
    int with_witness = 0;
    for (const auto& r : o.results) with_witness += r.failed() && !r.witness.is_null();
    CHECK(with_witness > 0);
}

TEST_CASE("timings appear only on request")
{
    RunConfig c;
    c.checks = {"params"};
    CHECK_FALSE(run(c).report["checks"][0].contains("elapsed_ms"));
    c.timings = true;
    CHECK(run(c).report["checks"][0].contains("elapsed_ms"));
}

TEST_CASE("closed-form export uses exact strings")
{
    const json j = export_closed_forms(evaluate_closed_forms({3, 3, 7}, 2));
    CHECK(j["lambda"][3] == "72/1");
    CHECK(j["C"][5][5] == "87/1");
    CHECK(j["vertex_count"] == "531441");
}
