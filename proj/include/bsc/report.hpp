#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsc {

using json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped, consistent, refuted };

std::string to_string(Status s);

struct CheckResult {
    std::string name;
    std::string anchor;  ///< the identity or statement being certified
    Status status = Status::skipped;
    json witness;        ///< null when there is nothing to report
    std::int64_t elapsed_ms = 0;

    bool passed() const noexcept { return status == Status::pass; }
    bool failed() const noexcept { return status == Status::fail; }
};

CheckResult make_result(std::string name, std::string anchor, bool ok, json witness = nullptr);
CheckResult make_skipped(std::string name, std::string anchor, std::string reason);

json to_json(const CheckResult& r, bool with_timing);
/// Inverse of to_json; throws json::exception on malformed input.
CheckResult result_from_json(const json& j);
Status status_from_string(const std::string& s);

/// Finds a result by name; nullptr if absent.
const CheckResult* find_result(const std::vector<CheckResult>& results, const std::string& name);

/// Accumulates named sub-checks of one report entry and their witnesses.
class CheckBuilder {
public:
    CheckBuilder(std::string name, std::string anchor) : name_(std::move(name)), anchor_(std::move(anchor)) {}

    /// Records a sub-condition; failures keep the first few witnesses.
    void require(bool ok, const json& witness);
    void note(const std::string& key, json value) { notes_[key] = std::move(value); }

    bool ok() const noexcept { return ok_; }
    CheckResult finish() const;

private:
    std::string name_;
    std::string anchor_;
    bool ok_ = true;
    json failures_ = json::array();
    json notes_ = json::object();
};

}  // namespace bsc
