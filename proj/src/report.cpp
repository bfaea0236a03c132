#include "bsc/report.hpp"

#include <stdexcept>

namespace bsc {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::consistent: return "consistent";
    case Status::refuted: return "refuted";
    }
    return "unknown";
}

CheckResult make_result(std::string name, std::string anchor, bool ok, json witness)
{
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.status = ok ? Status::pass : Status::fail;
    r.witness = std::move(witness);
    return r;
}

CheckResult make_skipped(std::string name, std::string anchor, std::string reason)
{
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.status = Status::skipped;
    r.witness = json{{"reason", std::move(reason)}};
    return r;
}

json to_json(const CheckResult& r, bool with_timing)
{
    json j;
    j["name"] = r.name;
    j["anchor"] = r.anchor;
    j["status"] = to_string(r.status);
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

Status status_from_string(const std::string& s)
{
    for (Status st : {Status::pass, Status::fail, Status::skipped, Status::consistent, Status::refuted})
        if (to_string(st) == s) return st;
    throw std::invalid_argument("unknown status " + s);
}

CheckResult result_from_json(const json& j)
{
    CheckResult r;
    r.name = j.at("name").get<std::string>();
    r.anchor = j.at("anchor").get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    if (j.contains("witness")) r.witness = j["witness"];
    if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<std::int64_t>();
    return r;
}

const CheckResult* find_result(const std::vector<CheckResult>& results, const std::string& name)
{
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

void CheckBuilder::require(bool ok, const json& witness)
{
    if (ok) return;
    ok_ = false;
    if (failures_.size() < 8) failures_.push_back(witness);
}

CheckResult CheckBuilder::finish() const
{
    json w = notes_;
    if (!ok_) w["failures"] = failures_;
    return make_result(name_, anchor_, ok_, w.empty() ? json(nullptr) : w);
}

}  // namespace bsc
