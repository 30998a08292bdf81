#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbitcert {

enum class Status { Pass, Fail, PreconditionFailure, TheoremViolation };

/// Outcome of a verification. `values` keeps insertion order so reports
/// serialize identically on every run.
struct Report {
    Status status = Status::Pass;
    std::string verdict = "PASS";
    std::vector<std::pair<std::string, long long>> values;
    std::vector<std::string> details;

    bool passed() const { return status == Status::Pass; }

    void set(const std::string& name, long long v) {
        for (auto& [k, x] : values)
            if (k == name) {
                x = v;
                return;
            }
        values.emplace_back(name, v);
    }

    std::optional<long long> get(const std::string& name) const {
        for (const auto& [k, x] : values)
            if (k == name) return x;
        return std::nullopt;
    }

    void fail(std::string why) {
        if (status == Status::Pass) {
            status = Status::Fail;
            verdict = "FAIL";
        }
        details.push_back(std::move(why));
    }

    void precondition(std::string why) {
        if (status != Status::TheoremViolation) {
            status = Status::PreconditionFailure;
            verdict = "PRECONDITION-FAILURE";
        }
        details.push_back(std::move(why));
    }

    void violation(std::string why) {
        status = Status::TheoremViolation;
        verdict = "THEOREM-VIOLATION";
        details.push_back(std::move(why));
    }
};

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::PreconditionFailure: return "precondition-failure";
        case Status::TheoremViolation: return "theorem-violation";
    }
    return "?";
}

}  // namespace orbitcert
