#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "loggamma/scaling.hpp"

namespace loggamma {

using json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Infeasible };

const char* status_name(Status s);

// Outcome of one identity or inequality check. For inequalities lhs is the
// worst margin found (negative means violated) and rhs is zero.
struct IdentityReport {
    std::string identity;
    json params = json::object();
    double lhs = 0;
    double rhs = 0;
    double abs_gap = 0;
    double rel_gap = 0;
    double tolerance = 0;
    Status status = Status::Fail;

    bool passed() const { return status != Status::Fail; }
    json to_json() const;
};

// Equality check at relative tolerance `tol`. Both sides -inf is reported
// as infeasible; exactly one side -inf fails.
IdentityReport equality_report(std::string identity, json params, double lhs, double rhs, double tol);

// Inequality check: `worst_margin` is min over samples of (rhs - lhs), and the
// check passes iff worst_margin >= -slack.
IdentityReport inequality_report(std::string identity, json params, double worst_margin, std::size_t violations,
                                 std::size_t samples, double slack);

// Combined report: passes iff every part passes; gaps are the maxima.
IdentityReport combine_reports(std::string identity, json params, const std::vector<IdentityReport>& parts);

// Non-finite doubles become the strings "inf", "-inf" or "nan".
json number(double v);

json to_json(const ThetaConstants& c);

const char* version_string();
std::string config_hash(const json& config);

}  // namespace loggamma
