#include "loggamma/report.hpp"

#include <cmath>

#include "loggamma/hash.hpp"
#include "loggamma/logspace.hpp"

#ifndef LOGGAMMA_VERSION
#define LOGGAMMA_VERSION "0.1.0"
#endif

namespace loggamma {

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Infeasible: return "INFEASIBLE";
    }
    return "FAIL";
}

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json IdentityReport::to_json() const {
    json j;
    j["identity"] = identity;
    j["params"] = params;
    j["lhs"] = number(lhs);
    j["rhs"] = number(rhs);
    j["abs_gap"] = number(abs_gap);
    j["rel_gap"] = number(rel_gap);
    j["tolerance"] = tolerance;
    j["status"] = status_name(status);
    return j;
}

IdentityReport equality_report(std::string identity, json params, double lhs, double rhs, double tol) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    if (lhs == kNegInf && rhs == kNegInf) {
        r.status = Status::Infeasible;
        return r;
    }
    r.abs_gap = std::fabs(lhs - rhs);
    r.rel_gap = relative_gap(lhs, rhs);
    r.status = (std::isfinite(r.rel_gap) && r.rel_gap <= tol) ? Status::Pass : Status::Fail;
    return r;
}

IdentityReport inequality_report(std::string identity, json params, double worst_margin, std::size_t violations,
                                 std::size_t samples, double slack) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    r.params["samples"] = samples;
    r.params["violations"] = violations;
    r.lhs = worst_margin;
    r.rhs = 0.0;
    r.abs_gap = worst_margin < 0 ? -worst_margin : 0.0;
    r.rel_gap = r.abs_gap;
    r.tolerance = slack;
    r.status = (violations == 0 && !(worst_margin < -slack)) ? Status::Pass : Status::Fail;
    return r;
}

IdentityReport combine_reports(std::string identity, json params, const std::vector<IdentityReport>& parts) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    json sub = json::array();
    bool ok = true;
    for (const auto& p : parts) {
        sub.push_back(p.to_json());
        ok = ok && p.passed();
        r.abs_gap = std::max(r.abs_gap, p.abs_gap);
        r.rel_gap = std::max(r.rel_gap, p.rel_gap);
        r.tolerance = std::max(r.tolerance, p.tolerance);
    }
    r.params["parts"] = std::move(sub);
    if (!parts.empty()) {
        r.lhs = parts.front().lhs;
        r.rhs = parts.front().rhs;
    }
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
}

json to_json(const ThetaConstants& c) {
    json j;
    j["theta"] = c.theta;
    j["psi_half"] = c.psi_half;
    j["h1"] = c.h1;
    j["p"] = c.p;
    j["sigma_p"] = c.sigma_p;
    j["d1"] = c.d1;
    j["q"] = c.q;
    return j;
}

const char* version_string() { return LOGGAMMA_VERSION; }

std::string config_hash(const json& config) { return hex64(fnv1a64(config.dump())); }

}  // namespace loggamma
