#include "dfi/inequalities.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "dfi/quantities.hpp"

namespace dfi {

namespace {

InequalityCheck finish(InequalityName name, double lhs, double rhs, bool strict) {
    InequalityCheck c;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.gap = lhs - rhs;
    c.strict = strict;
    c.satisfied = strict ? c.gap > 0.0 : c.gap >= -kNonStrictSlack;
    c.equality_case = std::abs(c.gap) <= kEqualityTol && std::abs(lhs) <= kEqualityTol &&
                      std::abs(rhs) <= kEqualityTol;
    return c;
}

void require_variance_tail(const Pmf& p, const char* op) {
    if (p.tail_mass_bound() > kVarianceTailLimit) {
        std::ostringstream msg;
        msg << op << ": tail_mass_bound must be <= " << kVarianceTailLimit
            << " (a mass tail does not bound the variance error)";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

std::string_view to_string(InequalityName name) {
    switch (name) {
        case InequalityName::cramer_rao: return "cramer_rao";
        case InequalityName::cramer_rao_simplified: return "cramer_rao_simplified";
        case InequalityName::max_pmf_bound: return "max_pmf_bound";
        case InequalityName::stam: return "stam";
        case InequalityName::stam_type: return "stam_type";
    }
    return "unknown";
}

InequalityCheck check_cramer_rao(const Pmf& p) {
    require_valid(p);
    require_variance_tail(p, "check_cramer_rao");
    const double mu = mean(p);
    const double sigma2 = variance(p);
    const double p0 = p.values()[0];
    const double dfi = dfi_direct(p).value;
    const double lhs = (sigma2 + 0.5 - 0.5 * (mu + 1.0) * (mu + 1.0) * p0) * dfi;
    const double v = 1.0 - (mu + 1.0) * p0;
    return finish(InequalityName::cramer_rao, lhs, v * v, /*strict=*/false);
}

InequalityCheck check_cramer_rao_simplified(const Pmf& p) {
    require_valid(p);
    require_variance_tail(p, "check_cramer_rao_simplified");
    if (p.values()[0] > kSimplifiedP0Limit) {
        throw std::invalid_argument("check_cramer_rao_simplified: requires p(0) = 0");
    }
    const double lhs = (variance(p) + 0.5) * dfi_direct(p).value;
    return finish(InequalityName::cramer_rao_simplified, lhs, 1.0, /*strict=*/false);
}

InequalityCheck check_max_pmf(const Pmf& p) {
    require_valid(p);
    const double m = max_pmf(p).value;
    const double p0 = p.values()[0];
    const double rhs = m * m + (m - p0) * (m - p0);
    return finish(InequalityName::max_pmf_bound, dfi_direct(p).value, rhs, /*strict=*/true);
}

InequalityCheck check_stam(const Pmf& p) {
    require_valid(p);
    const double lhs = entropy_power(p) * dfi_direct(p).value;
    return finish(InequalityName::stam, lhs, 1.0, /*strict=*/true);
}

InequalityCheck check_stam_type(const Pmf& p) {
    require_valid(p);
    const double p0 = p.values()[0];
    const double lhs = 0.5 * entropy_power(p) * (dfi_direct(p).value + 2.0 * p0 - p0 * p0);
    return finish(InequalityName::stam_type, lhs, 1.0, /*strict=*/true);
}

std::vector<InequalityCheck> check_all(const Pmf& p) {
    require_valid(p);
    std::vector<InequalityCheck> checks;
    if (p.tail_mass_bound() <= kVarianceTailLimit) {
        checks.push_back(check_cramer_rao(p));
        if (p.values()[0] <= kSimplifiedP0Limit) {
            checks.push_back(check_cramer_rao_simplified(p));
        }
    }
    checks.push_back(check_max_pmf(p));
    checks.push_back(check_stam(p));
    checks.push_back(check_stam_type(p));
    return checks;
}

std::string check_to_json(const InequalityCheck& check) {
    nlohmann::ordered_json doc;
    doc["name"] = std::string(to_string(check.name));
    doc["lhs"] = check.lhs;
    doc["rhs"] = check.rhs;
    doc["gap"] = check.gap;
    doc["satisfied"] = check.satisfied;
    doc["equality_case"] = check.equality_case;
    return doc.dump();
}

}  // namespace dfi
