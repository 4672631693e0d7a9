#pragma once

#include <string_view>
#include <vector>

#include "dfi/pmf.hpp"

namespace dfi {

// Strict inequalities must show a positive floating-point gap; the
// non-strict Cramer-Rao-type bound gets rounding slack.
inline constexpr double kNonStrictSlack = 1e-9;
inline constexpr double kEqualityTol = 1e-10;
// Variance is unbounded over the class of pmfs, so a mass-tail bound does
// not bound the variance error; variance-bearing checks require a tail at
// most this (family constructions pad supports until the second-moment
// tail is certified below kSecondMomentTailBound, which makes this safe).
inline constexpr double kVarianceTailLimit = 1e-9;
inline constexpr double kSimplifiedP0Limit = 1e-12;

enum class InequalityName {
    cramer_rao,
    cramer_rao_simplified,
    max_pmf_bound,
    stam,
    stam_type,
};

std::string_view to_string(InequalityName name);

struct InequalityCheck {
    InequalityName name = InequalityName::cramer_rao;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // lhs - rhs
    bool strict = false;
    bool satisfied = false;
    // |gap| <= kEqualityTol with both sides <= kEqualityTol. Meaningful for
    // cramer_rao, whose equality case characterizes the point mass at 0.
    bool equality_case = false;
};

// (sigma^2 + 1/2 - ((mu+1)^2/2) p(0)) I_d >= (1 - (mu+1) p(0))^2,
// equality iff p = delta_{i0}. Requires tail <= kVarianceTailLimit.
InequalityCheck check_cramer_rao(const Pmf& p);

// (sigma^2 + 1/2) I_d >= 1, valid when p(0) = 0. Throws when
// p(0) > kSimplifiedP0Limit. Requires tail <= kVarianceTailLimit.
InequalityCheck check_cramer_rao_simplified(const Pmf& p);

// I_d > ||p||_inf^2 + (||p||_inf - p(0))^2, strict.
InequalityCheck check_max_pmf(const Pmf& p);

// N_d I_d > 1, strict.
InequalityCheck check_stam(const Pmf& p);

// (1/2) N_d (I_d + 2 p(0) - p(0)^2) > 1, strict. For p(0) = 0 its lhs is
// exactly half the stam lhs against the same rhs; both reports expose
// the ratio.
InequalityCheck check_stam_type(const Pmf& p);

// Every applicable check: cramer_rao and the simplified form only when
// their tail / p(0) gates admit them, the three strict checks always.
std::vector<InequalityCheck> check_all(const Pmf& p);

// {"name", "lhs", "rhs", "gap", "satisfied", "equality_case"} record.
std::string check_to_json(const InequalityCheck& check);

}  // namespace dfi
