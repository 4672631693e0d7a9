#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dfi {

inline constexpr double kDefaultEpsTail = 1e-12;
inline constexpr double kDefaultNormalizationTol = 1e-12;
inline constexpr std::size_t kDefaultMaxSupport = 10'000'000;

// Geometric and Poisson truncations are extended until the discarded
// second moment (sum of i^2 p(i) over dropped indices) is certified below
// this, so variance computed on the truncation can be trusted.
inline constexpr double kSecondMomentTailBound = 1e-9;

enum class FamilyKind { uniform, geometric, poisson, bernoulli, binomial, custom };

std::string_view family_kind_name(FamilyKind kind);

// Parametric family of pmfs on {0, 1, 2, ...}. Factories check parameter
// ranges and throw std::invalid_argument on violations.
class DistributionFamily {
public:
    static DistributionFamily uniform(std::int64_t n);   // p(i) = 1/N on {0..N-1}
    static DistributionFamily geometric(double q);       // p(i) = q(1-q)^i, q in (0,1]
    static DistributionFamily poisson(double lambda);    // lambda > 0
    static DistributionFamily bernoulli(double theta);   // theta in [0,1]
    static DistributionFamily binomial(std::int64_t n, double theta);
    static DistributionFamily custom(std::vector<double> values);

    // Parses "name:param[,param]" specs, e.g. "uniform:4" or "binomial:10,0.3".
    static DistributionFamily parse(std::string_view spec);

    FamilyKind kind() const noexcept { return kind_; }
    std::int64_t count() const noexcept { return count_; }  // N (uniform) / n (binomial)
    double parameter() const noexcept { return param_; }    // q, lambda or theta
    const std::vector<double>& custom_values() const noexcept { return values_; }

    std::string name() const;

private:
    DistributionFamily() = default;
    FamilyKind kind_ = FamilyKind::custom;
    std::int64_t count_ = 0;
    double param_ = 0.0;
    std::vector<double> values_;
};

// Truncated pmf on the nonnegative integers: stored probabilities
// p(0..M-1) plus a certified upper bound on the mass at indices >= M.
// Trailing exact zeros are legal and retained (finite-support pmfs have
// p(i) = 0 beyond their support). Immutable after construction;
// construction does not validate -- see validate().
class Pmf {
public:
    Pmf() = default;
    explicit Pmf(std::vector<double> values, double tail_mass_bound = 0.0,
                 std::optional<DistributionFamily> origin = std::nullopt)
        : values_(std::move(values)),
          tail_mass_bound_(tail_mass_bound),
          origin_(std::move(origin)) {}

    const std::vector<double>& values() const noexcept { return values_; }
    double tail_mass_bound() const noexcept { return tail_mass_bound_; }
    const std::optional<DistributionFamily>& origin() const noexcept { return origin_; }
    std::size_t support_size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    double tail_mass_bound_ = 0.0;
    std::optional<DistributionFamily> origin_;
};

struct ValidationConfig {
    double normalization_tol = kDefaultNormalizationTol;
    double eps_tail = kDefaultEpsTail;  // quality gate on tail_mass_bound
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // >= 0 slack when the invariant holds, deficit when not
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const noexcept;
    const ValidationCheck* find(std::string_view name) const noexcept;
};

// Total function: reports each invariant with its measured margin.
ValidationReport validate(const Pmf& p, const ValidationConfig& config = {});

// Structural gate used by every downstream operation: nonempty, finite
// nonnegative entries, finite nonnegative tail bound, and normalization
// consistent with the declared tail. Throws std::invalid_argument when
// violated. Operations state any additional tail requirement themselves;
// the eps_tail quality gate belongs to validate() only.
void require_valid(const Pmf& p);

// Materializes a family as a truncated pmf with tail_mass_bound <= eps_tail
// using closed-form tails (geometric: (1-q)^M; Poisson: ratio-test majorant
// p(M)/(1 - lambda/(M+1)) valid for M >= 2*lambda; finite families truncate
// exactly with tail 0). Geometric/Poisson supports are extended further
// until the discarded second moment is below kSecondMomentTailBound.
Pmf from_family(const DistributionFamily& family, double eps_tail = kDefaultEpsTail,
                std::size_t max_support = kDefaultMaxSupport);

// q(i) = p(i+1): one-step left shift. A sub-probability sequence, not
// renormalized; mass = sum of the shifted entries = (sum of p) - p(0).
struct ShiftedPmf {
    std::vector<double> values;
    double mass = 0.0;
};
ShiftedPmf shifted(const Pmf& p);

struct PmfParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts either a JSON object {"values": [...], "tail_mass_bound": x}
// or plain text with one probability per line (tail bound implicitly 0).
// Rejects negative entries and non-finite numbers.
Pmf parse_pmf_text(std::string_view text);
Pmf read_pmf_file(const std::string& path);

// {"values": [...], "tail_mass_bound": x} with round-trip-exact numbers.
std::string pmf_to_json(const Pmf& p);

}  // namespace dfi
