#include "dfi/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dfi/summation.hpp"

namespace dfi {

namespace {

[[noreturn]] void fail_param(const std::string& what) {
    throw std::invalid_argument("dfi: " + what);
}

double compensated_total(const std::vector<double>& values) {
    CompensatedSum s;
    for (double v : values) s.add(v);
    return s.value();
}

// sum_{i>=M} i^2 q (1-q)^i, closed form:
//   r^M [M^2 q^2 + r (2 M q + 1 + r)] / q^2   with r = 1-q.
double geometric_second_moment_tail(double q, double m) {
    const double r = 1.0 - q;
    if (r == 0.0) return 0.0;
    const double rm = std::exp(m * std::log1p(-q));
    return rm * (m * m * q * q + r * (2.0 * m * q + 1.0 + r)) / (q * q);
}

}  // namespace

std::string_view family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::uniform: return "uniform";
        case FamilyKind::geometric: return "geometric";
        case FamilyKind::poisson: return "poisson";
        case FamilyKind::bernoulli: return "bernoulli";
        case FamilyKind::binomial: return "binomial";
        case FamilyKind::custom: return "custom";
    }
    return "unknown";
}

DistributionFamily DistributionFamily::uniform(std::int64_t n) {
    if (n < 1) fail_param("uniform: N must be a positive integer");
    DistributionFamily f;
    f.kind_ = FamilyKind::uniform;
    f.count_ = n;
    return f;
}

DistributionFamily DistributionFamily::geometric(double q) {
    if (!(q > 0.0 && q <= 1.0)) fail_param("geometric: q must lie in (0, 1]");
    DistributionFamily f;
    f.kind_ = FamilyKind::geometric;
    f.param_ = q;
    return f;
}

DistributionFamily DistributionFamily::poisson(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail_param("poisson: lambda must be positive and finite");
    DistributionFamily f;
    f.kind_ = FamilyKind::poisson;
    f.param_ = lambda;
    return f;
}

DistributionFamily DistributionFamily::bernoulli(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) fail_param("bernoulli: theta must lie in [0, 1]");
    DistributionFamily f;
    f.kind_ = FamilyKind::bernoulli;
    f.param_ = theta;
    return f;
}

DistributionFamily DistributionFamily::binomial(std::int64_t n, double theta) {
    if (n < 1) fail_param("binomial: n must be a positive integer");
    if (!(theta >= 0.0 && theta <= 1.0)) fail_param("binomial: theta must lie in [0, 1]");
    DistributionFamily f;
    f.kind_ = FamilyKind::binomial;
    f.count_ = n;
    f.param_ = theta;
    return f;
}

DistributionFamily DistributionFamily::custom(std::vector<double> values) {
    if (values.empty()) fail_param("custom: values must be nonempty");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) fail_param("custom: entries must be finite and nonnegative");
    }
    DistributionFamily f;
    f.kind_ = FamilyKind::custom;
    f.values_ = std::move(values);
    return f;
}

namespace {

double parse_double_strict(std::string_view text, const char* what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::invalid_argument&) {
        fail_param(std::string(what) + ": not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        fail_param(std::string(what) + ": out of range: '" + s + "'");
    }
    if (used != s.size()) fail_param(std::string(what) + ": trailing characters in '" + s + "'");
    return v;
}

std::int64_t parse_int_strict(std::string_view text, const char* what) {
    const double v = parse_double_strict(text, what);
    const double r = std::floor(v);
    if (r != v || std::abs(v) > 9e15) fail_param(std::string(what) + ": expected an integer");
    return static_cast<std::int64_t>(r);
}

}  // namespace

DistributionFamily DistributionFamily::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) fail_param("family spec must look like name:param[,param]");
    const std::string_view name = spec.substr(0, colon);
    const std::string_view args = spec.substr(colon + 1);
    const auto comma = args.find(',');
    const std::string_view first = comma == std::string_view::npos ? args : args.substr(0, comma);
    const std::string_view second = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);

    auto expect_single = [&] {
        if (comma != std::string_view::npos) fail_param("family spec: too many parameters");
    };
    if (name == "uniform") {
        expect_single();
        return uniform(parse_int_strict(first, "uniform N"));
    }
    if (name == "geometric") {
        expect_single();
        return geometric(parse_double_strict(first, "geometric q"));
    }
    if (name == "poisson") {
        expect_single();
        return poisson(parse_double_strict(first, "poisson lambda"));
    }
    if (name == "bernoulli") {
        expect_single();
        return bernoulli(parse_double_strict(first, "bernoulli theta"));
    }
    if (name == "binomial") {
        if (comma == std::string_view::npos) fail_param("binomial spec needs n,theta");
        return binomial(parse_int_strict(first, "binomial n"),
                        parse_double_strict(second, "binomial theta"));
    }
    fail_param("unknown family '" + std::string(name) + "'");
}

std::string DistributionFamily::name() const {
    std::ostringstream out;
    out.precision(17);
    out << family_kind_name(kind_);
    switch (kind_) {
        case FamilyKind::uniform: out << ':' << count_; break;
        case FamilyKind::geometric:
        case FamilyKind::poisson:
        case FamilyKind::bernoulli: out << ':' << param_; break;
        case FamilyKind::binomial: out << ':' << count_ << ',' << param_; break;
        case FamilyKind::custom: out << "[" << values_.size() << "]"; break;
    }
    return out.str();
}

bool ValidationReport::ok() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const noexcept {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate(const Pmf& p, const ValidationConfig& config) {
    ValidationReport report;
    const auto& v = p.values();

    bool finite = !v.empty() && std::isfinite(p.tail_mass_bound());
    double min_entry = v.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (double x : v) {
        if (!std::isfinite(x)) finite = false;
        min_entry = std::min(min_entry, x);
    }
    report.checks.push_back({"entries_finite_nonempty", finite, finite ? 0.0 : -1.0});
    report.checks.push_back({"entries_nonnegative", min_entry >= 0.0, min_entry});
    report.checks.push_back({"tail_bound_nonnegative", p.tail_mass_bound() >= 0.0, p.tail_mass_bound()});

    // 1 - tail - tol <= sum <= 1 + tol; margin is tol minus the excess.
    double excess = std::numeric_limits<double>::infinity();
    if (finite) {
        const double total = compensated_total(v);
        const double tail = std::max(p.tail_mass_bound(), 0.0);
        excess = std::max({0.0, total - 1.0, (1.0 - tail) - total});
    }
    const double norm_margin = config.normalization_tol - excess;
    report.checks.push_back({"normalization", norm_margin >= 0.0, norm_margin});

    const double tail_margin = config.eps_tail - p.tail_mass_bound();
    report.checks.push_back({"tail_within_eps", tail_margin >= 0.0 && p.tail_mass_bound() >= 0.0, tail_margin});
    return report;
}

void require_valid(const Pmf& p) {
    const auto& v = p.values();
    if (v.empty()) fail_param("pmf: empty support");
    if (!std::isfinite(p.tail_mass_bound()) || p.tail_mass_bound() < 0.0) {
        fail_param("pmf: tail_mass_bound must be finite and nonnegative");
    }
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0) fail_param("pmf: entries must be finite and nonnegative");
    }
    const double total = compensated_total(v);
    if (total > 1.0 + kDefaultNormalizationTol ||
        total < 1.0 - p.tail_mass_bound() - kDefaultNormalizationTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "pmf: stored mass " << total << " inconsistent with tail bound "
            << p.tail_mass_bound();
        fail_param(msg.str());
    }
}

namespace {

Pmf make_uniform(std::int64_t n, std::size_t max_support, const DistributionFamily& origin) {
    if (static_cast<std::size_t>(n) > max_support) fail_param("uniform: N exceeds max support length");
    return Pmf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)), 0.0, origin);
}

Pmf make_geometric(double q, double eps_tail, std::size_t max_support,
                   const DistributionFamily& origin) {
    if (q == 1.0) return Pmf({1.0}, 0.0, origin);
    // Mass tail after M entries is exactly (1-q)^M.
    const double log_r = std::log1p(-q);
    double m = std::ceil(std::log(eps_tail) / log_r);
    m = std::max(m, 1.0);
    if (!(m <= static_cast<double>(max_support))) {
        fail_param("geometric: eps_tail unreachable within max support length");
    }
    while (geometric_second_moment_tail(q, m) > kSecondMomentTailBound) {
        m += 1.0;
        if (m > static_cast<double>(max_support)) {
            fail_param("geometric: second-moment tail bound unreachable within max support length");
        }
    }
    const auto count = static_cast<std::size_t>(m);
    std::vector<double> values(count);
    double p = q;
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = p;
        p *= 1.0 - q;
    }
    const double tail = std::exp(m * log_r);
    return Pmf(std::move(values), tail, origin);
}

Pmf make_poisson(double lambda, double eps_tail, std::size_t max_support,
                 const DistributionFamily& origin) {
    // Entries via logs (robust for large lambda, where exp(-lambda)
    // underflows); log(i!) accumulated as sum of log(k). The exponent is
    // a difference of numbers up to ~lambda*log(lambda), so it is carried
    // in long double to keep entries accurate to ~1e-15 relative.
    const long double log_lambda = std::log(static_cast<long double>(lambda));
    const long double lambda_l = lambda;
    std::vector<double> values;
    long double log_fact = 0.0L;  // log(i!) for the next index i
    for (std::size_t i = 0;; ++i) {
        if (i >= max_support) {
            fail_param("poisson: eps_tail unreachable within max support length");
        }
        const long double log_p = -lambda_l + static_cast<long double>(i) * log_lambda - log_fact;
        values.push_back(static_cast<double>(std::exp(log_p)));
        log_fact += std::log(static_cast<long double>(i + 1));

        // Candidate truncation at M = i+1. p(M+k) <= p(M) rho^k with
        // rho = lambda/(M+1) <= 1/2 once M >= 2*lambda, so
        //   mass tail   <= p(M)/(1-rho)
        //   i^2 tail    <= p(M) (2M^2 + 4M + 6)
        const double m = static_cast<double>(i + 1);
        if (m < 2.0 * lambda || m < 3.0) continue;
        const double p_next =
            static_cast<double>(std::exp(-lambda_l + static_cast<long double>(m) * log_lambda - log_fact));
        const double rho = lambda / (m + 1.0);
        const double mass_tail = p_next / (1.0 - rho);
        const double moment_tail = p_next * (2.0 * m * m + 4.0 * m + 6.0);
        if (mass_tail <= eps_tail && moment_tail <= kSecondMomentTailBound) {
            return Pmf(std::move(values), mass_tail, origin);
        }
    }
}

Pmf make_bernoulli(double theta, const DistributionFamily& origin) {
    return Pmf({1.0 - theta, theta}, 0.0, origin);
}

Pmf make_binomial(std::int64_t n, double theta, std::size_t max_support,
                  const DistributionFamily& origin) {
    if (static_cast<std::size_t>(n) + 1 > max_support) fail_param("binomial: n exceeds max support length");
    const auto count = static_cast<std::size_t>(n) + 1;
    std::vector<double> values(count, 0.0);
    if (theta == 0.0) {
        values[0] = 1.0;
        return Pmf(std::move(values), 0.0, origin);
    }
    if (theta == 1.0) {
        values[count - 1] = 1.0;
        return Pmf(std::move(values), 0.0, origin);
    }
    // Exponents in long double, as in make_poisson.
    std::vector<long double> log_fact(count);
    for (std::size_t i = 1; i < count; ++i) {
        log_fact[i] = log_fact[i - 1] + std::log(static_cast<long double>(i));
    }
    const long double log_theta = std::log(static_cast<long double>(theta));
    const long double log_1m = std::log1p(static_cast<long double>(-theta));
    const long double nd = static_cast<long double>(n);
    for (std::size_t i = 0; i < count; ++i) {
        const long double id = static_cast<long double>(i);
        values[i] = static_cast<double>(
            std::exp(log_fact[count - 1] - log_fact[i] - log_fact[count - 1 - i] +
                     id * log_theta + (nd - id) * log_1m));
    }
    // Accumulated log-factorial error grows with n; renormalize so the
    // stored mass is exactly 1 up to one rounding per entry.
    const double total = compensated_total(values);
    for (double& v : values) v /= total;
    return Pmf(std::move(values), 0.0, origin);
}

}  // namespace

Pmf from_family(const DistributionFamily& family, double eps_tail, std::size_t max_support) {
    if (!(eps_tail > 0.0)) fail_param("from_family: eps_tail must be positive");
    if (max_support == 0) fail_param("from_family: max_support must be positive");
    switch (family.kind()) {
        case FamilyKind::uniform: return make_uniform(family.count(), max_support, family);
        case FamilyKind::geometric: return make_geometric(family.parameter(), eps_tail, max_support, family);
        case FamilyKind::poisson: return make_poisson(family.parameter(), eps_tail, max_support, family);
        case FamilyKind::bernoulli: return make_bernoulli(family.parameter(), family);
        case FamilyKind::binomial: return make_binomial(family.count(), family.parameter(), max_support, family);
        case FamilyKind::custom: return Pmf(family.custom_values(), 0.0, family);
    }
    fail_param("from_family: unknown family kind");
}

ShiftedPmf shifted(const Pmf& p) {
    require_valid(p);
    ShiftedPmf out;
    const auto& v = p.values();
    if (v.size() > 1) {
        out.values.assign(v.begin() + 1, v.end());
    }
    CompensatedSum mass;
    for (double x : out.values) mass.add(x);
    out.mass = mass.value();
    return out;
}

}  // namespace dfi
