#include "dfi/families.hpp"

#include <cmath>
#include <stdexcept>

#include "dfi/summation.hpp"

namespace dfi {

OracleValues uniform_oracle(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("uniform_oracle: N must be a positive integer");
    const double nd = static_cast<double>(n);
    OracleValues o;
    o.dfi = 4.0 / nd;
    o.mean = (nd - 1.0) / 2.0;
    o.variance = (nd * nd - 1.0) / 12.0;
    o.max_pmf = 1.0 / nd;
    o.entropy_power = nd * nd;
    return o;
}

OracleValues geometric_oracle(double q) {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("geometric_oracle: q must lie in (0, 1]");
    OracleValues o;
    // 4(1-sqrt(1-q))^2 through the cancellation-free form 4(q/(1+u))^2.
    const double u = std::sqrt(1.0 - q);
    const double s = q / (1.0 + u);
    o.dfi = 4.0 * s * s;
    o.mean = (1.0 - q) / q;
    o.variance = (1.0 - q) / (q * q);
    o.max_pmf = q;
    if (q == 1.0) {
        o.entropy_power = 1.0;  // (1-q)^(-2(1-q)/q) -> 1, avoid 0^0
    } else {
        const double log_nd = -2.0 * std::log(q) - (2.0 * (1.0 - q) / q) * std::log1p(-q);
        o.entropy_power = std::exp(log_nd);
    }
    return o;
}

OracleValues poisson_oracle(double lambda, double eps, std::size_t max_support) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("poisson_oracle: lambda must be positive and finite");
    }
    if (!(eps > 0.0)) throw std::invalid_argument("poisson_oracle: eps must be positive");

    // Exponents carried in long double, as in the pmf construction.
    const long double log_lambda = std::log(static_cast<long double>(lambda));
    const long double lambda_l = lambda;
    CompensatedSum dfi_series;      // (sqrt(lambda/(i+1)) - 1)^2 p(i)
    CompensatedSum entropy_series;  // p(i) log(i!)
    long double log_fact = 0.0L;
    bool done = false;
    for (std::size_t i = 0; !done; ++i) {
        if (i >= max_support) {
            throw std::runtime_error("poisson_oracle: series did not converge within max support length");
        }
        const double p = static_cast<double>(
            std::exp(-lambda_l + static_cast<long double>(i) * log_lambda - log_fact));
        const double d = std::sqrt(lambda / (static_cast<double>(i) + 1.0)) - 1.0;
        dfi_series.add(d * d * p);
        entropy_series.add(p * static_cast<double>(log_fact));
        log_fact += std::log(static_cast<long double>(i + 1));

        // Same majorant as the pmf truncation: past M >= 2*lambda the DFI
        // multiplier is < 1 and log(i!) <= i^2, so both remainders are
        // below p(M) (2M^2 + 4M + 6).
        const double m = static_cast<double>(i + 1);
        if (m < 2.0 * lambda || m < 3.0) continue;
        const double p_next = static_cast<double>(
            std::exp(-lambda_l + static_cast<long double>(m) * log_lambda - log_fact));
        if (p_next * (2.0 * m * m + 4.0 * m + 6.0) <= eps) done = true;
    }

    OracleValues o;
    o.dfi = 4.0 * dfi_series.value();
    o.mean = lambda;
    o.variance = lambda;
    const double k = std::floor(lambda);
    {
        long double log_fact_k = 0.0L;
        for (double j = 1.0; j <= k; j += 1.0) log_fact_k += std::log(static_cast<long double>(j));
        o.max_pmf = static_cast<double>(
            std::exp(-lambda_l + static_cast<long double>(k) * log_lambda - log_fact_k));
    }
    const double h =
        static_cast<double>(lambda_l * (1.0L - log_lambda)) + entropy_series.value();
    o.entropy_power = std::exp(2.0 * h);
    return o;
}

std::optional<OracleValues> oracle_for(const DistributionFamily& family, double eps) {
    switch (family.kind()) {
        case FamilyKind::uniform: return uniform_oracle(family.count());
        case FamilyKind::geometric: return geometric_oracle(family.parameter());
        case FamilyKind::poisson: return poisson_oracle(family.parameter(), eps);
        case FamilyKind::bernoulli:
        case FamilyKind::binomial:
        case FamilyKind::custom: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace dfi
