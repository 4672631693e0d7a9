#pragma once

#include <cstdint>
#include <optional>

#include "dfi/pmf.hpp"

namespace dfi {

// Closed-form reference values for one family; absent fields have no
// closed form. Used as ground truth against the numeric path.
struct OracleValues {
    std::optional<double> dfi;
    std::optional<double> mean;
    std::optional<double> variance;
    std::optional<double> max_pmf;
    std::optional<double> entropy_power;
};

// Uniform on {0..N-1}: dfi = 4/N, mean = (N-1)/2, variance = (N^2-1)/12,
// max = 1/N, entropy power = N^2.
OracleValues uniform_oracle(std::int64_t n);

// Geometric p(i) = q(1-q)^i: dfi = 4(1-sqrt(1-q))^2, mean = (1-q)/q,
// variance = (1-q)/q^2, max = q,
// entropy power = q^-2 (1-q)^(-2(1-q)/q) with limit 1 at q = 1.
OracleValues geometric_oracle(double q);

// Poisson: dfi = 4 sum (sqrt(lambda/(i+1)) - 1)^2 p(i), mean = variance
// = lambda, max = p(floor(lambda)), and entropy
// H = lambda(1 - log lambda) + exp(-lambda) sum lambda^i log(i!) / i!,
// both series truncated once the Poisson tail majorant is below eps.
// For integer lambda the maximum is attained at both lambda-1 and lambda;
// the reported value is p(floor(lambda)) (the values coincide).
OracleValues poisson_oracle(double lambda, double eps = kDefaultEpsTail,
                            std::size_t max_support = kDefaultMaxSupport);

// Closed forms exist only for uniform, geometric and Poisson; other kinds
// return nullopt.
std::optional<OracleValues> oracle_for(const DistributionFamily& family,
                                       double eps = kDefaultEpsTail);

}  // namespace dfi
