#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dfi/pmf.hpp"

namespace dfi {

// Discrete Fisher information with a certified truncation error bound.
// For a zero-tail pmf the final boundary difference (0 - sqrt(p(M-1)))^2
// is a real term of the series (finite support means p(M) = 0) and the
// bound is 0. Otherwise the dropped terms are covered by
//   4*(sqrt(p(M-1)) + sqrt(tail))^2 + 8*tail,
// using (a-b)^2 <= a^2 + b^2 for the terms past the truncation edge.
struct DfiValue {
    double value = 0.0;
    double error_bound = 0.0;
};

struct MaxPmf {
    double value = 0.0;
    std::size_t index = 0;  // smallest attaining index
};

// All scalar quantities of one pmf. Mathematically 0 <= dfi <= 8 (each
// series term (sqrt(a)-sqrt(b))^2 <= a+b, so the sum is <= 2); the upper
// bound is a consequence of the definition, documented here because it is
// handy for sanity checks.
struct QuantityReport {
    double dfi = 0.0;
    double entropy = 0.0;        // nats
    double entropy_power = 0.0;  // exp(2*entropy)
    double mean = 0.0;
    double variance = 0.0;
    double max_pmf = 0.0;
    double p0 = 0.0;
    double autocorr_lag1 = 0.0;
    double error_bound_dfi = 0.0;
};

// phi(i) = sqrt(p(i)), well-defined for zero entries.
std::vector<double> sqrt_transform(const Pmf& p);

// I_d(p) = 4 * sum (phi(i+1) - phi(i))^2, with certified truncation error.
DfiValue dfi_direct(const Pmf& p);

// R(t) = sum phi(i) phi(i+t); R(0) is the total stored mass.
double autocorrelation(const Pmf& p, std::size_t lag);

// Exact identity I_d = 4(2 - p(0) - 2 R(1)). It consumes the total mass
// twice, so it is only exact when the full mass is represented: a nonzero
// tail bound is refused (std::invalid_argument) rather than silently
// absorbing the tail into the result.
double dfi_autocorr(const Pmf& p);

// Squared Hellinger distance (1/2) sum (sqrt(p_i) - sqrt(q_i))^2; the
// shorter sequence is zero-padded. Symmetric. Throws on negative or
// non-finite entries.
double hellinger_sq(std::span<const double> p, std::span<const double> q);

double mean(const Pmf& p);
double variance(const Pmf& p);  // clamped at 0 to absorb rounding residue

// Shannon entropy in nats, with 0*log(0) = 0. For a nonzero tail bound
// eps the truncation can miss up to about eps*|log(eps)| + eps*log(M+1)
// of entropy (tail mass spread over decaying entries); this is documented,
// not subtracted.
double entropy(const Pmf& p);
double entropy_power(const Pmf& p);

MaxPmf max_pmf(const Pmf& p);

QuantityReport quantity_report(const Pmf& p);

}  // namespace dfi
