#include "dfi/quantities.hpp"

#include <algorithm>
#include <cmath>

#include "dfi/summation.hpp"

namespace dfi {

namespace {

std::vector<double> phi_of(const std::vector<double>& values) {
    std::vector<double> phi(values.size());
    std::transform(values.begin(), values.end(), phi.begin(),
                   [](double v) { return std::sqrt(v); });
    return phi;
}

DfiValue dfi_impl(const std::vector<double>& values, double tail) {
    const auto phi = phi_of(values);
    CompensatedSum sum;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
        const double d = phi[i + 1] - phi[i];
        sum.add(d * d);
    }
    DfiValue out;
    if (tail == 0.0) {
        // Finite support: p(M) = 0 makes the boundary difference a real term.
        sum.add(phi.back() * phi.back());
        out.error_bound = 0.0;
    } else {
        // Dropped terms: the edge difference is at most
        // (sqrt(p(M-1)) + sqrt(tail))^2 since p(M) <= tail, and the rest
        // are bounded by sum of p(i) + p(i+1) <= 2*tail.
        const double edge = phi.back() + std::sqrt(tail);
        out.error_bound = 4.0 * edge * edge + 8.0 * tail;
    }
    out.value = 4.0 * sum.value();
    return out;
}

double autocorr_impl(const std::vector<double>& values, std::size_t lag) {
    const auto phi = phi_of(values);
    if (lag >= phi.size()) return 0.0;
    CompensatedSum sum;
    for (std::size_t i = 0; i + lag < phi.size(); ++i) {
        sum.add(phi[i] * phi[i + lag]);
    }
    return sum.value();
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments_impl(const std::vector<double>& values) {
    CompensatedSum first, second;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = static_cast<double>(i);
        first.add(x * values[i]);
        second.add(x * x * values[i]);
    }
    Moments m;
    m.mean = first.value();
    m.variance = std::max(0.0, second.value() - m.mean * m.mean);
    return m;
}

double entropy_impl(const std::vector<double>& values) {
    CompensatedSum sum;
    for (double v : values) {
        if (v > 0.0) sum.add(-v * std::log(v));
    }
    return sum.value();
}

MaxPmf max_impl(const std::vector<double>& values) {
    MaxPmf out{values[0], 0};
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > out.value) out = {values[i], i};
    }
    return out;
}

}  // namespace

std::vector<double> sqrt_transform(const Pmf& p) {
    require_valid(p);
    return phi_of(p.values());
}

DfiValue dfi_direct(const Pmf& p) {
    require_valid(p);
    return dfi_impl(p.values(), p.tail_mass_bound());
}

double autocorrelation(const Pmf& p, std::size_t lag) {
    require_valid(p);
    return autocorr_impl(p.values(), lag);
}

double dfi_autocorr(const Pmf& p) {
    require_valid(p);
    if (p.tail_mass_bound() != 0.0) {
        throw std::invalid_argument(
            "dfi_autocorr: identity uses the total mass twice and is exact only for "
            "tail_mass_bound == 0; use dfi_direct for truncated pmfs");
    }
    return 4.0 * (2.0 - p.values()[0] - 2.0 * autocorr_impl(p.values(), 1));
}

double hellinger_sq(std::span<const double> p, std::span<const double> q) {
    for (auto seq : {p, q}) {
        for (double v : seq) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("hellinger_sq: entries must be finite and nonnegative");
            }
        }
    }
    const std::size_t n = std::max(p.size(), q.size());
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < p.size() ? std::sqrt(p[i]) : 0.0;
        const double b = i < q.size() ? std::sqrt(q[i]) : 0.0;
        const double d = a - b;
        sum.add(d * d);
    }
    return 0.5 * sum.value();
}

double mean(const Pmf& p) {
    require_valid(p);
    return moments_impl(p.values()).mean;
}

double variance(const Pmf& p) {
    require_valid(p);
    return moments_impl(p.values()).variance;
}

double entropy(const Pmf& p) {
    require_valid(p);
    return entropy_impl(p.values());
}

double entropy_power(const Pmf& p) {
    require_valid(p);
    return std::exp(2.0 * entropy_impl(p.values()));
}

MaxPmf max_pmf(const Pmf& p) {
    require_valid(p);
    return max_impl(p.values());
}

QuantityReport quantity_report(const Pmf& p) {
    require_valid(p);
    const auto& v = p.values();
    const auto dfi = dfi_impl(v, p.tail_mass_bound());
    const auto m = moments_impl(v);
    QuantityReport report;
    report.dfi = dfi.value;
    report.error_bound_dfi = dfi.error_bound;
    report.entropy = entropy_impl(v);
    report.entropy_power = std::exp(2.0 * report.entropy);
    report.mean = m.mean;
    report.variance = m.variance;
    report.max_pmf = max_impl(v).value;
    report.p0 = v[0];
    report.autocorr_lag1 = autocorr_impl(v, 1);
    return report;
}

}  // namespace dfi
