#include "dfi/tightness.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dfi/quantities.hpp"
#include "dfi/summation.hpp"

namespace dfi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1), never 0 or 1.
double uniform01(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& eng) {
    const double u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang; the alpha < 1 case boosts through Gamma(alpha + 1).
double gamma_draw(std::mt19937_64& eng, double alpha) {
    if (alpha < 1.0) {
        return gamma_draw(eng, alpha + 1.0) * std::pow(uniform01(eng), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = standard_normal(eng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = uniform01(eng);
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

double stam_objective(const std::vector<double>& x) {
    const Pmf p(x);
    return entropy_power(p) * dfi_direct(p).value;
}

struct DescentOutcome {
    std::vector<double> x;
    double f = 0.0;
    bool converged = false;
};

// Coordinate mutation with projection: nudge one coordinate, clip at 0,
// renormalize, accept decreases. Step halves when a full pass improves
// by less than step_tol.
DescentOutcome coordinate_descent(std::vector<double> x, double step_tol, int max_passes) {
    DescentOutcome out;
    out.f = stam_objective(x);
    double step = 0.25;
    constexpr double kStepFloor = 1e-9;
    std::vector<double> candidate(x.size());
    for (int pass = 0; pass < max_passes; ++pass) {
        double improvement = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double delta : {step, -step}) {
                candidate = x;
                candidate[i] = std::max(0.0, candidate[i] + delta);
                double total = 0.0;
                for (double v : candidate) total += v;
                if (total <= 0.0) continue;
                for (double& v : candidate) v /= total;
                const double fc = stam_objective(candidate);
                if (fc < out.f) {
                    improvement += out.f - fc;
                    x = candidate;
                    out.f = fc;
                }
            }
        }
        if (improvement < step_tol) {
            if (step <= kStepFloor) {
                out.converged = true;
                break;
            }
            step *= 0.5;
        }
    }
    out.x = std::move(x);
    return out;
}

}  // namespace

SweepResult geometric_sweep(std::span<const double> q_grid) {
    if (q_grid.empty()) throw std::invalid_argument("geometric_sweep: empty grid");
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (!(q_grid[i] > 0.0 && q_grid[i] <= 1.0)) {
            throw std::invalid_argument("geometric_sweep: q values must lie in (0, 1]");
        }
        if (i > 0 && !(q_grid[i] < q_grid[i - 1])) {
            throw std::invalid_argument("geometric_sweep: grid must be strictly decreasing");
        }
    }
    const double e_minus_2 = std::exp(-2.0);
    SweepResult result;
    result.points.reserve(q_grid.size());
    for (double q : q_grid) {
        SweepPoint pt;
        pt.q = q;
        // Closed forms: I_d = 4(1-u)^2 = 4(q/(1+u))^2 with u = sqrt(1-q);
        // max = p(0) = q, so the max-bound ratio q^2/I_d simplifies to
        // (1+u)^2/4 exactly.
        const double u = std::sqrt(1.0 - q);
        const double s = q / (1.0 + u);
        pt.dfi = 4.0 * s * s;
        pt.ratio_max_bound = (1.0 + u) * (1.0 + u) / 4.0;
        // N_d I_d in log space; log N_d = -2 log q - (2(1-q)/q) log(1-q).
        const double log_nd = q == 1.0 ? 0.0
                                       : -2.0 * std::log(q) - (2.0 * (1.0 - q) / q) * std::log1p(-q);
        pt.ratio_stam = std::exp(-(log_nd + std::log(pt.dfi)));
        pt.residual_max_bound = std::abs(pt.ratio_max_bound - 1.0);
        pt.residual_stam = std::abs(pt.ratio_stam - e_minus_2);
        result.points.push_back(pt);
    }
    return result;
}

double dfi_smallq_residual(double q) {
    if (!(q > 0.0 && q <= 0.5)) {
        throw std::invalid_argument("dfi_smallq_residual: q must lie in (0, 0.5]");
    }
    // (4(1-sqrt(1-q))^2 - q^2)/q^3 == (3+u)/(1+u)^3 with u = sqrt(1-q):
    // 4(1-u)^2 - q^2 = (1-u)^2 (4 - (1+u)^2) = (1-u)^3 (3+u), and
    // q^3 = (1-u)^3 (1+u)^3.
    const double u = std::sqrt(1.0 - q);
    const double w = 1.0 + u;
    return (3.0 + u) / (w * w * w);
}

Pmf random_pmf(std::uint64_t seed, std::size_t support, double concentration) {
    if (support < 1) throw std::invalid_argument("random_pmf: support must be >= 1");
    if (!(concentration > 0.0)) throw std::invalid_argument("random_pmf: concentration must be positive");
    if (support == 1) return Pmf({1.0});
    std::mt19937_64 eng(seed);
    std::vector<double> values(support);
    CompensatedSum total;
    for (double& v : values) {
        v = gamma_draw(eng, concentration);
        total.add(v);
    }
    const double sum = total.value();
    if (!(sum > 0.0)) return Pmf(std::vector<double>{1.0});  // all-underflow corner
    for (double& v : values) v /= sum;
    return Pmf(std::move(values));
}

Pmf corpus_pmf(std::uint64_t seed, std::uint64_t index, std::size_t max_support) {
    if (max_support < 1) throw std::invalid_argument("corpus_pmf: max_support must be >= 1");
    const std::uint64_t h1 = splitmix64(seed ^ splitmix64(index));
    const std::size_t support = 1 + static_cast<std::size_t>(h1 % max_support);
    const std::uint64_t h2 = splitmix64(h1);
    constexpr double kConcentrations[] = {0.1, 1.0, 10.0};
    const double concentration = kConcentrations[h2 % 3];
    return random_pmf(splitmix64(h2), support, concentration);
}

OptimizeResult minimize_stam_product(const OptimizeOptions& options) {
    if (options.support < 1) throw std::invalid_argument("minimize_stam_product: support must be >= 1");
    if (options.restarts < 1) throw std::invalid_argument("minimize_stam_product: restarts must be >= 1");
    if (!(options.step_tol > 0.0)) throw std::invalid_argument("minimize_stam_product: step_tol must be positive");

    OptimizeResult result;
    result.support_size = options.support;
    result.restarts_used = options.restarts;
    result.restart_objectives.reserve(static_cast<std::size_t>(options.restarts));

    bool have_best = false;
    DescentOutcome best;
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> x0(options.support, 0.0);
        if (r == 0) {
            x0[0] = 1.0;
        } else {
            // Dirichlet(1): normalized Exp(1) draws.
            std::mt19937_64 eng(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(r))));
            double total = 0.0;
            for (double& v : x0) {
                v = -std::log(uniform01(eng));
                total += v;
            }
            for (double& v : x0) v /= total;
        }
        DescentOutcome outcome = coordinate_descent(std::move(x0), options.step_tol, options.max_passes);
        result.restart_objectives.push_back(outcome.f);
        if (!have_best || outcome.f < best.f) {  // ties keep the earlier restart
            best = std::move(outcome);
            have_best = true;
        }
    }

    if (best.f <= 1.0) {
        throw InconsistencyError(
            "minimize_stam_product: objective <= 1 contradicts the entropy-power bound; "
            "this indicates a computation bug");
    }
    result.witness = Pmf(std::move(best.x));
    result.objective = best.f;
    result.converged = best.converged;
    return result;
}

OptimizeResult brute_force_grid(std::size_t support, double step) {
    if (support != 2 && support != 3) {
        throw std::invalid_argument("brute_force_grid: only supports 2 and 3");
    }
    if (!(step > 0.0 && step <= 0.1)) {
        throw std::invalid_argument("brute_force_grid: step must lie in (0, 0.1]");
    }
    const auto k_max = static_cast<long long>(std::llround(1.0 / step));
    bool have_best = false;
    std::vector<double> best_x;
    double best_f = 0.0;
    std::vector<double> x(support);
    auto consider = [&] {
        const double f = stam_objective(x);
        if (!have_best || f < best_f) {
            best_f = f;
            best_x = x;
            have_best = true;
        }
    };
    if (support == 2) {
        for (long long k = 0; k <= k_max; ++k) {
            const double a = k == k_max ? 1.0 : static_cast<double>(k) * step;
            x[0] = a;
            x[1] = std::max(0.0, 1.0 - a);
            consider();
        }
    } else {
        for (long long i = 0; i <= k_max; ++i) {
            const double a = i == k_max ? 1.0 : static_cast<double>(i) * step;
            for (long long j = 0; i + j <= k_max; ++j) {
                const double b = static_cast<double>(j) * step;
                x[0] = a;
                x[1] = b;
                x[2] = std::max(0.0, 1.0 - a - b);
                consider();
            }
        }
    }
    OptimizeResult result;
    result.witness = Pmf(std::move(best_x));
    result.objective = best_f;
    result.support_size = support;
    result.restarts_used = 0;
    result.converged = true;
    result.restart_objectives = {best_f};
    return result;
}

}  // namespace dfi
