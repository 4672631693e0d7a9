#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dfi/pmf.hpp"

namespace dfi {

// Thrown when a computed result contradicts a proved bound (e.g. an
// optimizer objective at or below 1, impossible for N_d * I_d): it means
// a bug, not a mathematical discovery.
struct InconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// One point of the geometric q -> 0 sweep, evaluated from closed forms
// (materializing a certified pmf at q = 1e-4 would take ~3*10^5 entries
// for no gain in accuracy).
struct SweepPoint {
    double q = 0.0;
    double dfi = 0.0;
    double ratio_max_bound = 0.0;    // (max^2 + (max - p0)^2) / I_d, -> 1
    double ratio_stam = 0.0;        // 1 / (N_d I_d), -> exp(-2)
    double residual_max_bound = 0.0; // |ratio_max_bound - 1|
    double residual_stam = 0.0;     // |ratio_stam - exp(-2)|
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

// Grid must be strictly decreasing with every q in (0, 1].
SweepResult geometric_sweep(std::span<const double> q_grid);

// (4(1-sqrt(1-q))^2 - q^2) / q^3 for q in (0, 0.5]: the scaled remainder
// of I_d = q^2 + O(q^3) for the geometric family. Evaluated through the
// exact rearrangement (3+u)/(1+u)^3 with u = sqrt(1-q), which has no
// cancellation; the limit at q -> 0 is 1/2.
double dfi_smallq_residual(double q);

// Dirichlet(concentration, ..., concentration) draw on {0..support-1},
// tail 0. Deterministic for a given seed (hand-rolled gamma sampling on a
// std::mt19937_64 stream, so the sequence does not depend on the standard
// library implementation).
Pmf random_pmf(std::uint64_t seed, std::size_t support, double concentration);

// Deterministic test-corpus pmf: support size in [1, max_support] and
// concentration from {0.1, 1, 10}, both derived from (seed, index).
Pmf corpus_pmf(std::uint64_t seed, std::uint64_t index, std::size_t max_support);

struct OptimizeOptions {
    std::size_t support = 2;
    int restarts = 16;
    double step_tol = 1e-10;
    std::uint64_t seed = 0;
    int max_passes = 20000;  // hard stop per restart
};

struct OptimizeResult {
    Pmf witness;
    double objective = 0.0;
    std::size_t support_size = 0;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> restart_objectives;  // best objective per restart
};

// Multi-start coordinate-mutation descent of f(p) = N_d(p) * I_d(p) over
// the probability simplex: per pass each coordinate is nudged by +-step
// and the point reprojected (clip at 0, renormalize), decreases accepted;
// the step halves when a full pass improves by less than step_tol.
// Restart 0 starts from the delta_{i0} corner, the rest from Dirichlet(1)
// draws. Numerical evidence only -- results are conjecture data, labeled
// as such by the CLI. Throws InconsistencyError if an objective <= 1 is
// ever observed.
OptimizeResult minimize_stam_product(const OptimizeOptions& options);

// Exhaustive simplex grid scan of N_d * I_d, the oracle for the optimizer.
// Supports 2 and 3 only; step in (0, 0.1].
OptimizeResult brute_force_grid(std::size_t support, double step);

}  // namespace dfi
