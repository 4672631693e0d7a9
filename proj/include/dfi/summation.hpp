#pragma once

#include <cmath>

namespace dfi {

// Neumaier variant of compensated summation; left-to-right and
// deterministic. Series here can run to ~10^7 terms, where naive
// accumulation would eat into the 1e-12..1e-14 tolerances.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace dfi
