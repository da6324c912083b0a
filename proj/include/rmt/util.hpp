#pragma once

#include <cmath>
#include <string>

namespace rmt {

// Neumaier-compensated accumulator. Panel sums and series sums go through
// this so results are independent of harmless reorderings at the eps level.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// 17 significant digits: round-trips exactly through strtod.
std::string fmt17(double v);

// True if x is within atol of some integer.
bool near_integer(double x, double atol = 1e-12);

} // namespace rmt
