#pragma once

#include <cmath>

namespace divkit {

// Neumaier variant of Kahan summation; robust when addends exceed the running sum.
template <typename Real>
class CompensatedSum {
public:
    CompensatedSum& operator+=(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

}  // namespace divkit
