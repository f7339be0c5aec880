#ifndef SPHDPP_SUMMATION_HPP
#define SPHDPP_SUMMATION_HPP

#include <cmath>

namespace sphdpp {

/// Neumaier compensated accumulator. Keeps the running error of a long sum
/// near one ulp of the result, independent of the number of terms.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& other) {
        add(other.sum_);
        comp_ += other.comp_;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace sphdpp

#endif
