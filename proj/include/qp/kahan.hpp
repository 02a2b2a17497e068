#pragma once

#ifdef __FAST_MATH__
#error "-ffast-math would defeat compensated summation"
#endif

namespace qp {

// Kahan-Neumaier compensated accumulator.  Running error stays O(eps)
// independent of the number of terms, which is what the reciprocal-sum
// tables need at their printed precision.
class KahanSum {
public:
    KahanSum() = default;
    explicit KahanSum(double init) : sum_(init) {}

    void add(double v) {
        const double t = sum_ + v;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }

    KahanSum& operator+=(double v) { add(v); return *this; }

    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace qp
