#pragma once

#include <array>
#include <string>
#include <vector>

#include "rlsd/errors.hpp"

namespace rlsd {

// Real interval with 0 <= lo < hi <= +inf and per-endpoint openness.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = true;
    bool hi_open = true;

    bool empty() const { return !(lo < hi); }
    bool contains(double x) const {
        if (x < lo || (x == lo && lo_open)) return false;
        if (x > hi || (x == hi && hi_open)) return false;
        return true;
    }
};

// Finite union of disjoint intervals, kept sorted and merged. Intervals are
// merged when they overlap or touch with at least one closed endpoint.
class IntervalUnion {
public:
    IntervalUnion() = default;
    static IntervalUnion normalized(std::vector<Interval> parts);

    bool contains(double x) const;
    const std::vector<Interval>& parts() const { return parts_; }

    // Table-style rendering with 4-decimal rounding, e.g. "(0,0.5)∪(0.7321,+inf)".
    std::string display() const;

private:
    std::vector<Interval> parts_;
};

struct GammaRangeParams {
    double sigma = 1.0;
    double lips = 1.0;
    double eta1 = 3.0;
    double eta2 = 4.0;

    void validate() const;  // sigma > 0, sigma <= lips, eta1 > 2, eta2 > 2
};

// The three defining intervals of the admissible range, pre-normalization:
//   [0] (0, min{4s/e2, s(e2-2)/(4e2) + sqrt(s^2(e2-2)^2/(16e2^2) + s^2(e2-2)/(4e2))})
//   [1] (sqrt(s^2 + 2L^2/(e1-2)) - s, 4s/e1]   (dropped when lo >= hi)
//   [2] ((sqrt(s^2 + 8L^2) - s)/2, +inf)
std::array<Interval, 3> gamma_range_components(const GammaRangeParams& params);

// Union of the three components, normalized.
IntervalUnion admissible_gamma_range(const GammaRangeParams& params);

// Penalty ranges under which the canonical f3 = 1/2|x3|^2 analysis certifies
// convergence: High (1,inf), Mid (sqrt(2)-1, 1], Low (0, 1/2]. Their union
// covers every gamma > 0; the Mid/Low ranges overlap on (sqrt(2)-1, 1/2].
enum class CanonicalRange { High, Mid, Low };

std::vector<CanonicalRange> canonical_coverage(double gamma);

}  // namespace rlsd
