#include "rlsd/gamma_range.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rlsd {

IntervalUnion IntervalUnion::normalized(std::vector<Interval> parts) {
    std::vector<Interval> kept;
    for (const Interval& iv : parts) {
        if (iv.empty()) continue;
        if (iv.lo < 0) throw InvalidInputError("interval union: negative endpoint");
        kept.push_back(iv);
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return !a.lo_open && b.lo_open;  // closed endpoint first
    });

    IntervalUnion u;
    for (const Interval& iv : kept) {
        if (!u.parts_.empty()) {
            Interval& last = u.parts_.back();
            const bool overlaps = iv.lo < last.hi;
            const bool touches = iv.lo == last.hi && (!last.hi_open || !iv.lo_open);
            if (overlaps || touches) {
                if (iv.hi > last.hi) {
                    last.hi = iv.hi;
                    last.hi_open = iv.hi_open;
                } else if (iv.hi == last.hi) {
                    last.hi_open = last.hi_open && iv.hi_open;
                }
                continue;
            }
        }
        u.parts_.push_back(iv);
    }
    return u;
}

bool IntervalUnion::contains(double x) const {
    for (const Interval& iv : parts_)
        if (iv.contains(x)) return true;
    return false;
}

namespace {

std::string format_endpoint(double v) {
    if (std::isinf(v)) return "+inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::string IntervalUnion::display() const {
    if (parts_.empty()) return "∅";
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
        const Interval& iv = parts_[i];
        if (i > 0) out += "∪";
        out += iv.lo_open ? '(' : '[';
        out += format_endpoint(iv.lo);
        out += ',';
        out += format_endpoint(iv.hi);
        out += (iv.hi_open || std::isinf(iv.hi)) ? ')' : ']';
    }
    return out;
}

void GammaRangeParams::validate() const {
    if (!(sigma > 0) || !std::isfinite(sigma))
        throw InvalidInputError("gamma range: sigma must be positive and finite");
    if (!(lips >= sigma) || !std::isfinite(lips))
        throw InvalidInputError("gamma range: need sigma <= L < inf");
    if (!(eta1 > 2) || !(eta2 > 2))
        throw InvalidInputError("gamma range: eta1 and eta2 must exceed 2");
}

std::array<Interval, 3> gamma_range_components(const GammaRangeParams& params) {
    params.validate();
    const double s = params.sigma;
    const double l = params.lips;
    const double e1 = params.eta1;
    const double e2 = params.eta2;

    const double low_a = 4.0 * s / e2;
    const double low_b = s * (e2 - 2.0) / (4.0 * e2) +
                         std::sqrt(s * s * (e2 - 2.0) * (e2 - 2.0) / (16.0 * e2 * e2) +
                                   s * s * (e2 - 2.0) / (4.0 * e2));
    Interval first{0.0, std::min(low_a, low_b), true, true};

    Interval second{std::sqrt(s * s + 2.0 * l * l / (e1 - 2.0)) - s, 4.0 * s / e1, true, false};

    Interval third{0.5 * (std::sqrt(s * s + 8.0 * l * l) - s),
                   std::numeric_limits<double>::infinity(), true, true};

    return {first, second, third};
}

IntervalUnion admissible_gamma_range(const GammaRangeParams& params) {
    auto parts = gamma_range_components(params);
    return IntervalUnion::normalized({parts.begin(), parts.end()});
}

std::vector<CanonicalRange> canonical_coverage(double gamma) {
    if (!(gamma > 0)) throw InvalidInputError("coverage: gamma must be > 0");
    std::vector<CanonicalRange> out;
    if (gamma > 1.0) out.push_back(CanonicalRange::High);
    if (gamma > std::sqrt(2.0) - 1.0 && gamma <= 1.0) out.push_back(CanonicalRange::Mid);
    if (gamma <= 0.5) out.push_back(CanonicalRange::Low);
    return out;
}

}  // namespace rlsd
