#include <cmath>

#include "doctest.h"
#include "rlsd/gamma_range.hpp"
#include "rlsd/rng.hpp"

using namespace rlsd;

namespace {

// Direct evaluation of the three defining conditions, independent of the
// normalized union.
bool admissible_direct(double g, double s, double l, double e1, double e2) {
    const double first_hi =
        std::min(4.0 * s / e2, s * (e2 - 2.0) / (4.0 * e2) +
                                   std::sqrt(s * s * (e2 - 2.0) * (e2 - 2.0) / (16.0 * e2 * e2) +
                                             s * s * (e2 - 2.0) / (4.0 * e2)));
    if (g > 0 && g < first_hi) return true;
    const double second_lo = std::sqrt(s * s + 2.0 * l * l / (e1 - 2.0)) - s;
    if (g > second_lo && g <= 4.0 * s / e1) return true;
    return g > 0.5 * (std::sqrt(s * s + 8.0 * l * l) - s);
}

}  // namespace

TEST_CASE("admissible range reproduces the seven tabulated parameter sets") {
    struct Row {
        GammaRangeParams params;
        bool full;  // whole positive axis
    };
    const Row rows[] = {
        {{2.0, 2.1, 3.5, 6.5}, true},  {{14.0, 15.0, 3.5, 6.5}, true},
        {{50.0, 52.0, 3.5, 5.0}, true}, {{70.0, 74.0, 3.7, 7.0}, true},
        {{200.0, 205.0, 3.8, 8.0}, true}, {{500.0, 505.0, 3.9, 6.0}, true},
        {{1.0, 1.0, 3.0, 4.0}, false},
    };
    for (const Row& row : rows) {
        IntervalUnion u = admissible_gamma_range(row.params);
        if (row.full) {
            REQUIRE(u.parts().size() == 1);
            CHECK(u.parts()[0].lo == 0.0);
            CHECK(std::isinf(u.parts()[0].hi));
            CHECK(u.display() == "(0,+inf)");
        } else {
            REQUIRE(u.parts().size() == 2);
            CHECK(u.parts()[0].lo == 0.0);
            CHECK(u.parts()[0].hi == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(u.parts()[0].hi_open);
            CHECK(u.parts()[1].lo ==
                  doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-12));
            CHECK(std::isinf(u.parts()[1].hi));
            CHECK(std::abs(u.parts()[1].lo - 0.7321) <= 1e-4);
            CHECK(u.display() == "(0,0.5)∪(0.7321,+inf)");
        }
    }
}

TEST_CASE("membership endpoint semantics") {
    GammaRangeParams params{1.0, 1.0, 3.0, 4.0};
    IntervalUnion u = admissible_gamma_range(params);
    CHECK_FALSE(u.contains(0.5));   // first interval is right-open
    CHECK_FALSE(u.contains(0.6));
    CHECK(u.contains(0.49));
    CHECK(u.contains(0.7322));
    CHECK(u.contains(1e6));

    // the raw second interval is right-closed at 4 sigma / eta1
    auto parts = gamma_range_components(params);
    CHECK(parts[1].contains(4.0 / 3.0));
    CHECK_FALSE(parts[1].contains(4.0 / 3.0 + 1e-12));
    CHECK(u.contains(4.0 / 3.0));
}

TEST_CASE("membership agrees with direct evaluation of the defining inequalities") {
    Rng rng(67);
    const GammaRangeParams sets[] = {
        {1.0, 1.0, 3.0, 4.0}, {2.0, 2.1, 3.5, 6.5}, {1.0, 4.0, 2.5, 9.0}, {0.7, 2.0, 5.0, 2.2}};
    for (const auto& params : sets) {
        IntervalUnion u = admissible_gamma_range(params);
        for (int trial = 0; trial < 10000; ++trial) {
            const double g = rng.uniform(1e-6, 30.0);
            CHECK(u.contains(g) ==
                  admissible_direct(g, params.sigma, params.lips, params.eta1, params.eta2));
        }
    }
}

TEST_CASE("normalized unions are sorted, disjoint and nonempty") {
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const double s = rng.uniform(0.1, 20.0);
        GammaRangeParams params{s, s * rng.uniform(1.0, 3.0), rng.uniform(2.01, 9.0),
                                rng.uniform(2.01, 9.0)};
        IntervalUnion u = admissible_gamma_range(params);
        REQUIRE(!u.parts().empty());
        for (size_t i = 0; i < u.parts().size(); ++i) {
            CHECK(u.parts()[i].lo < u.parts()[i].hi);
            if (i > 0) {
                const Interval& prev = u.parts()[i - 1];
                const Interval& cur = u.parts()[i];
                const bool gap = prev.hi < cur.lo ||
                                 (prev.hi == cur.lo && prev.hi_open && cur.lo_open);
                CHECK(gap);
            }
        }
    }
}

TEST_CASE("second and third left endpoints are nondecreasing in L") {
    Rng rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        const double s = rng.uniform(0.1, 10.0);
        const double e1 = rng.uniform(2.01, 8.0), e2 = rng.uniform(2.01, 8.0);
        const double l_small = s * rng.uniform(1.0, 2.0);
        const double l_big = l_small * rng.uniform(1.0, 2.0);
        auto small = gamma_range_components({s, l_small, e1, e2});
        auto big = gamma_range_components({s, l_big, e1, e2});
        CHECK(big[1].lo >= small[1].lo);
        CHECK(big[2].lo >= small[2].lo);
    }
}

TEST_CASE("interval union merge rules") {
    // touching with one closed endpoint merges
    IntervalUnion merged = IntervalUnion::normalized(
        {{0.0, 1.0, true, true}, {1.0, 2.0, false, true}});
    REQUIRE(merged.parts().size() == 1);
    CHECK(merged.parts()[0].hi == 2.0);

    // touching open-open stays split
    IntervalUnion split = IntervalUnion::normalized(
        {{0.0, 1.0, true, true}, {1.0, 2.0, true, true}});
    CHECK(split.parts().size() == 2);

    // containment collapses, closed endpoint wins on ties
    IntervalUnion contained = IntervalUnion::normalized(
        {{0.0, 3.0, true, true}, {1.0, 3.0, true, false}});
    REQUIRE(contained.parts().size() == 1);
    CHECK_FALSE(contained.parts()[0].hi_open);
    CHECK(contained.contains(3.0));
}

TEST_CASE("display rounding") {
    IntervalUnion u = IntervalUnion::normalized({{0.0, 0.73205080756887719, true, false}});
    CHECK(u.display() == "(0,0.7321]");
}

TEST_CASE("canonical coverage") {
    auto covers = [](double g) { return canonical_coverage(g); };
    CHECK(covers(2.0) == std::vector<CanonicalRange>{CanonicalRange::High});
    CHECK(covers(0.45) ==
          std::vector<CanonicalRange>{CanonicalRange::Mid, CanonicalRange::Low});
    CHECK(covers(1.0) == std::vector<CanonicalRange>{CanonicalRange::Mid});
    CHECK(covers(0.3) == std::vector<CanonicalRange>{CanonicalRange::Low});
    CHECK_THROWS_AS(canonical_coverage(0.0), InvalidInputError);

    Rng rng(79);
    for (int trial = 0; trial < 100000; ++trial)
        CHECK(!covers(rng.uniform(1e-9, 100.0)).empty());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(admissible_gamma_range({1.0, 1.0, 2.0, 4.0}), InvalidInputError);
    CHECK_THROWS_AS(admissible_gamma_range({1.0, 1.0, 3.0, 2.0}), InvalidInputError);
    CHECK_THROWS_AS(admissible_gamma_range({1.0, 0.5, 3.0, 4.0}), InvalidInputError);
    CHECK_THROWS_AS(admissible_gamma_range({-1.0, 1.0, 3.0, 4.0}), InvalidInputError);
}
