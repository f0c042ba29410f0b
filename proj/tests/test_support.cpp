#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/support.hpp"

using namespace orbitlab;

namespace {

SupportSet segment_set(long long x0, long long y0, long long x1, long long y1, long long den = 1) {
    SupportSet s;
    s.add_box(Box(Rational(x0, den), Rational(y0, den), Rational(x1, den), Rational(y1, den)));
    return s;
}

SupportSet square_boundary(const Rational& x0, const Rational& y0, const Rational& x1,
                           const Rational& y1) {
    SupportSet s;
    s.add_box(Box(x0, y0, x1, y0));
    s.add_box(Box(x0, y1, x1, y1));
    s.add_box(Box(x0, y0, x0, y1));
    s.add_box(Box(x1, y0, x1, y1));
    return s;
}

}  // namespace

TEST_CASE("degenerate boxes are routed to segments and points") {
    SupportSet s;
    s.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(1)));
    s.add_box(Box(Rational(0), Rational(2), Rational(1), Rational(2)));
    s.add_box(Box(Rational(3), Rational(3), Rational(3), Rational(3)));
    CHECK(s.cells().size() == 1);
    CHECK(s.segs().size() == 1);
    CHECK(s.pts().size() == 1);
    CHECK(s.covers({Rational(1), Rational(1)}));
    CHECK(s.covers({Rational(1, 2), Rational(2)}));
    CHECK(s.covers({Rational(3), Rational(3)}));
    CHECK(!s.covers({Rational(2), Rational(2)}));
}

TEST_CASE("smallness fixtures") {
    CHECK(is_small(segment_set(0, 0, 1, 0)));
    SupportSet square;
    square.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(1)));
    CHECK(!is_small(square));
    SupportSet boundary =
        square_boundary(Rational(0), Rational(0), Rational(1), Rational(1));
    CHECK(!is_small(boundary));
    CHECK(complement_components(boundary) == 2);

    SupportSet empty;
    CHECK(is_small(empty));
    CHECK(complement_components(empty) == 1);
}

TEST_CASE("crossing segments stay small") {
    SupportSet cross;
    cross.add_box(Box(Rational(0), Rational(1, 2), Rational(1), Rational(1, 2)));
    cross.add_box(Box(Rational(1, 2), Rational(0), Rational(1, 2), Rational(1)));
    CHECK(is_small(cross));
}

TEST_CASE("nested boundaries count their chambers") {
    SupportSet nested = square_boundary(Rational(0), Rational(0), Rational(1), Rational(1));
    SupportSet inner =
        square_boundary(Rational(1, 4), Rational(1, 4), Rational(3, 4), Rational(3, 4));
    nested = nested.united(inner);
    CHECK(complement_components(nested) == 3);
    CHECK(!is_small(nested));
}

TEST_CASE("frame handling") {
    SupportSet seg = segment_set(0, 0, 1, 0);
    CHECK_THROWS_AS(is_small(seg, Box(Rational(0), Rational(-1), Rational(1), Rational(1))),
                    FrameTooSmallError);
    // A generous frame gives the same verdict as the default.
    CHECK(is_small(seg, Box(Rational(-5), Rational(-5), Rational(5), Rational(5))));
}

TEST_CASE("refinement stability on random segment sets") {
    std::mt19937_64 rng(3);
    auto pick = [&](long long n) { return (long long)(rng() % (std::uint64_t)n); };
    for (int i = 0; i < 200; ++i) {
        SupportSet s;
        int n = 1 + (int)pick(4);
        for (int t = 0; t < n; ++t) {
            long long c = pick(5), a = pick(4);
            long long b = a + 1 + pick(4 - a);
            if (pick(2) == 0)
                s.add_box(Box(Rational(a, 4), Rational(c, 4), Rational(b, 4), Rational(c, 4)));
            else
                s.add_box(Box(Rational(c, 4), Rational(a, 4), Rational(c, 4), Rational(b, 4)));
        }
        if (pick(2) == 0) s.add_point({Rational(pick(5), 4), Rational(pick(5), 4)});
        Box frame = s.default_frame();
        CHECK(is_small(s, frame, 0) == is_small(s, frame, 1));
        CHECK(complement_components(s, frame, 0) == complement_components(s, frame, 1));
    }
}

TEST_CASE("support subset and equality with witnesses") {
    SupportSet big;
    big.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(1)));
    SupportSet half;
    half.add_box(Box(Rational(0), Rational(0), Rational(1, 2), Rational(1)));
    CHECK(support_subset(half, big));
    CHECK(!support_subset(big, half));
    auto w = support_subset_witness(big, half);
    REQUIRE(w.has_value());
    CHECK(big.covers(*w));
    CHECK(!half.covers(*w));

    // Same set through different decompositions.
    SupportSet split;
    split.add_box(Box(Rational(0), Rational(0), Rational(1, 2), Rational(1)));
    split.add_box(Box(Rational(1, 2), Rational(0), Rational(1), Rational(1)));
    CHECK(support_equal(big, split));
}
