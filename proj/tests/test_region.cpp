#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/region.hpp"

using namespace orbitlab;

namespace {

Box unit_square() { return Box(Rational(0), Rational(0), Rational(1), Rational(1)); }

OpenRegion random_region(std::mt19937_64& rng, int max_rects = 4) {
    auto pick = [&](long long n) { return (long long)(rng() % (std::uint64_t)n); };
    std::vector<Box> rects;
    int n = 1 + (int)pick(max_rects);
    for (int i = 0; i < n; ++i) {
        long long x0 = pick(8), y0 = pick(8);
        long long x1 = x0 + 1 + pick(8 - x0), y1 = y0 + 1 + pick(8 - y0);
        rects.push_back(
            Box(Rational(x0, 8), Rational(y0, 8), Rational(x1, 8), Rational(y1, 8)));
    }
    return OpenRegion(std::move(rects));
}

RatPoint random_point(std::mt19937_64& rng) {
    auto pick = [&](long long n) { return (long long)(rng() % (std::uint64_t)n); };
    return {Rational(pick(65) - 16, 32), Rational(pick(65) - 16, 32)};
}

}  // namespace

TEST_CASE("union and intersection examples") {
    OpenRegion sq = OpenRegion::box(unit_square());
    CHECK(region_union(sq, sq).area() == Rational(1));
    OpenRegion other = OpenRegion::box(Box(Rational(1), Rational(0), Rational(2), Rational(1)));
    CHECK(region_intersect(sq, other).is_empty());
    OpenRegion overlap =
        OpenRegion::box(Box(Rational(1, 2), Rational(0), Rational(2), Rational(1)));
    CHECK(region_intersect(sq, overlap).area() == Rational(1, 2));
}

TEST_CASE("open membership excludes boundaries") {
    OpenRegion sq = OpenRegion::box(unit_square());
    CHECK(sq.contains_point({Rational(1, 2), Rational(1, 2)}));
    CHECK(!sq.contains_point({Rational(0), Rational(1, 2)}));
    CHECK(!OpenRegion::empty().contains_point({Rational(0), Rational(0)}));
}

TEST_CASE("adjacent open rectangles do not cover the shared edge") {
    OpenRegion two = OpenRegion({Box(Rational(0), Rational(0), Rational(1), Rational(1)),
                                 Box(Rational(1), Rational(0), Rational(2), Rational(1))});
    CHECK(two.area() == Rational(2));
    CHECK(!two.contains_point({Rational(1), Rational(1, 2)}));
    // The trace on the dividing segment has zero length.
    Box seg(Rational(1), Rational(0), Rational(1), Rational(1));
    CHECK(two.length_on_segment(seg) == Rational(0));
}

TEST_CASE("dilation acts on box closures") {
    OpenRegion pt = OpenRegion::box(Box(Rational(0), Rational(0), Rational(0), Rational(0)));
    OpenRegion ball = pt.dilate(Rational(1));
    CHECK(ball.rects().size() == 1);
    CHECK(ball.rects()[0] == Box(Rational(-1), Rational(-1), Rational(1), Rational(1)));

    OpenRegion sq = OpenRegion::box(unit_square());
    OpenRegion grown = sq.dilate(Rational(1, 2));
    CHECK(grown.rects()[0] ==
          Box(Rational(-1, 2), Rational(-1, 2), Rational(3, 2), Rational(3, 2)));

    CHECK(OpenRegion::empty().dilate(Rational(1)).is_empty());
    CHECK_THROWS_AS(sq.dilate(Rational(0)), NonpositiveRadiusError);
}

TEST_CASE("deleted ball covers the square minus its center") {
    RatPoint c{Rational(0), Rational(0)};
    OpenRegion del = OpenRegion::deleted_ball(c, Rational(1, 2));
    CHECK(!del.contains_point(c));
    CHECK(del.contains_point({Rational(1, 4), Rational(1, 4)}));
    CHECK(del.contains_point({Rational(0), Rational(1, 4)}));
    CHECK(del.area() == Rational(1));
}

TEST_CASE("segment trace is open in the cross direction") {
    OpenRegion sq = OpenRegion::box(unit_square());
    // Segment on the boundary line collects nothing.
    CHECK(sq.length_on_segment(Box(Rational(0), Rational(0), Rational(1), Rational(0))) ==
          Rational(0));
    // Interior horizontal line.
    CHECK(sq.length_on_segment(Box(Rational(0), Rational(1, 2), Rational(1), Rational(1, 2))) ==
          Rational(1));
    // Overlapping rectangles must not double count.
    OpenRegion two = OpenRegion({unit_square(), Box(Rational(1, 2), Rational(0), Rational(2),
                                                    Rational(1))});
    CHECK(two.length_on_segment(Box(Rational(0), Rational(1, 2), Rational(2), Rational(1, 2))) ==
          Rational(2));
}

TEST_CASE("boolean laws by membership sampling") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        OpenRegion a = random_region(rng), b = random_region(rng), c = random_region(rng);
        OpenRegion lhs = region_intersect(region_union(a, b), c);
        OpenRegion rhs = region_union(region_intersect(a, c), region_intersect(b, c));
        OpenRegion de_l = region_intersect(a, region_intersect(b, c));
        OpenRegion de_r = region_intersect(region_intersect(a, b), c);
        for (int s = 0; s < 12; ++s) {
            RatPoint p = random_point(rng);
            bool in_a = a.contains_point(p), in_b = b.contains_point(p),
                 in_c = c.contains_point(p);
            CHECK(lhs.contains_point(p) == ((in_a || in_b) && in_c));
            CHECK(rhs.contains_point(p) == ((in_a && in_c) || (in_b && in_c)));
            CHECK(de_l.contains_point(p) == de_r.contains_point(p));
        }
        CHECK(lhs.area() == rhs.area());
    }
}

TEST_CASE("dilation is monotone and nearly additive") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        OpenRegion a = random_region(rng);
        Rational r(1, 4), s(1, 8);
        OpenRegion big = a.dilate(r + s);
        OpenRegion nested = a.dilate(r).dilate(s);
        for (int t = 0; t < 10; ++t) {
            RatPoint p = random_point(rng);
            if (a.contains_point(p)) CHECK(a.dilate(r).contains_point(p));
            if (big.contains_point(p)) CHECK(nested.contains_point(p));
        }
        // Equality for a single rectangle.
        OpenRegion one = OpenRegion::box(a.rects()[0]);
        CHECK(one.dilate(r).dilate(s).rects()[0] == one.dilate(r + s).rects()[0]);
    }
}

TEST_CASE("half-open decomposition is disjoint and exhaustive") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        OpenRegion a = random_region(rng);
        const auto& cells = a.half_open_cells();
        Rational sum(0);
        for (const Box& c : cells) sum += c.area();
        CHECK(sum == a.area());
        for (size_t u = 0; u < cells.size(); ++u)
            for (size_t v = u + 1; v < cells.size(); ++v) {
                const Box &p = cells[u], &q = cells[v];
                bool overlap = p.x0 < q.x1 && q.x0 < p.x1 && p.y0 < q.y1 && q.y0 < p.y1;
                CHECK(!overlap);
            }
    }
}
