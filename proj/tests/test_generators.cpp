#include <catch2/catch_amalgamated.hpp>

#include "finshape/generators.hpp"

using namespace finshape;

TEST_CASE("stage 1 is the designated single point") {
    SineStage s = generate_sine_curve(1);
    REQUIRE(s.points == std::vector<RatPoint>{{Rat(0), Rat(1, 4)}});
    REQUIRE(s.eps_sq == Rat(5));
}

TEST_CASE("stage 2 sample, exact point list") {
    SineStage s = generate_sine_curve(2);
    REQUIRE(s.eps_sq == Rat(1, 32));  // (sqrt(2)/8)^2
    // Grid spacing 1/4 intersected with the curve, plus the two odd
    // midpoints on the limit segment; 15 points, worked out by hand.
    std::vector<RatPoint> expected = {
        {Rat(0), Rat(0)},      {Rat(0), Rat(1, 8)},   {Rat(0), Rat(1, 4)},
        {Rat(0), Rat(3, 8)},   {Rat(0), Rat(1, 2)},   {Rat(1, 4), Rat(0)},
        {Rat(1, 4), Rat(1, 4)}, {Rat(1, 4), Rat(1, 2)}, {Rat(1, 2), Rat(0)},
        {Rat(1, 2), Rat(1, 4)}, {Rat(1, 2), Rat(1, 2)}, {Rat(3, 4), Rat(1, 2)},
        {Rat(1), Rat(0)},      {Rat(1), Rat(1, 4)},   {Rat(1), Rat(1, 2)}};
    REQUIRE(s.points == expected);
}

TEST_CASE("stage 3 contains the sixteen odd midpoints") {
    SineStage s = generate_sine_curve(3);
    REQUIRE(s.eps_sq == Rat(1, 2048));  // (sqrt(2)/64)^2
    for (int k = 0; k < 16; ++k) {
        RatPoint p{Rat(0), Rat(2 * k + 1, 64)};
        REQUIRE(std::find(s.points.begin(), s.points.end(), p) != s.points.end());
    }
    // The bottom joins put y = 0 points at x in [1/4, 1/2] on the grid.
    REQUIRE(std::find(s.points.begin(), s.points.end(), RatPoint{Rat(3, 8), Rat(0)}) !=
            s.points.end());
    // (3/8, 1/2) lies between the teeth at 1/4 and 1/2, off the top joins.
    REQUIRE(std::find(s.points.begin(), s.points.end(), RatPoint{Rat(3, 8), Rat(1, 2)}) ==
            s.points.end());
}

TEST_CASE("unsupported stages are rejected") {
    REQUIRE_THROWS_AS(generate_sine_curve(0), input_error);
    REQUIRE_THROWS_AS(generate_sine_curve(9), input_error);
    REQUIRE_THROWS_AS(generate_sine_curve(4), input_error);
    REQUIRE_NOTHROW(generate_sine_curve(4, true));
}

TEST_CASE("pipeline input designates each stage sample, coverage included") {
    SinePipelineInput in = sine_pipeline_input(3);
    REQUIRE(in.samples.size() == 3);
    REQUIRE(in.samples[0].size() == 1);
    REQUIRE(in.samples[1].size() == 15);
    in.schedule.validate();
    for (size_t n = 0; n < in.samples.size(); ++n)
        REQUIRE(is_epsilon_approximation(*in.space, in.samples[n],
                                         in.schedule.eps_sq[n]).covered);
}

TEST_CASE("circle and interval generators") {
    FiniteMetricSpace C = generate_circle(16);
    REQUIRE(C.size() == 16);
    // Adjacent chord 2 sin(pi/16).
    REQUIRE(std::sqrt(C.dist_sq(0, 1).value) == Catch::Approx(0.390180644).margin(1e-6));
    REQUIRE_THROWS_AS(generate_circle(2), input_error);

    FiniteMetricSpace I = generate_interval(64);
    REQUIRE(I.size() == 64);
    REQUIRE(I.dist_sq(0, 63).value == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(generate_interval(1), input_error);
}
