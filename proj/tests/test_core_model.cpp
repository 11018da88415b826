#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dlz/core_model.hpp"
#include "dlz/errors.hpp"

using namespace dlz;
using doctest::Approx;

TEST_CASE("evaluate_drive is v t + eps0") {
    CHECK(evaluate_drive(SweepProtocol(0.5), 0.0) == 0.0);
    CHECK(evaluate_drive(SweepProtocol(0.5), -160.0) == -80.0);
    CHECK(evaluate_drive(SweepProtocol(0.3), 10.0) == Approx(3.0).epsilon(1e-15));
    CHECK(evaluate_drive(SweepProtocol(0.3, 1.25), 10.0) == Approx(4.25).epsilon(1e-15));
}

TEST_CASE("sweep window ends at -+ span") {
    const SweepProtocol p(0.7, 0.4, 80.0);
    CHECK(p.half_window() == Approx(80.0 / 0.7).epsilon(1e-15));
    CHECK(evaluate_drive(p, p.t_begin()) == Approx(-80.0 + 0.4).epsilon(1e-14));
    CHECK(evaluate_drive(p, p.t_end()) == Approx(80.0 + 0.4).epsilon(1e-14));
    CHECK(p.max_splitting() == Approx(std::hypot(1.0, 80.4)).epsilon(1e-15));
    CHECK(SweepProtocol(1.0).span_product() == 80.0);
}

TEST_CASE("invalid sweep protocols are rejected") {
    CHECK_THROWS_AS(SweepProtocol(0.0), ValidationError);
    CHECK_THROWS_AS(SweepProtocol(-1.0), ValidationError);
    CHECK_THROWS_AS(SweepProtocol(1.0, 0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(SweepProtocol(1.0, 0.0, -5.0), ValidationError);
    CHECK_THROWS_AS(SweepProtocol(std::nan(""), 0.0), ValidationError);
    CHECK_THROWS_AS(SweepProtocol(1e-320), ValidationError); // t0 overflows
}

TEST_CASE("frame quantities at reference points") {
    SUBCASE("symmetric point") {
        const auto fq = frame_at(SweepProtocol(0.5), 0.0);
        CHECK(fq.phi == 0.0);
        CHECK(fq.splitting == 1.0);
        CHECK(fq.f1 == 0.0);
        CHECK(fq.f2 == 1.0);
        CHECK(fq.phi_dot == Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("eps = Delta") {
        const auto fq = frame_at(SweepProtocol(1.0), 1.0);
        CHECK(fq.phi == Approx(std::numbers::pi / 4).epsilon(1e-15));
        CHECK(fq.splitting == Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(fq.f1 == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(fq.f2 == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("start of the default sweep") {
        // mpmath, 30 digits: sqrt(6401), atan(-80), 0.5/6401
        const auto fq = frame_at(SweepProtocol(0.5), -160.0);
        CHECK(fq.eps == -80.0);
        CHECK(fq.splitting == Approx(80.0062497558784466).epsilon(1e-15));
        CHECK(fq.phi == Approx(-1.55829697777553494).epsilon(1e-15));
        CHECK(fq.phi_dot == Approx(7.81127948758006561e-5).epsilon(1e-14));
    }
}

TEST_CASE("static frame has no inertial term") {
    const auto fq = static_frame(2.0, 3.0);
    CHECK(fq.t == 3.0);
    CHECK(fq.phi_dot == 0.0);
    CHECK(fq.splitting == Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("frame invariants hold across random sweeps") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_v(std::log(0.01), std::log(10.0));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const SweepProtocol p(std::exp(log_v(rng)), 0.0);
        const double t = unit(rng) * p.half_window();
        const auto fq = frame_at(p, t);
        CHECK(fq.splitting >= 1.0);
        CHECK(fq.splitting * std::abs(fq.f1) == Approx(std::abs(fq.eps)).epsilon(1e-12));
        CHECK(fq.splitting * fq.f2 == Approx(1.0).epsilon(1e-12));
        CHECK(fq.f1 * fq.f1 + fq.f2 * fq.f2 == Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(fq.phi) < std::numbers::pi / 2);
        CHECK(std::sin(fq.phi) == Approx(fq.f1).epsilon(1e-12));
        CHECK(std::cos(fq.phi) == Approx(fq.f2).epsilon(1e-12));
    }
}

TEST_CASE("phi_dot matches a central difference of phi") {
    const double h = 1e-5;
    for (double v : {0.5, 2.0, 10.0}) {
        const SweepProtocol p(v);
        for (int k = 0; k <= 400; ++k) {
            const double t = p.t_begin() + (p.t_end() - p.t_begin()) * k / 400.0;
            const double fd = (frame_at(p, t + h).phi - frame_at(p, t - h).phi) / (2 * h);
            const double exact = frame_at(p, t).phi_dot;
            CHECK(std::abs(fd - exact) / exact < 1e-6);
        }
    }
}

TEST_CASE("phi_dot peaks at the crossing and decays with |eps|") {
    const SweepProtocol p(0.8);
    CHECK(frame_at(p, 0.0).phi_dot == Approx(0.8).epsilon(1e-15));
    double previous = frame_at(p, 0.0).phi_dot;
    for (int k = 1; k <= 200; ++k) {
        const double t = p.t_end() * k / 200.0;
        const double right = frame_at(p, t).phi_dot;
        const double left = frame_at(p, -t).phi_dot;
        CHECK(right < previous);
        CHECK(left == Approx(right).epsilon(1e-15));
        previous = right;
    }
}
