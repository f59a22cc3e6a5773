#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace mobius;

TEST_CASE("Hamilton product basis table") {
    Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    CHECK((i * j - k).norm() == doctest::Approx(0));
    CHECK((j * i + k).norm() == doctest::Approx(0));
    CHECK((i * i + Quaternion::real(1)).norm() == doctest::Approx(0));
    CHECK((i * j * k + Quaternion::real(1)).norm() == doctest::Approx(0));
}

TEST_CASE("conjugation and inverse") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Quaternion a = support::rand_quat(rng, 3.0);
        Quaternion b = support::rand_quat(rng, 3.0);
        CHECK(((a * b).conj() - b.conj() * a.conj()).norm() < 1e-12);
        CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()));
        if (a.norm() > 0.1) {
            CHECK((a * a.inverse() - Quaternion::real(1)).norm() < 1e-12);
        }
    }
    CHECK_THROWS_AS(Quaternion{}.inverse(), std::domain_error);
}

TEST_CASE("exp_im matches the Rodrigues rotation formula") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        ImQuaternion axis = support::rand_unit(rng);
        double angle = support::urand(rng, -3.0, 3.0);
        ImQuaternion v = support::rand_vec(rng, 2.0);
        // Unit quaternion exp(theta/2 axis) rotates by theta about axis.
        ImQuaternion got = rotate(exp_im(axis * (angle / 2)), v);
        ImQuaternion par = axis * dot(axis, v);
        ImQuaternion expect =
            par + (v - par) * std::cos(angle) + cross(axis, v) * std::sin(angle);
        CHECK((got - expect).norm() < 1e-12 * (1 + v.norm()));
    }
}

TEST_CASE("rotate is conformal with factor |q|^2") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        Quaternion q = support::rand_quat(rng, 2.0);
        if (q.norm() < 0.1) continue;
        ImQuaternion v = support::rand_vec(rng), w = support::rand_vec(rng);
        CHECK(dot(rotate(q, v), rotate(q, w)) ==
              doctest::Approx(q.norm2() * q.norm2() * dot(v, w)).epsilon(1e-10));
    }
}
