#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace mobius;

namespace {

double directional_difference(SimplicialSurface mesh, const std::vector<ImQuaternion>& dir,
                              double h) {
    std::vector<ImQuaternion> base = mesh.positions();
    std::vector<ImQuaternion> moved(base.size());
    for (size_t v = 0; v < base.size(); ++v) moved[v] = base[v] + dir[v] * h;
    mesh.set_positions(moved);
    double ep = willmore_total(mesh);
    for (size_t v = 0; v < base.size(); ++v) moved[v] = base[v] - dir[v] * h;
    mesh.set_positions(moved);
    double em = willmore_total(mesh);
    return (ep - em) / (2 * h);
}

}  // namespace

TEST_CASE("gradient consistency against a full energy difference") {
    std::mt19937_64 rng(139);
    SimplicialSurface mesh =
        support::jitter(support::subdivide_project(support::octahedron()), 0.03, rng);
    std::vector<ImQuaternion> grad = energy_gradient(mesh);
    double h = 1e-5 * mesh.bbox_diagonal();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ImQuaternion> dir(mesh.vertex_count());
        for (auto& d : dir) d = support::rand_vec(rng);
        double analytic = 0;
        for (int v = 0; v < mesh.vertex_count(); ++v) analytic += dot(grad[v], dir[v]);
        double fd = directional_difference(mesh, dir, h);
        CHECK(std::abs(analytic - fd) / (1 + std::abs(analytic)) < 1e-4);
    }
    SUBCASE("translation invariance: components sum to zero") {
        for (int axis = 0; axis < 3; ++axis) {
            double sum = 0;
            for (const auto& g : grad) sum += axis == 0 ? g.x : axis == 1 ? g.y : g.z;
            CHECK(std::abs(sum) < 1e-6);
        }
    }
    SUBCASE("gradient is orthogonal to the Moebius symmetry directions") {
        // Velocity fields of sp(1,1) elements are energy-neutral.
        for (int trial = 0; trial < 10; ++trial) {
            QMat2 m{support::rand_quat(rng), support::rand_quat(rng),
                    support::rand_quat(rng), support::rand_quat(rng)};
            MoebiusVectorFieldElem y((m - adjoint_star(m)) * 0.5);
            std::vector<ImQuaternion> dir(mesh.vertex_count());
            double scale = 0;
            for (int v = 0; v < mesh.vertex_count(); ++v) {
                dir[v] = vector_field_at(y, PointS3(mesh.position(v)));
                scale = std::max(scale, dir[v].norm());
            }
            double along = 0;
            for (int v = 0; v < mesh.vertex_count(); ++v) along += dot(grad[v], dir[v]);
            double gn = 0;
            for (const auto& g : grad) gn += g.norm2();
            CHECK(std::abs(along) < 1e-4 * (1 + std::sqrt(gn) * scale));
        }
    }
}

TEST_CASE("fixed vertices have zero gradient and never move") {
    std::mt19937_64 rng(149);
    SimplicialSurface mesh =
        support::jitter(support::subdivide_project(support::octahedron()), 0.03, rng);
    FlowConfig config;
    config.fixed_vertices = {0, 5, 7};
    config.max_steps = 3;
    std::vector<ImQuaternion> grad = energy_gradient(mesh, config);
    for (int v : config.fixed_vertices) CHECK(grad[v].norm() == 0);

    std::vector<ImQuaternion> before = mesh.positions();
    flow(mesh, config);
    for (int v : config.fixed_vertices) {
        CHECK(mesh.position(v).x == before[v].x);
        CHECK(mesh.position(v).y == before[v].y);
        CHECK(mesh.position(v).z == before[v].z);
    }
}

TEST_CASE("descent reduces the energy monotonically") {
    std::mt19937_64 rng(151);
    SimplicialSurface mesh =
        support::jitter(support::subdivide_project(support::octahedron()), 0.02, rng);
    FlowConfig config;
    config.max_steps = 15;
    FlowResult result = flow(mesh, config);
    CHECK(result.steps_taken > 0);
    CHECK_FALSE(result.line_search_failed);
    for (size_t i = 1; i < result.energy_trace.size(); ++i) {
        CHECK(result.energy_trace[i] <= result.energy_trace[i - 1]);
    }
    CHECK(result.energy_trace.back() < 0.5 * result.energy_trace.front());

    SUBCASE("zero steps leaves the mesh untouched") {
        SimplicialSurface copy = mesh;
        FlowConfig none;
        none.max_steps = 0;
        FlowResult r = flow(copy, none);
        CHECK(r.steps_taken == 0);
        CHECK(r.energy_trace.size() == 1);
        CHECK((copy.position(3) - mesh.position(3)).norm() == 0);
    }
}

TEST_CASE("invalid configurations are rejected") {
    SimplicialSurface octa = support::octahedron();
    FlowConfig bad;
    bad.armijo_c = 1.5;
    CHECK_THROWS_AS(flow(octa, bad), std::invalid_argument);
    bad = {};
    bad.shrink = 0;
    CHECK_THROWS_AS(energy_gradient(octa, bad), std::invalid_argument);
}

TEST_CASE("harmonic mean face spheres") {
    SUBCASE("octahedron: all edge circumspheres agree") {
        SimplicialSurface octa = support::octahedron();
        for (int f = 0; f < octa.face_count(); ++f) {
            Sphere2 s = harmonic_mean_face_sphere(octa, f);
            auto geo = std::get<RoundSphereGeometry>(sphere_geometry(s));
            CHECK(geo.center.norm() < 1e-10);
            CHECK(geo.radius == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("membership on jittered meshes") {
        std::mt19937_64 rng(157);
        SimplicialSurface mesh =
            support::jitter(support::subdivide_project(support::icosahedron()), 0.04, rng);
        for (int f = 0; f < mesh.face_count(); f += 5) {
            Sphere2 s = harmonic_mean_face_sphere(mesh, f);
            CHECK(Sphere2::is_member(s.matrix(), 1e-8));
            // The face sphere stays close to the face: its three vertices
            // are nearly incident for mild jitter, not exactly.
            CHECK(s.matrix().fnorm() > 0);
        }
    }
}
