#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace mobius;
using support::octahedron;
using support::icosahedron;

namespace {

SimplicialSurface two_triangle_square() {
    return SimplicialSurface({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}},
                             {{0, 1, 2}, {0, 2, 3}});
}

}  // namespace

TEST_CASE("halfedge connectivity") {
    SimplicialSurface octa = octahedron();
    CHECK(octa.vertex_count() == 6);
    CHECK(octa.edge_count() == 12);
    CHECK(octa.face_count() == 8);
    for (int v = 0; v < 6; ++v) {
        CHECK(octa.is_interior_vertex(v));
        CHECK(octa.vertex_degree(v) == 4);
        // Counterclockwise star closes up.
        const auto& star = octa.vertex_star(v);
        for (size_t i = 0; i < star.size(); ++i) {
            CHECK(octa.he_origin(star[i]) == v);
            CHECK(octa.he_twin(octa.he_prev(star[i])) == int(star[(i + 1) % star.size()]));
        }
    }
    SUBCASE("boundary") {
        SimplicialSurface square = two_triangle_square();
        CHECK(square.edge_count() == 5);
        for (int v = 0; v < 4; ++v) CHECK_FALSE(square.is_interior_vertex(v));
        int interior_edges = 0;
        for (int e = 0; e < square.edge_count(); ++e) {
            interior_edges += square.is_interior_edge(e);
        }
        CHECK(interior_edges == 1);
        // Boundary vertex star starts at the boundary halfedge.
        for (int v = 0; v < 4; ++v) {
            CHECK(square.he_twin(square.vertex_star(v).front()) == -1);
        }
    }
    SUBCASE("non-manifold input is rejected") {
        CHECK_THROWS_AS(SimplicialSurface({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                          {{0, 1, 2}, {0, 1, 3}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(SimplicialSurface({{0, 0, 0}, {1, 0, 0}}, {{0, 1, 1}}),
                        std::invalid_argument);
    }
}

TEST_CASE("circumcircles and circumspheres") {
    SimplicialSurface octa = octahedron();
    SUBCASE("face circumcircles pass through their vertices") {
        for (int f = 0; f < octa.face_count(); ++f) {
            Circle c = circumcircle(octa, f);
            for (int v : octa.triangles()[f]) {
                CHECK(incident(c, PointS3(octa.position(v))));
            }
        }
    }
    SUBCASE("octahedron circumspheres are the outward unit sphere") {
        for (int e = 0; e < octa.edge_count(); ++e) {
            Sphere2 s = circumsphere(octa, e);
            auto geo = std::get<RoundSphereGeometry>(sphere_geometry(s));
            CHECK(geo.center.norm() < 1e-10);
            CHECK(geo.radius == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(geo.mean_curvature > 0);
        }
    }
    SUBCASE("jittered circumsphere contains the four flap vertices") {
        std::mt19937_64 rng(83);
        SimplicialSurface mesh = support::jitter(support::subdivide_project(octa), 0.03, rng);
        for (int e = 0; e < mesh.edge_count(); ++e) {
            Sphere2 s = circumsphere(mesh, e);
            int h = mesh.edge(e).halfedge;
            int ht = mesh.he_twin(h);
            for (int v : {mesh.he_origin(h), mesh.he_target(h),
                          mesh.he_target(mesh.he_next(h)),
                          mesh.he_target(mesh.he_next(ht))}) {
                CHECK(incident(s, PointS3(mesh.position(v)), 1e-7));
            }
        }
    }
    SUBCASE("concircular flap is degenerate") {
        SimplicialSurface square = two_triangle_square();
        int diag = -1;
        for (int e = 0; e < square.edge_count(); ++e) {
            if (square.is_interior_edge(e)) diag = e;
        }
        CHECK_THROWS_AS(circumsphere(square, diag), DegenerateEdgeError);
        CHECK(beta(square, diag).value() == doctest::Approx(0.0));
    }
    SUBCASE("coplanar but not concircular flap gives a plane") {
        SimplicialSurface quad({{0, 0, 0}, {1, 0, 0}, {1.3, 1.7, 0}, {-0.2, 0.9, 0}},
                               {{0, 1, 2}, {0, 2, 3}});
        Sphere2 s = circumsphere(quad, quad.he_edge(2));  // the 0-2 diagonal
        CHECK(std::holds_alternative<PlaneGeometry>(sphere_geometry(s)));
    }
}

TEST_CASE("beta angles and Willmore energy") {
    SimplicialSurface octa = octahedron();
    SUBCASE("octahedron betas are right angles") {
        for (int e = 0; e < octa.edge_count(); ++e) {
            CHECK(beta(octa, e).value() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
        }
        for (int v = 0; v < octa.vertex_count(); ++v) {
            VertexEnergyReport r = willmore_vertex(octa, v);
            CHECK(std::abs(r.willmore) < 1e-10);
            CHECK(r.gauss_defect == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-12));
        }
        CHECK(std::abs(willmore_total(octa)) < 1e-10);
    }
    SUBCASE("betas match the inversion oracle on jittered meshes") {
        std::mt19937_64 rng(89);
        SimplicialSurface mesh =
            support::jitter(support::subdivide_project(icosahedron()), 0.04, rng);
        for (int e = 0; e < mesh.edge_count(); ++e) {
            CHECK(beta(mesh, e).value() ==
                  doctest::Approx(support::beta_oracle(mesh, e)).epsilon(1e-9));
        }
    }
    SUBCASE("energy vanishes exactly when the star stays on a sphere") {
        SimplicialSurface mesh = support::subdivide_project(octahedron());
        std::vector<ImQuaternion> pos = mesh.positions();
        // Vertex 0 has concyclic neighbours, so a radial move keeps the star
        // inscribed in some sphere and the energy stays zero.
        pos[0] = pos[0] * 1.05;
        mesh.set_positions(pos);
        CHECK(std::abs(willmore_vertex(mesh, 0).willmore) < 1e-10);
        // Breaking a neighbour off that sphere makes it strictly positive.
        int neighbour = mesh.he_target(mesh.vertex_star(0).front());
        pos[neighbour] = pos[neighbour] + ImQuaternion{0.02, -0.01, 0.03};
        mesh.set_positions(pos);
        VertexEnergyReport r = willmore_vertex(mesh, 0);
        CHECK(r.willmore > 1e-4);
        double oracle = -2 * std::numbers::pi;
        for (int h : mesh.vertex_star(0)) oracle += support::beta_oracle(mesh, mesh.he_edge(h));
        CHECK(r.willmore == doctest::Approx(oracle).epsilon(1e-10));
    }
    SUBCASE("boundary edges and vertices are excluded") {
        SimplicialSurface square = two_triangle_square();
        int boundary_edge = square.he_edge(square.vertex_star(1).front());
        CHECK_FALSE(beta(square, boundary_edge).has_value());
        CHECK_FALSE(gauss_defect(square, 0).has_value());
        CHECK_THROWS_AS(willmore_vertex(square, 0), std::domain_error);
    }
}

TEST_CASE("total angle defect satisfies Gauss-Bonnet") {
    std::mt19937_64 rng(97);
    SimplicialSurface mesh = support::jitter(support::subdivide_project(octahedron()), 0.02, rng);
    double total = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v) total += gauss_defect(mesh, v).value();
    CHECK(total == doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("Kagome complex combinatorics") {
    SUBCASE("single triangle") {
        SimplicialSurface tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
        KagomeComplex kc = build_kagome(tri);
        CHECK(kc.node_count == 3);
        CHECK(kc.arcs.size() == 3);
        CHECK(kc.face_cycles.size() == 1);
        CHECK(kc.vertex_cycles.empty());
    }
    SUBCASE("tetrahedron") {
        SimplicialSurface tet({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                              {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}});
        KagomeComplex kc = build_kagome(tet);
        CHECK(kc.node_count == 6);
        CHECK(kc.arcs.size() == 12);
        CHECK(kc.face_cycles.size() == 4);
        CHECK(kc.vertex_cycles.size() == 4);
    }
    SUBCASE("arcs chain around vertex cycles") {
        std::mt19937_64 rng(101);
        SimplicialSurface mesh =
            support::jitter(support::subdivide_project(icosahedron()), 0.05, rng);
        KagomeComplex kc = build_kagome(mesh);
        CHECK(int(kc.arcs.size()) == 3 * mesh.face_count());
        for (size_t c = 0; c < kc.vertex_cycles.size(); ++c) {
            const auto& cycle = kc.vertex_cycles[c];
            CHECK(int(cycle.size()) == mesh.vertex_degree(kc.vertex_of_cycle[c]));
            for (size_t i = 0; i < cycle.size(); ++i) {
                const auto& arc = kc.arcs[cycle[i]];
                const auto& next = kc.arcs[cycle[(i + 1) % cycle.size()]];
                CHECK(arc.corner_vertex == kc.vertex_of_cycle[c]);
                CHECK(arc.target_node == next.source_node);
            }
        }
    }
}
