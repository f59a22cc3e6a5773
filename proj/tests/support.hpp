#pragma once

#include <mobius/connection.hpp>
#include <mobius/flow.hpp>
#include <mobius/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace support {

using namespace mobius;

inline double urand(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

inline ImQuaternion rand_vec(std::mt19937_64& rng, double scale = 1.0) {
    return {urand(rng, -scale, scale), urand(rng, -scale, scale), urand(rng, -scale, scale)};
}

inline ImQuaternion rand_unit(std::mt19937_64& rng) {
    for (;;) {
        ImQuaternion v = rand_vec(rng);
        double n = v.norm();
        if (n > 0.1 && n < 1.0) return v / n;
    }
}

inline Quaternion rand_quat(std::mt19937_64& rng, double scale = 1.0) {
    return {urand(rng, -scale, scale), urand(rng, -scale, scale), urand(rng, -scale, scale),
            urand(rng, -scale, scale)};
}

/// Random element of Sp(1,1) as a product of the three generator types.
inline MoebiusMap random_sp11(std::mt19937_64& rng) {
    Quaternion mu;
    do {
        mu = rand_quat(rng);
    } while (mu.norm() < 0.3);
    return inv_translation(rand_vec(rng, 0.5)) * stretch_rotation(mu) *
           translation(rand_vec(rng, 0.5));
}

inline Sphere2 random_sphere(std::mt19937_64& rng) {
    return sphere_from_point_normal_h(rand_vec(rng, 2.0), rand_unit(rng), urand(rng, -2, 2));
}

inline Circle random_circle(std::mt19937_64& rng) {
    ImQuaternion t = rand_unit(rng);
    ImQuaternion w = rand_vec(rng, 2.0);
    ImQuaternion kb = w - t * dot(w, t);
    return circle_from_point_tangent_binormal(rand_vec(rng, 2.0), t, kb);
}

inline SimplicialSurface octahedron() {
    std::vector<ImQuaternion> pos = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                     {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<std::array<int, 3>> tri = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                           {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    return SimplicialSurface(pos, tri);
}

inline SimplicialSurface icosahedron() {
    double p = (1 + std::sqrt(5.0)) / 2;
    double s = 1.0 / std::sqrt(1 + p * p);
    std::vector<ImQuaternion> pos = {
        {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p},  {0, 1, p},
        {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
    for (auto& v : pos) v = v * s;
    std::vector<std::array<int, 3>> tri = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1}};
    return SimplicialSurface(pos, tri);
}

/// Midpoint 1-to-4 subdivision with projection onto the sphere of the given
/// radius about the origin.
inline SimplicialSurface subdivide_project(const SimplicialSurface& mesh, double radius = 1.0) {
    std::vector<ImQuaternion> pos = mesh.positions();
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        std::pair<int, int> key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        int idx = int(pos.size());
        pos.push_back((pos[a] + pos[b]) * 0.5);
        midpoint.emplace(key, idx);
        return idx;
    };
    std::vector<std::array<int, 3>> tri;
    for (const auto& t : mesh.triangles()) {
        int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
        tri.push_back({t[0], ab, ca});
        tri.push_back({t[1], bc, ab});
        tri.push_back({t[2], ca, bc});
        tri.push_back({ab, bc, ca});
    }
    for (auto& v : pos) v = normalized(v) * radius;
    return SimplicialSurface(pos, tri);
}

inline SimplicialSurface jitter(const SimplicialSurface& mesh, double rel,
                                std::mt19937_64& rng) {
    double scale = mesh.bbox_diagonal() * 0.5;
    std::vector<ImQuaternion> pos = mesh.positions();
    for (auto& v : pos) v += rand_vec(rng, rel * scale);
    SimplicialSurface out = mesh;
    out.set_positions(pos);
    return out;
}

/// Random Sp(1,1) transform rejected until every transformed vertex stays in
/// a bounded affine chart; returns the moved positions.
inline std::vector<ImQuaternion> bounded_moebius_positions(const SimplicialSurface& mesh,
                                                           std::mt19937_64& rng) {
    double scale = mesh.bbox_diagonal();
    for (int attempt = 0; attempt < 200; ++attempt) {
        Quaternion mu{1 + urand(rng, -0.3, 0.3), urand(rng, -0.3, 0.3),
                      urand(rng, -0.3, 0.3), urand(rng, -0.3, 0.3)};
        MoebiusMap map = inv_translation(rand_vec(rng, 0.1 / scale)) * stretch_rotation(mu) *
                         translation(rand_vec(rng, 0.3 * scale));
        std::vector<ImQuaternion> moved(mesh.vertex_count());
        bool ok = true;
        for (int v = 0; v < mesh.vertex_count() && ok; ++v) {
            PointS3 q = map(PointS3(mesh.position(v)));
            ok = !q.is_infinity() && q.affine().norm() < 50 * scale;
            if (ok) moved[v] = q.affine();
        }
        if (ok) return moved;
    }
    throw std::runtime_error("could not sample a bounded Moebius transform");
}

/// Intersection angle of the two circumcircles at an interior edge computed
/// by inverting at the far endpoint, fully independent of the matrix model.
inline double beta_oracle(const SimplicialSurface& mesh, int edge) {
    int h = mesh.edge(edge).halfedge;
    int ht = mesh.he_twin(h);
    ImQuaternion fi = mesh.position(mesh.he_origin(h));
    ImQuaternion fj = mesh.position(mesh.he_target(h));
    ImQuaternion fk = mesh.position(mesh.he_target(mesh.he_next(h)));
    ImQuaternion fl = mesh.position(mesh.he_target(mesh.he_next(ht)));
    auto invert = [&](const ImQuaternion& x) {
        ImQuaternion d = x - fj;
        return d / d.norm2();
    };
    ImQuaternion a = invert(fk) - invert(fi);
    ImQuaternion b = invert(fl) - invert(fi);
    double angle = std::atan2(cross(a, b).norm(), dot(a, b));
    return std::numbers::pi - angle;
}

}  // namespace support
