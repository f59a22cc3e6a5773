#pragma once

#include <mobius/mesh.hpp>

#include <vector>

namespace mobius {

struct FlowConfig {
    int max_steps = 100;
    double step_init = 1e-2;  // first trial step length, fraction of bbox diagonal
    double armijo_c = 1e-4;
    double shrink = 0.5;
    double fd_step = 1e-6;    // finite difference step, fraction of bbox diagonal
    double grad_tol = 1e-10;  // stop when the gradient norm falls below this
    int max_shrinks = 40;
    std::vector<int> fixed_vertices;
};

/// Central finite differences of the total energy, evaluated through local
/// beta recomputation around each vertex. Zero at fixed vertices.
std::vector<ImQuaternion> energy_gradient(const SimplicialSurface& mesh,
                                          const FlowConfig& config = {});

struct FlowResult {
    int steps_taken = 0;
    bool converged = false;          // gradient dropped below grad_tol
    bool line_search_failed = false;
    std::vector<double> energy_trace;  // initial energy plus one entry per step
};

/// Gradient descent with Armijo backtracking; updates the mesh in place.
FlowResult flow(SimplicialSurface& mesh, const FlowConfig& config = {});

/// Normalized sum of the three edge circumspheres of a face. Throws
/// std::domain_error when the sum is not spacelike.
Sphere2 harmonic_mean_face_sphere(const SimplicialSurface& mesh, int face);

}  // namespace mobius
