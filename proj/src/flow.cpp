#include <mobius/flow.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mobius {

namespace {

void validate(const FlowConfig& c) {
    if (c.armijo_c <= 0 || c.armijo_c >= 1 || c.shrink <= 0 || c.shrink >= 1 ||
        c.fd_step <= 0 || c.step_init <= 0 || c.max_steps < 0) {
        throw std::invalid_argument("invalid flow configuration");
    }
}

/// The total energy is sum over edges of w_e beta_e plus a constant, with
/// w_e = half the number of interior endpoints. Moving one vertex only
/// changes the betas of edges bounding its incident faces.
struct LocalStencil {
    std::vector<int> edges;
    std::vector<double> weights;
};

LocalStencil stencil_for_vertex(const SimplicialSurface& mesh, int v) {
    std::set<int> edges;
    for (int h : mesh.vertex_star(v)) {
        int f = mesh.he_face(h);
        for (int c = 0; c < 3; ++c) edges.insert(mesh.he_edge(3 * f + c));
    }
    LocalStencil st;
    for (int e : edges) {
        int he = mesh.edge(e).halfedge;
        double w = 0.5 * (mesh.is_interior_vertex(mesh.he_origin(he)) +
                          mesh.is_interior_vertex(mesh.he_target(he)));
        if (w > 0 && mesh.is_interior_edge(e)) {
            st.edges.push_back(e);
            st.weights.push_back(w);
        }
    }
    return st;
}

double local_energy(const SimplicialSurface& mesh, const LocalStencil& st) {
    double total = 0;
    for (size_t k = 0; k < st.edges.size(); ++k) {
        total += st.weights[k] * beta(mesh, st.edges[k]).value();
    }
    return total;
}

}  // namespace

std::vector<ImQuaternion> energy_gradient(const SimplicialSurface& mesh,
                                          const FlowConfig& config) {
    validate(config);
    std::vector<bool> fixed(mesh.vertex_count(), false);
    for (int v : config.fixed_vertices) fixed[v] = true;

    double h0 = config.fd_step * mesh.bbox_diagonal();
    if (h0 <= 0) throw std::domain_error("degenerate bounding box");

    SimplicialSurface work = mesh;
    std::vector<ImQuaternion> grad(mesh.vertex_count());
    std::vector<ImQuaternion> pos = mesh.positions();
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (fixed[v]) continue;
        LocalStencil st = stencil_for_vertex(mesh, v);
        ImQuaternion base = pos[v];
        for (int axis = 0; axis < 3; ++axis) {
            ImQuaternion dir{axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0,
                             axis == 2 ? 1.0 : 0.0};
            double h = h0;
            for (int attempt = 0;; ++attempt) {
                try {
                    pos[v] = base + dir * h;
                    work.set_positions(pos);
                    double ep = local_energy(work, st);
                    pos[v] = base - dir * h;
                    work.set_positions(pos);
                    double em = local_energy(work, st);
                    double g = (ep - em) / (2 * h);
                    if (axis == 0) grad[v].x = g;
                    else if (axis == 1) grad[v].y = g;
                    else grad[v].z = g;
                    break;
                } catch (const std::exception&) {
                    if (attempt >= 3) throw;
                    h *= 0.5;
                }
            }
            pos[v] = base;
        }
    }
    return grad;
}

FlowResult flow(SimplicialSurface& mesh, const FlowConfig& config) {
    validate(config);
    FlowResult result;
    result.energy_trace.push_back(willmore_total(mesh));

    for (int step = 0; step < config.max_steps; ++step) {
        std::vector<ImQuaternion> grad = energy_gradient(mesh, config);
        double g2 = 0;
        for (const auto& g : grad) g2 += g.norm2();
        double gnorm = std::sqrt(g2);
        if (gnorm < config.grad_tol) {
            result.converged = true;
            break;
        }

        double energy = result.energy_trace.back();
        double t = config.step_init * mesh.bbox_diagonal() / gnorm;
        std::vector<ImQuaternion> base = mesh.positions();
        std::vector<ImQuaternion> trial(base.size());
        bool accepted = false;
        for (int k = 0; k < config.max_shrinks; ++k, t *= config.shrink) {
            for (size_t v = 0; v < base.size(); ++v) trial[v] = base[v] - grad[v] * t;
            try {
                mesh.set_positions(trial);
                double e = willmore_total(mesh);
                if (e <= energy - config.armijo_c * t * g2) {
                    result.energy_trace.push_back(e);
                    accepted = true;
                    break;
                }
            } catch (const std::exception&) {
                // Degenerate trial position; shrink and retry.
            }
        }
        if (!accepted) {
            mesh.set_positions(base);
            result.line_search_failed = true;
            break;
        }
        ++result.steps_taken;
    }
    return result;
}

Sphere2 harmonic_mean_face_sphere(const SimplicialSurface& mesh, int face) {
    QMat2 sum = QMat2::zero();
    for (int c = 0; c < 3; ++c) {
        sum = sum + circumsphere(mesh, mesh.he_edge(3 * face + c)).matrix();
    }
    double n2 = inner(sum, sum);
    if (n2 <= 1e-12 * sum.fnorm() * sum.fnorm()) {
        throw std::domain_error("face sphere sum is not spacelike");
    }
    return Sphere2(sum / std::sqrt(n2));
}

}  // namespace mobius
