#include <mobius/connection.hpp>
#include <mobius/flow.hpp>
#include <mobius/io.hpp>
#include <mobius/smooth.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace mobius;

constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDegenerate = 3;

int cmd_energy(const std::string& path, const std::string& json_out) {
    SimplicialSurface mesh = read_obj(path);
    KagomeComplex kc = build_kagome(mesh);
    std::printf("vertices %d, faces %d, edges %d\n", mesh.vertex_count(), mesh.face_count(),
                mesh.edge_count());
    std::printf("%6s %6s %14s %14s\n", "vertex", "degree", "W_i", "K_i");
    for (int c = 0; c < int(kc.vertex_cycles.size()); ++c) {
        int v = kc.vertex_of_cycle[c];
        VertexEnergyReport r = willmore_vertex(mesh, v);
        std::printf("%6d %6d %14.10f %14.10f\n", v, mesh.vertex_degree(v), r.willmore,
                    r.gauss_defect);
    }
    std::printf("total W = %.12f\n", willmore_total(mesh));
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw std::runtime_error("cannot open " + json_out + " for writing");
        out << energy_report_json(mesh);
    }
    return 0;
}

int cmd_verify(const std::string& path, double tol) {
    SimplicialSurface mesh = read_obj(path);
    KagomeComplex kc = build_kagome(mesh);
    bool all_ok = true;
    for (int c = 0; c < int(kc.vertex_cycles.size()); ++c) {
        VertexMonodromy m = monodromy(mesh, kc, c, tol);
        std::printf("vertex %d: theta %.10f, W_i %.10f, deviation %.3e, %s\n", m.vertex,
                    m.theta, m.willmore, m.deviation, m.matches_energy ? "ok" : "MISMATCH");
        all_ok = all_ok && m.matches_energy;
    }
    return all_ok ? 0 : kExitVerifyFail;
}

/// Random Sp(1,1) element whose action keeps the mesh vertices in a bounded
/// chart; resamples when a vertex lands near infinity.
MoebiusMap bounded_random_moebius(const SimplicialSurface& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double scale = mesh.bbox_diagonal();
    for (int attempt = 0; attempt < 100; ++attempt) {
        Quaternion mu{1 + 0.3 * unit(rng), 0.3 * unit(rng), 0.3 * unit(rng), 0.3 * unit(rng)};
        ImQuaternion x{unit(rng), unit(rng), unit(rng)};
        ImQuaternion y{unit(rng), unit(rng), unit(rng)};
        MoebiusMap map = inv_translation(y * (0.1 / scale)) * stretch_rotation(mu) *
                         translation(x * (0.3 * scale));
        bool ok = true;
        for (const auto& p : mesh.positions()) {
            PointS3 q = map(PointS3(p));
            if (q.is_infinity() || q.affine().norm() > 50 * scale) {
                ok = false;
                break;
            }
        }
        if (ok) return map;
    }
    throw std::domain_error("could not sample a bounded Moebius transform");
}

int cmd_moebius_fuzz(const std::string& path, int trials, unsigned long long seed) {
    SimplicialSurface mesh = read_obj(path);
    double base = willmore_total(mesh);
    std::mt19937_64 rng(seed);
    double worst = 0;
    SimplicialSurface work = mesh;
    for (int t = 0; t < trials; ++t) {
        MoebiusMap map = bounded_random_moebius(mesh, rng);
        std::vector<ImQuaternion> moved(mesh.vertex_count());
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            moved[v] = map(PointS3(mesh.position(v))).affine();
        }
        work.set_positions(moved);
        worst = std::max(worst, std::abs(willmore_total(work) - base));
    }
    std::printf("base W = %.12f\n", base);
    std::printf("max |dW| over %d transforms = %.3e\n", trials, worst);
    return 0;
}

int cmd_flow(const std::string& in_path, const std::string& out_path, int steps,
             const std::vector<int>& pins, const std::string& trace_path) {
    SimplicialSurface mesh = read_obj(in_path);
    FlowConfig config;
    config.max_steps = steps;
    config.fixed_vertices = pins;
    FlowResult result = flow(mesh, config);
    write_obj(mesh, out_path);
    std::printf("steps %d, energy %.12f -> %.12f%s\n", result.steps_taken,
                result.energy_trace.front(), result.energy_trace.back(),
                result.line_search_failed ? " (line search stalled)" : "");
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot open " + trace_path + " for writing");
        out << "step,energy\n";
        for (size_t i = 0; i < result.energy_trace.size(); ++i) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, result.energy_trace[i]);
            out << buf;
        }
    }
    return 0;
}

int cmd_smooth_check(const std::string& surface, double big_r, double small_r,
                     std::vector<double> eps_list, const std::string& csv_path,
                     bool quadrature, int order) {
    ParamSurface surf;
    if (surface == "plane") surf = plane_surface();
    else if (surface == "sphere") surf = sphere_surface(big_r);
    else if (surface == "torus") surf = torus_surface(big_r, small_r);
    else throw std::runtime_error("unknown surface " + surface);

    if (quadrature) {
        std::printf("Willmore integral (%s, order %d) = %.10f\n", surface.c_str(), order,
                    willmore_energy_quadrature(surf, order));
        return 0;
    }

    ScalarField h = surface == "plane" ? zero_field() : mean_curvature_field(surf);
    std::vector<std::pair<double, double>> samples;
    double du = (surf.u1 - surf.u0), dv = (surf.v1 - surf.v0);
    for (double a : {0.18, 0.42, 0.67, 0.88}) {
        for (double b : {0.21, 0.46, 0.72}) {
            samples.emplace_back(surf.u0 + a * du, surf.v0 + b * dv);
        }
    }
    if (eps_list.empty()) eps_list = {4e-3, 2e-3, 1e-3};

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw std::runtime_error("cannot open " + csv_path + " for writing");
        csv << "eps,max_residual\n";
    }
    std::printf("%12s %16s\n", "eps", "max residual");
    for (double eps : eps_list) {
        double worst = 0;
        for (auto [u, v] : samples) {
            QMat2 hol = loop_holonomy(surf, h, u, v, eps);
            QMat2 ref = curvature_formula(surf, h, u, v);
            // Relative residual, or absolute when the formula vanishes
            // (flat connection) and there is nothing to normalize by.
            double denom = ref.fnorm() > 1e-6 ? ref.fnorm() : 1.0;
            worst = std::max(worst, (hol - ref).fnorm() / denom);
        }
        std::printf("%12.2e %16.6e\n", eps, worst);
        if (csv.is_open()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", eps, worst);
            csv << buf;
        }
    }
    return 0;
}

int cmd_facespheres(const std::string& path, const std::string& json_out) {
    SimplicialSurface mesh = read_obj(path);
    std::string doc = face_spheres_json(mesh);
    if (json_out.empty()) {
        std::cout << doc << '\n';
    } else {
        std::ofstream out(json_out);
        if (!out) throw std::runtime_error("cannot open " + json_out + " for writing");
        out << doc;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius-geometry kernel: discrete Willmore energy tools"};
    app.require_subcommand(1);

    std::string mesh_path, out_path, json_out, trace_path, csv_path;
    std::string surface = "torus";
    double tol = 1e-8, big_r = 2.0, small_r = 1.0;
    int trials = 100, steps = 100, order = 256;
    unsigned long long seed = 1;
    std::vector<int> pins;
    std::vector<double> eps_list;
    bool quadrature = false;

    auto* energy = app.add_subcommand("energy", "per-vertex and total Willmore energy");
    energy->add_option("mesh", mesh_path)->required();
    energy->add_option("--json", json_out, "write the full report as JSON");

    auto* verify = app.add_subcommand("verify", "monodromy angle vs angle-sum energy");
    verify->add_option("mesh", mesh_path)->required();
    verify->add_option("--tol", tol);

    auto* fuzz = app.add_subcommand("moebius-fuzz", "energy invariance under random "
                                                    "Moebius transforms");
    fuzz->add_option("mesh", mesh_path)->required();
    fuzz->add_option("--trials", trials);
    fuzz->add_option("--seed", seed);

    auto* flow_cmd = app.add_subcommand("flow", "Willmore gradient descent");
    flow_cmd->add_option("input", mesh_path)->required();
    flow_cmd->add_option("output", out_path)->required();
    flow_cmd->add_option("--steps", steps);
    flow_cmd->add_option("--pin", pins, "vertex ids to keep fixed")->delimiter(',');
    flow_cmd->add_option("--trace", trace_path, "energy trace CSV");

    auto* smooth = app.add_subcommand("smooth-check", "holonomy convergence and the "
                                                      "Willmore integral");
    smooth->add_option("--surface", surface)
        ->check(CLI::IsMember({"plane", "sphere", "torus"}));
    smooth->add_option("--R", big_r, "major radius (also the sphere radius)");
    smooth->add_option("--r", small_r, "minor radius");
    smooth->add_option("--eps-list", eps_list)->delimiter(',');
    smooth->add_option("--csv", csv_path);
    smooth->add_flag("--quadrature", quadrature, "compute the Willmore integral instead");
    smooth->add_option("--order", order, "quadrature order per axis");

    auto* spheres = app.add_subcommand("facespheres", "harmonic-mean face spheres");
    spheres->add_option("mesh", mesh_path)->required();
    spheres->add_option("--json", json_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (energy->parsed()) return cmd_energy(mesh_path, json_out);
        if (verify->parsed()) return cmd_verify(mesh_path, tol);
        if (fuzz->parsed()) return cmd_moebius_fuzz(mesh_path, trials, seed);
        if (flow_cmd->parsed()) return cmd_flow(mesh_path, out_path, steps, pins, trace_path);
        if (smooth->parsed()) {
            return cmd_smooth_check(surface, big_r, small_r, eps_list, csv_path, quadrature,
                                    order);
        }
        if (spheres->parsed()) return cmd_facespheres(mesh_path, json_out);
    } catch (const mobius::DegenerateEdgeError& e) {
        std::cerr << "degeneracy: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::domain_error& e) {
        std::cerr << "degeneracy: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return 0;
}
