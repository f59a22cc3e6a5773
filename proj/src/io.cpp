#include <mobius/io.hpp>

#include <mobius/connection.hpp>
#include <mobius/flow.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mobius {

namespace {

constexpr const char* kToolVersion = "0.1.0";

/// First vertex index of an OBJ face token "i", "i/j", "i//k" or "i/j/k".
int face_vertex_index(const std::string& token, int line, int vertex_count) {
    size_t slash = token.find('/');
    std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    int idx;
    try {
        size_t used = 0;
        idx = std::stoi(head, &used);
        if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
        throw ObjParseError(line, "bad face index '" + token + "'");
    }
    if (idx < 0) idx = vertex_count + 1 + idx;  // relative indexing
    if (idx < 1 || idx > vertex_count) {
        throw ObjParseError(line, "face index out of range: '" + token + "'");
    }
    return idx - 1;
}

}  // namespace

SimplicialSurface read_obj_stream(std::istream& in) {
    std::vector<ImQuaternion> positions;
    std::vector<std::array<int, 3>> triangles;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) throw ObjParseError(line, "vertex needs 3 coordinates");
            positions.push_back({x, y, z});
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string token;
            while (ls >> token) {
                idx.push_back(face_vertex_index(token, line, int(positions.size())));
            }
            if (idx.size() != 3) throw ObjParseError(line, "only triangle faces are supported");
            triangles.push_back({idx[0], idx[1], idx[2]});
        }
        // Other directives (vn, vt, o, g, s, mtllib, usemtl, ...) are skipped.
    }
    try {
        return SimplicialSurface(std::move(positions), std::move(triangles));
    } catch (const std::invalid_argument& e) {
        throw ObjParseError(line, e.what());
    }
}

SimplicialSurface read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_obj_stream(in);
}

void write_obj_stream(const SimplicialSurface& mesh, std::ostream& out) {
    char buf[96];
    for (const auto& p : mesh.positions()) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << buf;
    }
    for (const auto& t : mesh.triangles()) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
}

void write_obj(const SimplicialSurface& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_obj_stream(mesh, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string energy_report_json(const SimplicialSurface& mesh, double tol) {
    using nlohmann::json;
    KagomeComplex kc = build_kagome(mesh);

    json doc;
    doc["schema_version"] = 1;
    doc["tool_version"] = kToolVersion;
    doc["tolerance"] = tol;
    doc["mesh"] = {{"vertices", mesh.vertex_count()},
                   {"faces", mesh.face_count()},
                   {"edges", mesh.edge_count()},
                   {"bbox_diagonal", mesh.bbox_diagonal()}};

    double willmore_sum = 0, defect_sum = 0;
    json records = json::array();
    for (int c = 0; c < int(kc.vertex_cycles.size()); ++c) {
        int v = kc.vertex_of_cycle[c];
        VertexEnergyReport report = willmore_vertex(mesh, v);
        VertexMonodromy mono = monodromy(mesh, kc, c, tol);
        json rec;
        rec["id"] = v;
        rec["degree"] = mesh.vertex_degree(v);
        rec["betas"] = report.betas;
        rec["willmore"] = report.willmore;
        rec["gauss_defect"] = report.gauss_defect;
        rec["monodromy_theta"] = mono.theta;
        rec["matches_energy"] = mono.matches_energy;
        if (!report.degenerate_edges.empty()) {
            rec["degenerate_edges"] = report.degenerate_edges;
        }
        records.push_back(rec);
        willmore_sum += report.willmore;
        defect_sum += report.gauss_defect;
    }
    doc["vertices"] = records;

    double total = willmore_total(mesh);
    if (std::abs(total - 0.5 * willmore_sum) > 1e-9 * (1 + std::abs(total))) {
        throw std::logic_error("energy totals inconsistent with per-vertex records");
    }
    doc["totals"] = {{"willmore", total}, {"gauss_defect_sum", defect_sum}};
    return doc.dump(2);
}

std::string face_spheres_json(const SimplicialSurface& mesh) {
    using nlohmann::json;
    json doc;
    doc["schema_version"] = 1;
    doc["tool_version"] = kToolVersion;
    json records = json::array();
    for (int f = 0; f < mesh.face_count(); ++f) {
        json rec;
        rec["face"] = f;
        try {
            Sphere2 s = harmonic_mean_face_sphere(mesh, f);
            SphereGeometry geo = sphere_geometry(s);
            if (const auto* plane = std::get_if<PlaneGeometry>(&geo)) {
                rec["type"] = "plane";
                rec["normal"] = {plane->normal.x, plane->normal.y, plane->normal.z};
                rec["offset"] = plane->offset;
            } else {
                const auto& round = std::get<RoundSphereGeometry>(geo);
                rec["type"] = "round";
                rec["center"] = {round.center.x, round.center.y, round.center.z};
                rec["radius"] = round.radius;
                rec["orientation"] = round.mean_curvature > 0 ? "outward" : "inward";
            }
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records.push_back(rec);
    }
    doc["faces"] = records;
    return doc.dump(2);
}

}  // namespace mobius
