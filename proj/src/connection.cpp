#include <mobius/connection.hpp>

#include <cmath>
#include <stdexcept>

namespace mobius {

KagomeTransport transport(const SimplicialSurface& mesh, const KagomeComplex& kc, int arc) {
    const KagomeComplex::Arc& a = kc.arcs[arc];
    Sphere2 src = circumsphere(mesh, a.source_node);
    Sphere2 tgt = circumsphere(mesh, a.target_node);
    Circle face = circumcircle(mesh, a.face);

    double c = inner(src.matrix(), tgt.matrix());
    if (c <= -1.0) {
        throw std::domain_error("anti-aligned circumspheres at arc " + std::to_string(arc));
    }
    double s = inner(cross(src.matrix(), tgt.matrix()), face.matrix());
    double alpha = std::atan2(s, c);
    MoebiusMap map(exp(face.matrix() * (0.5 * alpha)));
    return {arc, alpha, map};
}

MoebiusMap cycle_product(const SimplicialSurface& mesh, const KagomeComplex& kc,
                         const std::vector<int>& arcs) {
    QMat2 m = QMat2::identity();
    for (int a : arcs) m = transport(mesh, kc, a).map.matrix() * m;
    return MoebiusMap(m);
}

VertexMonodromy monodromy(const SimplicialSurface& mesh, const KagomeComplex& kc,
                          int cycle_index, double tol) {
    const std::vector<int>& arcs = kc.vertex_cycles[cycle_index];
    VertexMonodromy out;
    out.vertex = kc.vertex_of_cycle[cycle_index];
    out.map = cycle_product(mesh, kc, arcs);

    PointS3 fi(mesh.position(out.vertex));
    HVector psi = fi.homogeneous();
    HVector image = out.map.matrix() * psi;
    out.mu = image.p1;  // psi = (f_i, 1), so the eigenvalue shows up in slot 1
    if ((image - psi * out.mu).norm() > 1e-7 * psi.norm()) {
        throw std::domain_error("monodromy does not fix the vertex line");
    }

    Sphere2 base = circumsphere(mesh, kc.arcs[arcs.front()].source_node);
    out.base_normal = sphere_normal_at(base, fi);

    double sign = dot(out.mu.im(), out.base_normal) <= 0 ? 1.0 : -1.0;
    out.theta = 2.0 * std::atan2(out.mu.im().norm(), sign * out.mu.real());

    out.willmore = willmore_vertex(mesh, out.vertex).willmore;
    Quaternion target = exp_im(out.base_normal * (-0.5 * out.willmore));
    out.deviation = std::min((out.mu - target).max_abs(), (out.mu + target).max_abs());
    out.matches_energy = out.deviation <= tol;
    return out;
}

Quaternion spherical_polygon_product(const std::vector<ImQuaternion>& normals) {
    if (normals.size() < 3) throw std::domain_error("need at least 3 normals");
    const int n = int(normals.size());
    Quaternion product = Quaternion::real(1);
    for (int l = 0; l < n; ++l) {
        const ImQuaternion& a = normals[l];
        const ImQuaternion& b = normals[(l + 1) % n];
        ImQuaternion axis = cross(a, b);
        double s = axis.norm();
        double c = dot(a, b);
        if (s <= 1e-12 && c < 0) {
            throw std::domain_error("antipodal consecutive normals");
        }
        Quaternion rho = s <= 1e-300 ? Quaternion::real(1)
                                     : exp_im(axis * (0.5 * std::atan2(s, c) / s));
        product = rho * product;
    }
    return product;
}

}  // namespace mobius
