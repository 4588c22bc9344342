#include "lpbody/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "lpbody/hull.hpp"

namespace lpb {

double pairwise_sum(std::span<const double> xs) {
    const size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

double SphericalQuadrature::total_weight() const { return pairwise_sum(weights); }

namespace {

// Solid angle of the spherical triangle (a,b,c) on the unit sphere.
double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
    double num = std::fabs(dot(a, cross(b, c)));
    double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(num, den);
}

SphericalQuadrature build_2d(int level) {
    SphericalQuadrature q;
    q.dim = 2;
    q.level = level;
    const size_t n = size_t(1) << (level + 8);
    const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
    q.nodes.reserve(n);
    q.weights.assign(n, w);
    for (size_t k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        q.nodes.push_back({std::cos(th), std::sin(th), 0.0});
    }
    return q;
}

// Icosahedron vertices; the solid is origin-symmetric, so triangles come in
// antipodal pairs and odd moments cancel exactly.
void icosphere_mesh(int level, std::vector<Vec>& verts, std::vector<std::array<int, 3>>& faces) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    verts = {
        {0, 1, phi},  {0, -1, phi},  {0, 1, -phi},  {0, -1, -phi},
        {1, phi, 0},  {-1, phi, 0},  {1, -phi, 0},  {-1, -phi, 0},
        {phi, 0, 1},  {-phi, 0, 1},  {phi, 0, -1},  {-phi, 0, -1},
    };
    for (auto& v : verts) v = normalized(v);
    std::vector<HullTri> tris = hull3d(verts);

    faces.clear();
    faces.reserve(tris.size());
    for (const auto& t : tris) faces.push_back({t.a, t.b, t.c});

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find({key.first, key.second});
            if (it != midpoint.end()) return it->second;
            int idx = static_cast<int>(verts.size());
            verts.push_back(normalized(verts[a] + verts[b]));
            midpoint[{key.first, key.second}] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
}

SphericalQuadrature build_3d(int level) {
    std::vector<Vec> verts;
    std::vector<std::array<int, 3>> faces;
    icosphere_mesh(level, verts, faces);

    SphericalQuadrature q;
    q.dim = 3;
    q.level = level;
    q.nodes.reserve(faces.size());
    q.weights.reserve(faces.size());
    for (const auto& f : faces) {
        const Vec& a = verts[f[0]];
        const Vec& b = verts[f[1]];
        const Vec& c = verts[f[2]];
        q.nodes.push_back(normalized(a + b + c));
        q.weights.push_back(spherical_triangle_area(a, b, c));
    }
    return q;
}

}  // namespace

SphericalQuadrature build_quadrature(int dim, int level) {
    if (level < 0 || level > 6) throw InputError("quadrature level must be in [0, 6]");
    if (dim == 2) return build_2d(level);
    if (dim == 3) return build_3d(level);
    throw InputError("quadrature dimension must be 2 or 3");
}

std::vector<Vec> icosphere_vertices(int level) {
    if (level < 0 || level > 6) throw InputError("icosphere level must be in [0, 6]");
    std::vector<Vec> verts;
    std::vector<std::array<int, 3>> faces;
    icosphere_mesh(level, verts, faces);
    return verts;
}

}  // namespace lpb
