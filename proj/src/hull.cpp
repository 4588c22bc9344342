#include "lpbody/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace lpb {

std::vector<int> hull2d(const std::vector<Vec>& pts, double eps_rel) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) return {};
    double scale = 0.0;
    for (const auto& p : pts) scale = std::fmax(scale, std::fmax(std::fabs(p.x), std::fabs(p.y)));
    const double eps = eps_rel * std::fmax(scale * scale, 1e-300);

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });

    auto turn = [&](int a, int b, int c) { return cross2(pts[b] - pts[a], pts[c] - pts[a]); };

    std::vector<int> h(2 * n);
    int k = 0;
    for (int ii = 0; ii < n; ++ii) {  // lower chain
        int i = idx[ii];
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= eps) --k;
        h[k++] = i;
    }
    for (int ii = n - 2, lower = k + 1; ii >= 0; --ii) {  // upper chain
        int i = idx[ii];
        while (k >= lower && turn(h[k - 2], h[k - 1], i) <= eps) --k;
        h[k++] = i;
    }
    h.resize(k > 0 ? k - 1 : 0);
    if (h.size() < 3) return {};
    return h;
}

namespace {

struct Face {
    int a, b, c;
    Vec n;       // outward normal, not unit
    double off;  // n . x == off on the face plane
    bool alive = true;
};

double point_scale(const std::vector<Vec>& pts) {
    double s = 0.0;
    for (const auto& p : pts)
        s = std::fmax(s, std::fmax(std::fabs(p.x), std::fmax(std::fabs(p.y), std::fabs(p.z))));
    return std::fmax(s, 1e-300);
}

}  // namespace

std::vector<HullTri> hull3d(const std::vector<Vec>& pts, double eps_rel) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw UnboundedBody("3D hull needs at least 4 points");
    const double scale = point_scale(pts);
    const double eps = eps_rel * scale * scale;      // seed degeneracy slack
    const double eps_len = eps_rel * scale;          // visibility distance slack

    // Seed tetrahedron from extreme points.
    int i0 = 0, i1 = -1;
    for (int i = 1; i < n; ++i)
        if (pts[i].x < pts[i0].x) i0 = i;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = norm2(pts[i] - pts[i0]);
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best <= eps * eps) throw UnboundedBody("3D hull degenerate: coincident points");
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= eps * eps) throw UnboundedBody("3D hull degenerate: collinear points");
    int i3 = -1;
    best = -1.0;
    Vec nrm = cross(pts[i1] - pts[i0], pts[i2] - pts[i0]);
    for (int i = 0; i < n; ++i) {
        double d = std::fabs(dot(nrm, pts[i] - pts[i0]));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= 1e-12 * norm(nrm) * scale)
        throw UnboundedBody("3D hull degenerate: coplanar points");

    std::vector<Face> faces;
    auto make_face = [&](int a, int b, int c, const Vec& inside) {
        Face f;
        f.a = a;
        f.b = b;
        f.c = c;
        f.n = cross(pts[b] - pts[a], pts[c] - pts[a]);
        if (dot(f.n, inside - pts[a]) > 0.0) {  // flip to outward
            std::swap(f.b, f.c);
            f.n = -f.n;
        }
        f.off = dot(f.n, pts[f.a]);
        return f;
    };
    Vec centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
    faces.push_back(make_face(i0, i1, i2, centroid));
    faces.push_back(make_face(i0, i1, i3, centroid));
    faces.push_back(make_face(i0, i2, i3, centroid));
    faces.push_back(make_face(i1, i2, i3, centroid));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int p : order) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        // Collect faces visible from p.
        std::vector<int> visible;
        for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
            if (!faces[fi].alive) continue;
            if (dot(faces[fi].n, pts[p]) - faces[fi].off > eps) visible.push_back(fi);
        }
        if (visible.empty()) continue;
        // Horizon = directed edges of visible faces whose reverse edge is not visible.
        std::map<std::pair<int, int>, int> edge_count;
        for (int fi : visible) {
            const Face& f = faces[fi];
            int e[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (auto& ed : e) edge_count[{ed[0], ed[1]}]++;
        }
        std::vector<std::pair<int, int>> horizon;
        for (const auto& [edge, cnt] : edge_count) {
            (void)cnt;
            if (edge_count.find({edge.second, edge.first}) == edge_count.end())
                horizon.push_back(edge);
        }
        for (int fi : visible) faces[fi].alive = false;
        for (const auto& [ea, eb] : horizon) {
            Face f;
            f.a = ea;
            f.b = eb;
            f.c = p;
            f.n = cross(pts[eb] - pts[ea], pts[p] - pts[ea]);
            f.off = dot(f.n, pts[ea]);
            // Horizon edges are oriented so (ea,eb,p) faces outward already,
            // but guard against roundoff with the running centroid.
            if (dot(f.n, centroid) - f.off > 0.0) {
                std::swap(f.a, f.b);
                f.n = -f.n;
                f.off = dot(f.n, pts[f.a]);
            }
            faces.push_back(f);
        }
    }

    std::vector<HullTri> out;
    for (const auto& f : faces)
        if (f.alive && norm2(f.n) > 0.0) out.push_back({f.a, f.b, f.c});
    if (out.size() < 4) throw UnboundedBody("3D hull collapsed");
    return out;
}

}  // namespace lpb
