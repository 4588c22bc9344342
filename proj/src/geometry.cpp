#include "lpbody/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lpbody/hull.hpp"

namespace lpb {

double Polytope::support(const Vec& u) const {
    double best = -1e300;
    for (const auto& v : vertices) best = std::fmax(best, dot(v, u));
    return best;
}

double Polytope::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            d = std::fmax(d, dist(vertices[i], vertices[j]));
    return d;
}

Vec Polytope::centroid() const {
    // Volume centroid via the fan over facets from the origin.
    Vec acc{0, 0, 0};
    double vol = 0.0;
    if (dim == 2) {
        for (size_t j = 0; j < facets.size(); ++j) {
            const Vec& a = vertices[facets[j].cycle[0]];
            const Vec& b = vertices[facets[j].cycle[1]];
            double v = 0.5 * std::fabs(cross2(a, b));
            acc += (a + b) * (v / 3.0);
            vol += v;
        }
    } else {
        for (size_t j = 0; j < facets.size(); ++j) {
            const auto& cyc = facets[j].cycle;
            for (size_t t = 1; t + 1 < cyc.size(); ++t) {
                const Vec& a = vertices[cyc[0]];
                const Vec& b = vertices[cyc[t]];
                const Vec& c = vertices[cyc[t + 1]];
                double v = std::fabs(dot(a, cross(b, c))) / 6.0;
                acc += (a + b + c) * (v / 4.0);
                vol += v;
            }
        }
    }
    if (vol <= 0.0) throw EmptyInterior("degenerate polytope in centroid");
    return acc * (1.0 / vol);
}

DiscreteSphereMeasure DiscreteSphereMeasure::make(int dim, std::vector<Atom> raw) {
    DiscreteSphereMeasure m;
    m.dim = dim;
    for (auto& a : raw) {
        if (!(a.w > 0.0)) throw InputError("measure atoms need positive weight");
        a.u = normalized(a.u);
        bool merged = false;
        for (auto& b : m.atoms) {
            if (angular_dist(a.u, b.u) < kAngularMergeTol) {
                // weighted direction average keeps the merge symmetric
                Vec mix = normalized(b.u * b.w + a.u * a.w);
                b.u = mix;
                b.w += a.w;
                merged = true;
                break;
            }
        }
        if (!merged) m.atoms.push_back(a);
    }
    return m;
}

double DiscreteSphereMeasure::total() const {
    double t = 0.0;
    for (const auto& a : atoms) t += a.w;
    return t;
}

DiscreteSphereMeasure DiscreteSphereMeasure::negated() const {
    DiscreteSphereMeasure m;
    m.dim = dim;
    m.atoms = atoms;
    for (auto& a : m.atoms) a.u = -a.u;
    return m;
}

DiscreteSphereMeasure DiscreteSphereMeasure::sum(const DiscreteSphereMeasure& a,
                                                 const DiscreteSphereMeasure& b) {
    if (a.dim != b.dim) throw DimensionMismatch("measure dimensions differ");
    std::vector<Atom> atoms = a.atoms;
    atoms.insert(atoms.end(), b.atoms.begin(), b.atoms.end());
    return make(a.dim, std::move(atoms));
}

namespace {

WulffData wulff_eval_2d(const std::vector<Vec>& normals, const std::vector<double>& h,
                        bool want_cycles) {
    const int m = static_cast<int>(normals.size());
    std::vector<Vec> dual(m);
    for (int j = 0; j < m; ++j) dual[j] = normals[j] * (1.0 / h[j]);

    std::vector<int> hull = hull2d(dual);
    if (hull.size() < 3) throw UnboundedBody("normals lie in a closed hemisphere");
    // Bounded iff the origin is interior to the dual hull.
    const int k = static_cast<int>(hull.size());
    for (int i = 0; i < k; ++i) {
        const Vec& a = dual[hull[i]];
        const Vec& b = dual[hull[(i + 1) % k]];
        if (cross2(a, b) <= 0.0) throw UnboundedBody("normals lie in a closed hemisphere");
    }

    WulffData w;
    w.areas.assign(m, 0.0);
    w.cycles.assign(m, {});
    // Vertex per hull edge (pair of adjacent facets).
    std::vector<Vec> verts(k);
    for (int i = 0; i < k; ++i) {
        int a = hull[i], b = hull[(i + 1) % k];
        verts[i] = solve2(normals[a], normals[b], h[a], h[b]);
    }
    w.vertices = verts;
    for (int i = 0; i < k; ++i) {
        int j = hull[i];
        int prev_vertex = (i + k - 1) % k;  // edge (hull[i-1], hull[i])
        int next_vertex = i;                // edge (hull[i], hull[i+1])
        double len = dist(verts[prev_vertex], verts[next_vertex]);
        w.areas[j] = len;
        w.volume += 0.5 * h[j] * len;
        if (want_cycles) w.cycles[j] = {prev_vertex, next_vertex};
    }
    return w;
}

WulffData wulff_eval_3d(const std::vector<Vec>& normals, const std::vector<double>& h,
                        bool want_cycles) {
    const int m = static_cast<int>(normals.size());
    std::vector<Vec> dual(m);
    for (int j = 0; j < m; ++j) dual[j] = normals[j] * (1.0 / h[j]);

    std::vector<HullTri> tris = hull3d(dual);
    double dual_scale = 0.0;
    for (const auto& q : dual) dual_scale = std::fmax(dual_scale, norm(q));
    for (const auto& t : tris) {
        Vec n = cross(dual[t.b] - dual[t.a], dual[t.c] - dual[t.a]);
        double off = dot(n, dual[t.a]);
        if (off <= 1e-12 * norm(n) * dual_scale)
            throw UnboundedBody("normals lie in a closed hemisphere");
    }

    // One primal vertex per dual triangle.
    const int nt = static_cast<int>(tris.size());
    std::vector<Vec> verts(nt);
    for (int t = 0; t < nt; ++t) {
        verts[t] = solve3(normals[tris[t].a], normals[tris[t].b], normals[tris[t].c],
                          {h[tris[t].a], h[tris[t].b], h[tris[t].c]});
    }

    // Orientation bookkeeping: for each hull vertex j, walk incident
    // triangles around j via shared edges to order the primal facet cycle.
    std::map<std::pair<int, int>, int> dir_edge_tri;  // directed edge -> triangle index
    std::vector<std::vector<int>> incident(m);
    for (int t = 0; t < nt; ++t) {
        int v[3] = {tris[t].a, tris[t].b, tris[t].c};
        for (int e = 0; e < 3; ++e) dir_edge_tri[{v[e], v[(e + 1) % 3]}] = t;
        for (int e = 0; e < 3; ++e) incident[v[e]].push_back(t);
    }

    WulffData w;
    w.areas.assign(m, 0.0);
    w.cycles.assign(m, {});
    w.vertices = verts;

    for (int j = 0; j < m; ++j) {
        if (incident[j].empty()) continue;  // hidden halfspace
        // Rotate the first incident triangle so it reads (j, x, y).
        int t0 = incident[j][0];
        std::vector<int> cycle;
        int t = t0;
        int guard = 0;
        while (true) {
            int v[3] = {tris[t].a, tris[t].b, tris[t].c};
            int pos = (v[0] == j) ? 0 : (v[1] == j ? 1 : 2);
            int y = v[(pos + 2) % 3];  // predecessor in orientation, shared with next tri
            cycle.push_back(t);
            auto it = dir_edge_tri.find({j, y});
            if (it == dir_edge_tri.end()) break;  // non-manifold guard
            t = it->second;
            if (t == t0) break;
            if (++guard > nt) break;
        }
        if (cycle.size() < 3) continue;
        // Facet polygon area in the plane with normal normals[j].
        Vec c{0, 0, 0};
        for (int idx : cycle) c += verts[idx];
        c = c * (1.0 / static_cast<double>(cycle.size()));
        Vec acc{0, 0, 0};
        for (size_t i = 0; i < cycle.size(); ++i) {
            const Vec& a = verts[cycle[i]];
            const Vec& b = verts[cycle[(i + 1) % cycle.size()]];
            acc += cross(a - c, b - c);
        }
        double area = 0.5 * std::fabs(dot(acc, normals[j]));
        w.areas[j] = area;
        w.volume += h[j] * area / 3.0;
        if (want_cycles) w.cycles[j] = cycle;
    }
    return w;
}

}  // namespace

WulffData wulff_eval(int dim, const std::vector<Vec>& normals, const std::vector<double>& h,
                     bool want_cycles) {
    if (dim == 2) return wulff_eval_2d(normals, h, want_cycles);
    if (dim == 3) return wulff_eval_3d(normals, h, want_cycles);
    throw InputError("dimension must be 2 or 3");
}

Polytope canonicalize(int dim, std::vector<Vec> normals, std::vector<double> offsets) {
    if (dim != 2 && dim != 3) throw InputError("dimension must be 2 or 3");
    if (normals.size() != offsets.size() || normals.empty())
        throw InputError("normals/offsets size mismatch");

    // Normalize directions, rescaling offsets accordingly.
    for (size_t j = 0; j < normals.size(); ++j) {
        double n = norm(normals[j]);
        if (n <= 0.0) throw InputError("zero normal");
        normals[j] = normals[j] * (1.0 / n);
        offsets[j] /= n;
        if (dim == 2 && std::fabs(normals[j].z) > 0.0) throw InputError("2D normal with z != 0");
        if (!(offsets[j] > 0.0)) throw EmptyInterior("offsets must be positive (origin interior)");
    }

    // Merge duplicate directions, keeping the tighter halfspace.
    std::vector<Vec> nn;
    std::vector<double> hh;
    for (size_t j = 0; j < normals.size(); ++j) {
        bool dup = false;
        for (size_t k = 0; k < nn.size(); ++k) {
            if (angular_dist(normals[j], nn[k]) < kAngularMergeTol) {
                hh[k] = std::fmin(hh[k], offsets[j]);
                dup = true;
                break;
            }
        }
        if (!dup) {
            nn.push_back(normals[j]);
            hh.push_back(offsets[j]);
        }
    }

    WulffData w = wulff_eval(dim, nn, hh, false);
    const double area_floor = kFacetAreaRelTol * std::pow(w.volume, double(dim - 1) / dim);
    std::vector<Vec> keep_n;
    std::vector<double> keep_h;
    for (size_t j = 0; j < nn.size(); ++j) {
        if (w.areas[j] > area_floor) {
            keep_n.push_back(nn[j]);
            keep_h.push_back(hh[j]);
        }
    }
    WulffData fin = wulff_eval(dim, keep_n, keep_h, true);

    Polytope P;
    P.dim = dim;
    P.normals = std::move(keep_n);
    P.offsets = std::move(keep_h);
    P.volume = fin.volume;
    P.vertices = std::move(fin.vertices);
    P.facets.resize(P.normals.size());
    for (size_t j = 0; j < P.normals.size(); ++j) {
        P.facets[j].measure = fin.areas[j];
        P.facets[j].cycle = std::move(fin.cycles[j]);
    }
    return P;
}

DiscreteSphereMeasure lp_surface_measure(const Polytope& K, double p) {
    if (p < 1.0) throw InputError("lp_surface_measure needs p >= 1");
    std::vector<Atom> atoms;
    atoms.reserve(K.normals.size());
    for (size_t j = 0; j < K.normals.size(); ++j) {
        double w = K.facets[j].measure * std::pow(K.offsets[j], 1.0 - p);
        atoms.push_back({K.normals[j], w});
    }
    return DiscreteSphereMeasure::make(K.dim, std::move(atoms));
}

double lp_mixed_volume(const Polytope& K, const SupportBody& L, double p) {
    if (K.dim != L.dim) throw DimensionMismatch("mixed volume dimension mismatch");
    DiscreteSphereMeasure sp = lp_surface_measure(K, p);
    double acc = 0.0;
    for (const auto& a : sp.atoms) acc += std::pow(L(a.u), p) * a.w;
    return acc / K.dim;
}

double lp_mixed_volume(const Polytope& K, const Polytope& L, double p) {
    return lp_mixed_volume(K, support_body(L), p);
}

SupportBody support_body(const Polytope& K) {
    Polytope copy = K;  // value capture keeps the body self-contained
    return {K.dim, "polytope",
            [copy](const Vec& u) { return copy.support(u); }};
}

SupportBody ball_support(int dim, double radius) {
    return {dim, "ball", [radius](const Vec&) { return radius; }};
}

SupportBody lp_combination(double alpha, const SupportBody& K, double beta, const SupportBody& L,
                           double p) {
    if (K.dim != L.dim) throw DimensionMismatch("lp_combination dimension mismatch");
    if (!(p >= 1.0)) throw InputError("lp_combination needs p >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw InputError("combination weights must be positive");
    auto hk = K.h;
    auto hl = L.h;
    return {K.dim, "lp_combination",
            [alpha, beta, p, hk, hl](const Vec& u) {
                return std::pow(alpha * std::pow(hk(u), p) + beta * std::pow(hl(u), p), 1.0 / p);
            }};
}

Polytope transform(const Polytope& K, const Mat& M) {
    Mat minv_t = M.inverse().transposed();
    std::vector<Vec> normals(K.normals.size());
    std::vector<double> offsets(K.offsets.size());
    for (size_t j = 0; j < K.normals.size(); ++j) {
        Vec w = minv_t.apply(K.normals[j]);
        double n = norm(w);
        normals[j] = w * (1.0 / n);
        offsets[j] = K.offsets[j] / n;
    }
    return canonicalize(K.dim, std::move(normals), std::move(offsets));
}

Polytope polar_polytope(const Polytope& K) {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const auto& v : K.vertices) {
        double n = norm(v);
        normals.push_back(v * (1.0 / n));
        offsets.push_back(1.0 / n);
    }
    return canonicalize(K.dim, std::move(normals), std::move(offsets));
}

double polar_volume_exact(const Polytope& K) { return polar_polytope(K).volume; }

Polytope make_box(int dim, double s) {
    std::vector<Vec> n = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    if (dim == 3) {
        n.push_back({0, 0, 1});
        n.push_back({0, 0, -1});
    }
    return canonicalize(dim, n, std::vector<double>(n.size(), s));
}

}  // namespace lpb
