#include <algorithm>
#include <cmath>
#include <map>

#include "lpbody/pwa.hpp"

namespace lpb {

namespace {

using Poly = std::vector<Vec>;

double poly_area(const Poly& p) {
    if (p.size() < 3) return 0.0;
    double a = 0.0;
    for (size_t i = 0; i < p.size(); ++i) a += cross2(p[i], p[(i + 1) % p.size()]);
    return 0.5 * std::fabs(a);
}

// Sutherland-Hodgman clip keeping {x : w.x + d >= 0}.
Poly clip_halfplane(const Poly& poly, const Vec& w, double d) {
    Poly out;
    const size_t n = poly.size();
    if (n == 0) return out;
    for (size_t i = 0; i < n; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % n];
        double dp = dot(w, p) + d;
        double dq = dot(w, q) + d;
        if (dp >= 0.0) out.push_back(p);
        if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0))
            out.push_back(p + (q - p) * (dp / (dp - dq)));
    }
    return out;
}

struct Half {
    Vec w;
    double d;
};

// Inward halfplanes of a ccw triangle.
std::array<Half, 3> tri_halfplanes(const Vec& a, const Vec& b, const Vec& c) {
    auto edge = [](const Vec& p, const Vec& q, const Vec& opp) {
        Vec w{-(q - p).y, (q - p).x, 0.0};
        double d = -dot(w, p);
        if (dot(w, opp) + d < 0.0) {
            w = -w;
            d = -d;
        }
        return Half{w, d};
    };
    return {edge(a, b, c), edge(b, c, a), edge(c, a, b)};
}

// Pieces of `poly` outside the triangle (a,b,c); disjoint convex cover.
std::vector<Poly> subtract_triangle(const Poly& poly, const Vec& a, const Vec& b, const Vec& c) {
    std::vector<Poly> out;
    Poly cur = poly;
    for (const Half& h : tri_halfplanes(a, b, c)) {
        if (cur.empty()) break;
        Poly outside = clip_halfplane(cur, -h.w, -h.d);
        if (poly_area(outside) > 0.0) out.push_back(std::move(outside));
        cur = clip_halfplane(cur, h.w, h.d);
    }
    return out;
}

struct Affine {
    Vec g;
    double c;
    double operator()(const Vec& x) const { return dot(g, x) + c; }
};

struct Piece {
    Poly poly;
    int fs = -1, gs = -1;  // source simplex in each mesh, -1 if absent
};

struct TriOut {
    Vec a, b, c;
    Affine fn;
};

void emit_poly(std::vector<TriOut>& out, const Poly& poly, const Affine& fn, double eps_area,
               double* dropped) {
    for (size_t t = 1; t + 1 < poly.size(); ++t) {
        Vec x[3] = {poly[0], poly[t], poly[t + 1]};
        double area = 0.5 * std::fabs(cross2(x[1] - x[0], x[2] - x[0]));
        if (area <= eps_area) {
            *dropped += area;
            continue;
        }
        out.push_back({x[0], x[1], x[2], fn});
    }
}

PwaFunction assemble(int dim, const std::vector<TriOut>& tris, double weld_tol) {
    std::map<std::pair<long long, long long>, int> grid;
    std::vector<Vec> verts;
    std::vector<double> vals;
    auto weld = [&](const Vec& p, const Affine& fn) {
        long long gx = static_cast<long long>(std::floor(p.x / weld_tol));
        long long gy = static_cast<long long>(std::floor(p.y / weld_tol));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({gx + dx, gy + dy});
                if (it != grid.end() && dist(verts[it->second], p) <= weld_tol)
                    return it->second;
            }
        int idx = static_cast<int>(verts.size());
        verts.push_back(p);
        vals.push_back(fn(p));
        grid[{gx, gy}] = idx;
        return idx;
    };
    std::vector<std::array<int, 4>> simps;
    for (const auto& t : tris) {
        int i = weld(t.a, t.fn), j = weld(t.b, t.fn), k = weld(t.c, t.fn);
        if (i == j || j == k || i == k) continue;
        simps.push_back({i, j, k, -1});
    }
    if (simps.empty()) {
        PwaFunction trivial;
        trivial.dim = dim;
        return trivial;
    }
    return PwaFunction::make(dim, std::move(verts), std::move(simps), std::move(vals));
}

void require_nonnegative(const PwaFunction& f, const char* which) {
    double lo = 0.0;
    for (double v : f.values) lo = std::fmin(lo, v);
    if (lo < -1e-12 * std::fmax(f.max_abs(), 1e-30))
        throw MeshOverlayFailure(std::string("lattice operations require nonnegative ") + which);
}

Poly tri_of(const PwaFunction& f, int i) {
    return {f.vertices[f.simplices[i][0]], f.vertices[f.simplices[i][1]],
            f.vertices[f.simplices[i][2]]};
}

std::vector<Piece> overlay_2d(const PwaFunction& f, const PwaFunction& g) {
    std::vector<Piece> pieces;
    const double eps_drop = 0.0;  // keep everything; area filter happens on emit
    for (int i = 0; i < f.simplex_count(); ++i) {
        Poly fp = tri_of(f, i);
        std::vector<Poly> remaining = {fp};
        for (int j = 0; j < g.simplex_count(); ++j) {
            Poly gp = tri_of(g, j);
            Poly inter = fp;
            for (const Half& h : tri_halfplanes(gp[0], gp[1], gp[2]))
                inter = clip_halfplane(inter, h.w, h.d);
            if (poly_area(inter) > eps_drop) pieces.push_back({std::move(inter), i, j});
            std::vector<Poly> next;
            for (const auto& r : remaining) {
                auto sub = subtract_triangle(r, gp[0], gp[1], gp[2]);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            remaining = std::move(next);
            if (remaining.empty()) break;
        }
        for (auto& r : remaining)
            if (poly_area(r) > eps_drop) pieces.push_back({std::move(r), i, -1});
    }
    for (int j = 0; j < g.simplex_count(); ++j) {
        std::vector<Poly> remaining = {tri_of(g, j)};
        for (int i = 0; i < f.simplex_count() && !remaining.empty(); ++i) {
            Poly fp = tri_of(f, i);
            std::vector<Poly> next;
            for (const auto& r : remaining) {
                auto sub = subtract_triangle(r, fp[0], fp[1], fp[2]);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            remaining = std::move(next);
        }
        for (auto& r : remaining)
            if (poly_area(r) > eps_drop) pieces.push_back({std::move(r), -1, j});
    }
    return pieces;
}

PwaFunction lattice_2d(const PwaFunction& f, const PwaFunction& g, bool join) {
    const double scale = std::fmax(f.coord_scale(), g.coord_scale());
    const double eps_area = 1e-12 * scale * scale;
    const double weld_tol = 1e-9 * scale;
    double total_in = f.total_mesh_volume() + g.total_mesh_volume();
    double dropped = 0.0;

    std::vector<TriOut> tris;
    for (auto& pc : overlay_2d(f, g)) {
        const bool has_f = pc.fs >= 0, has_g = pc.gs >= 0;
        Affine af = has_f ? Affine{f.gradients[pc.fs], f.constants[pc.fs]} : Affine{{0, 0, 0}, 0};
        Affine ag = has_g ? Affine{g.gradients[pc.gs], g.constants[pc.gs]} : Affine{{0, 0, 0}, 0};
        if (has_f && has_g) {
            // Split by {f = g}; each side is affine.
            Vec w = af.g - ag.g;
            double d = af.c - ag.c;
            double span = 0.0;
            for (const auto& x : pc.poly) span = std::fmax(span, std::fabs(dot(w, x) + d));
            if (span <= 1e-13 * std::fmax(f.max_abs(), g.max_abs())) {
                emit_poly(tris, pc.poly, af, eps_area, &dropped);  // f == g on the piece
                continue;
            }
            Poly fp_side = clip_halfplane(pc.poly, w, d);     // f >= g
            Poly gp_side = clip_halfplane(pc.poly, -w, -d);   // g >= f
            const Affine& top = join ? af : ag;
            const Affine& bot = join ? ag : af;
            if (!fp_side.empty()) emit_poly(tris, fp_side, top, eps_area, &dropped);
            if (!gp_side.empty()) emit_poly(tris, gp_side, bot, eps_area, &dropped);
        } else if (join) {
            // Single cover: max(f,0)=f / max(g,0)=g for nonnegative inputs;
            // min is identically zero there and contributes nothing.
            emit_poly(tris, pc.poly, has_f ? af : ag, eps_area, &dropped);
        }
    }
    if (dropped > 1e-9 * std::fmax(total_in, 1e-30))
        throw MeshOverlayFailure("overlay dropped " + std::to_string(dropped) +
                                 " area in degenerate cells");
    return assemble(2, tris, weld_tol);
}

bool same_mesh(const PwaFunction& f, const PwaFunction& g) {
    if (f.vertices.size() != g.vertices.size() || f.simplices.size() != g.simplices.size())
        return false;
    for (size_t i = 0; i < f.vertices.size(); ++i) {
        if (f.vertices[i].x != g.vertices[i].x || f.vertices[i].y != g.vertices[i].y ||
            f.vertices[i].z != g.vertices[i].z)
            return false;
    }
    for (size_t i = 0; i < f.simplices.size(); ++i)
        if (f.simplices[i] != g.simplices[i]) return false;
    return true;
}

bool disjoint_supports(const PwaFunction& f, const PwaFunction& g) {
    const int nv = f.dim + 1;
    for (int i = 0; i < f.simplex_count(); ++i) {
        Vec xi[4];
        for (int k = 0; k < nv; ++k) xi[k] = f.vertices[f.simplices[i][k]];
        for (int j = 0; j < g.simplex_count(); ++j) {
            // Clip simplex i by the halfspaces of simplex j.
            std::vector<std::array<Vec, 4>> pieces(1);
            for (int k = 0; k < nv; ++k) pieces[0][k] = xi[k];
            Vec xj[4];
            for (int k = 0; k < nv; ++k) xj[k] = g.vertices[g.simplices[j][k]];
            for (int face = 0; face < nv && !pieces.empty(); ++face) {
                Vec a, w;
                double d;
                if (f.dim == 2) {
                    a = xj[(face + 1) % 3];
                    Vec b = xj[(face + 2) % 3];
                    w = {-(b - a).y, (b - a).x, 0.0};
                    if (dot(w, xj[face] - a) < 0.0) w = -w;
                    d = -dot(w, a);
                } else {
                    a = xj[(face + 1) % 4];
                    Vec b = xj[(face + 2) % 4], c = xj[(face + 3) % 4];
                    w = cross(b - a, c - a);
                    if (dot(w, xj[face] - a) < 0.0) w = -w;
                    d = -dot(w, a);
                }
                std::vector<std::array<Vec, 4>> next;
                for (const auto& pc : pieces) {
                    double vals[4];
                    for (int k = 0; k < nv; ++k) vals[k] = dot(w, pc[k]) + d;
                    auto sub = clip_pieces_above(f.dim, pc.data(), vals, 0.0);
                    next.insert(next.end(), sub.begin(), sub.end());
                }
                pieces = std::move(next);
            }
            double inter = 0.0;
            for (const auto& pc : pieces) {
                Vec arr[4] = {pc[0], pc[1], pc[2], pc[3]};
                if (f.dim == 2)
                    inter += 0.5 * std::fabs(cross2(arr[1] - arr[0], arr[2] - arr[0]));
                else
                    inter += std::fabs(dot(arr[1] - arr[0], cross(arr[2] - arr[0], arr[3] - arr[0]))) / 6.0;
            }
            if (inter > 1e-12 * std::fmin(f.vols[i], g.vols[j])) return false;
        }
    }
    return true;
}

PwaFunction concat(const PwaFunction& f, const PwaFunction& g) {
    std::vector<Vec> verts = f.vertices;
    verts.insert(verts.end(), g.vertices.begin(), g.vertices.end());
    std::vector<double> vals = f.values;
    vals.insert(vals.end(), g.values.begin(), g.values.end());
    std::vector<std::array<int, 4>> simps = f.simplices;
    const int off = static_cast<int>(f.vertices.size());
    for (auto s : g.simplices) {
        for (int k = 0; k <= g.dim; ++k) s[k] += off;
        simps.push_back(s);
    }
    return PwaFunction::make(f.dim, std::move(verts), std::move(simps), std::move(vals));
}

PwaFunction lattice_3d(const PwaFunction& f, const PwaFunction& g, bool join) {
    if (same_mesh(f, g)) {
        std::vector<Vec> verts;
        std::vector<double> vals;
        std::vector<std::array<int, 4>> simps;
        std::map<std::array<long long, 3>, int> grid3;
        const double weld_tol = 1e-9 * std::fmax(f.coord_scale(), 1e-30);
        auto weld = [&](const Vec& p, double value) {
            std::array<long long, 3> key = {static_cast<long long>(std::floor(p.x / weld_tol)),
                                            static_cast<long long>(std::floor(p.y / weld_tol)),
                                            static_cast<long long>(std::floor(p.z / weld_tol))};
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy)
                    for (long long dz = -1; dz <= 1; ++dz) {
                        auto it = grid3.find({key[0] + dx, key[1] + dy, key[2] + dz});
                        if (it != grid3.end() && dist(verts[it->second], p) <= weld_tol)
                            return it->second;
                    }
            int idx = static_cast<int>(verts.size());
            verts.push_back(p);
            vals.push_back(value);
            grid3[key] = idx;
            return idx;
        };
        const double vol_floor = 1e-12 * std::pow(f.coord_scale(), 3);
        for (int i = 0; i < f.simplex_count(); ++i) {
            Vec x[4];
            double dvals[4];
            for (int k = 0; k < 4; ++k) {
                x[k] = f.vertices[f.simplices[i][k]];
                dvals[k] = f.values[f.simplices[i][k]] - g.values[f.simplices[i][k]];
            }
            Affine af{f.gradients[i], f.constants[i]};
            Affine ag{g.gradients[i], g.constants[i]};
            const Affine& on_f_side = join ? af : ag;
            const Affine& on_g_side = join ? ag : af;
            auto emit = [&](const std::vector<std::array<Vec, 4>>& pieces, const Affine& fn) {
                for (const auto& pc : pieces) {
                    Vec arr[4] = {pc[0], pc[1], pc[2], pc[3]};
                    double v = std::fabs(dot(arr[1] - arr[0], cross(arr[2] - arr[0], arr[3] - arr[0]))) / 6.0;
                    if (v <= vol_floor) continue;
                    int a = weld(pc[0], fn(pc[0])), b = weld(pc[1], fn(pc[1]));
                    int c = weld(pc[2], fn(pc[2])), d = weld(pc[3], fn(pc[3]));
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    simps.push_back({a, b, c, d});
                }
            };
            double neg[4] = {-dvals[0], -dvals[1], -dvals[2], -dvals[3]};
            emit(clip_pieces_above(3, x, dvals, 0.0), on_f_side);
            emit(clip_pieces_above(3, x, neg, 0.0), on_g_side);
        }
        if (simps.empty()) {
            PwaFunction trivial;
            trivial.dim = 3;
            return trivial;
        }
        return PwaFunction::make(3, std::move(verts), std::move(simps), std::move(vals));
    }
    if (disjoint_supports(f, g)) {
        if (join) return concat(f, g);
        PwaFunction trivial;
        trivial.dim = 3;
        return trivial;  // min of nonnegative functions with disjoint supports
    }
    throw MeshOverlayFailure(
        "3D lattice operations support identical meshes or disjoint supports only");
}

}  // namespace

PwaFunction lattice_join(const PwaFunction& f, const PwaFunction& g) {
    if (f.dim != g.dim) throw DimensionMismatch("lattice operands differ in dimension");
    require_nonnegative(f, "operands");
    require_nonnegative(g, "operands");
    return f.dim == 2 ? lattice_2d(f, g, true) : lattice_3d(f, g, true);
}

PwaFunction lattice_meet(const PwaFunction& f, const PwaFunction& g) {
    if (f.dim != g.dim) throw DimensionMismatch("lattice operands differ in dimension");
    require_nonnegative(f, "operands");
    require_nonnegative(g, "operands");
    return f.dim == 2 ? lattice_2d(f, g, false) : lattice_3d(f, g, false);
}

}  // namespace lpb
