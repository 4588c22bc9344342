#include "lpbody/pwa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace lpb {

namespace {

double simplex_volume(int dim, const Vec* v) {
    if (dim == 2) return 0.5 * std::fabs(cross2(v[1] - v[0], v[2] - v[0]));
    return std::fabs(dot(v[1] - v[0], cross(v[2] - v[0], v[3] - v[0]))) / 6.0;
}

double simplex_volume_signed(int dim, const Vec* v) {
    if (dim == 2) return 0.5 * cross2(v[1] - v[0], v[2] - v[0]);
    return dot(v[1] - v[0], cross(v[2] - v[0], v[3] - v[0])) / 6.0;
}

Vec simplex_gradient(int dim, const Vec* x, const double* f) {
    if (dim == 2) {
        Vec e1 = x[1] - x[0], e2 = x[2] - x[0];
        double d = cross2(e1, e2);
        if (d == 0.0) throw InputError("degenerate simplex in gradient");
        double r1 = f[1] - f[0], r2 = f[2] - f[0];
        return {(r1 * e2.y - r2 * e1.y) / d, (e1.x * r2 - e2.x * r1) / d, 0.0};
    }
    return solve3(x[1] - x[0], x[2] - x[0], x[3] - x[0],
                  {f[1] - f[0], f[2] - f[0], f[3] - f[0]});
}

struct BBox {
    Vec lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    void add(const Vec& p) {
        lo.x = std::fmin(lo.x, p.x);
        lo.y = std::fmin(lo.y, p.y);
        lo.z = std::fmin(lo.z, p.z);
        hi.x = std::fmax(hi.x, p.x);
        hi.y = std::fmax(hi.y, p.y);
        hi.z = std::fmax(hi.z, p.z);
    }
    bool overlaps(const BBox& o, double pad) const {
        return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
               o.lo.y <= hi.y + pad && lo.z <= o.hi.z + pad && o.lo.z <= hi.z + pad;
    }
};

BBox simplex_bbox(const PwaFunction& f, int i) {
    BBox b;
    for (int k = 0; k <= f.dim; ++k) b.add(f.vertices[f.simplices[i][k]]);
    return b;
}

}  // namespace

PwaFunction PwaFunction::make(int dim, std::vector<Vec> verts,
                              std::vector<std::array<int, 4>> simplices,
                              std::vector<double> values, bool audit, bool boundary_zero) {
    if (dim != 2 && dim != 3) throw InputError("pwa dimension must be 2 or 3");
    if (verts.size() != values.size()) throw InputError("vertex/value count mismatch");
    if (simplices.empty()) throw InputError("pwa function needs at least one simplex");

    PwaFunction f;
    f.dim = dim;
    f.vertices = std::move(verts);
    f.simplices = std::move(simplices);
    f.values = std::move(values);

    double scale = 0.0;
    for (const auto& v : f.vertices)
        scale = std::fmax(scale, std::fmax(std::fabs(v.x), std::fmax(std::fabs(v.y), std::fabs(v.z))));
    scale = std::fmax(scale, 1e-30);

    const int nv = dim + 1;
    for (auto& s : f.simplices) {
        for (int k = 0; k < nv; ++k)
            if (s[k] < 0 || s[k] >= static_cast<int>(f.vertices.size()))
                throw InputError("simplex vertex index out of range");
        if (dim == 2) s[3] = -1;
        Vec x[4];
        for (int k = 0; k < nv; ++k) x[k] = f.vertices[s[k]];
        double sv = simplex_volume_signed(dim, x);
        if (std::fabs(sv) <= 1e-14 * std::pow(scale, dim))
            throw InputError("degenerate (zero-volume) simplex");
        if (sv < 0.0) std::swap(s[1], s[2]);  // normalize orientation
    }

    // Boundary faces appear in exactly one simplex; their vertices carry 0.
    if (boundary_zero) {
        std::map<std::vector<int>, int> face_count;
        for (const auto& s : f.simplices) {
            for (int skip = 0; skip < nv; ++skip) {
                std::vector<int> face;
                for (int k = 0; k < nv; ++k)
                    if (k != skip) face.push_back(s[k]);
                std::sort(face.begin(), face.end());
                face_count[face]++;
            }
        }
        double vscale = 0.0;
        for (double v : f.values) vscale = std::fmax(vscale, std::fabs(v));
        std::set<int> boundary;
        for (const auto& [face, cnt] : face_count)
            if (cnt == 1)
                for (int vi : face) boundary.insert(vi);
        for (int vi : boundary) {
            if (std::fabs(f.values[vi]) > 1e-9 * std::fmax(vscale, 1e-30))
                throw InputError("boundary vertex " + std::to_string(vi) +
                                 " has nonzero value " + std::to_string(f.values[vi]));
            f.values[vi] = 0.0;
        }
    }

    // Per-simplex caches.
    f.gradients.resize(f.simplices.size());
    f.vols.resize(f.simplices.size());
    f.constants.resize(f.simplices.size());
    for (size_t i = 0; i < f.simplices.size(); ++i) {
        Vec x[4];
        double fv[4] = {0, 0, 0, 0};
        for (int k = 0; k < nv; ++k) {
            x[k] = f.vertices[f.simplices[i][k]];
            fv[k] = f.values[f.simplices[i][k]];
        }
        f.vols[i] = simplex_volume(dim, x);
        f.gradients[i] = simplex_gradient(dim, x, fv);
        f.constants[i] = fv[0] - dot(f.gradients[i], x[0]);
    }
    double gmax = 0.0;
    for (const auto& g : f.gradients) gmax = std::fmax(gmax, norm(g));
    f.nontrivial = gmax > 0.0;

    if (audit) {
        // Disjoint-interior audit, bbox-filtered, capped for large meshes.
        const double pad = 1e-12 * scale;
        std::vector<BBox> boxes(f.simplices.size());
        for (size_t i = 0; i < f.simplices.size(); ++i) boxes[i] = simplex_bbox(f, static_cast<int>(i));
        size_t checked = 0;
        const size_t cap = 20000;
        for (size_t i = 0; i < f.simplices.size() && checked < cap; ++i) {
            for (size_t j = i + 1; j < f.simplices.size() && checked < cap; ++j) {
                if (!boxes[i].overlaps(boxes[j], pad)) continue;
                ++checked;
                // Clip simplex i against each halfspace of simplex j.
                std::vector<std::array<Vec, 4>> pieces(1);
                for (int k = 0; k < nv; ++k) pieces[0][k] = f.vertices[f.simplices[i][k]];
                Vec xj[4];
                for (int k = 0; k < nv; ++k) xj[k] = f.vertices[f.simplices[j][k]];
                for (int face = 0; face < nv && !pieces.empty(); ++face) {
                    // Inward halfspace of facet opposite vertex `face`.
                    Vec w;
                    double d;
                    if (dim == 2) {
                        Vec a = xj[(face + 1) % 3], b = xj[(face + 2) % 3];
                        w = {-(b - a).y, (b - a).x, 0.0};
                        if (dot(w, xj[face] - a) < 0.0) w = -w;
                        d = -dot(w, a);
                    } else {
                        Vec a = xj[(face + 1) % 4], b = xj[(face + 2) % 4], c = xj[(face + 3) % 4];
                        w = cross(b - a, c - a);
                        if (dot(w, xj[face] - a) < 0.0) w = -w;
                        d = -dot(w, a);
                    }
                    std::vector<std::array<Vec, 4>> next;
                    for (const auto& pc : pieces) {
                        double vals[4];
                        for (int k = 0; k < nv; ++k) vals[k] = dot(w, pc[k]) + d;
                        auto sub = clip_pieces_above(dim, pc.data(), vals, 0.0);
                        next.insert(next.end(), sub.begin(), sub.end());
                    }
                    pieces = std::move(next);
                }
                double inter = 0.0;
                for (const auto& pc : pieces) inter += simplex_volume(dim, pc.data());
                if (inter > 1e-9 * std::fmin(f.vols[i], f.vols[j]))
                    throw InputError("simplices " + std::to_string(i) + " and " +
                                     std::to_string(j) + " have overlapping interiors");
            }
        }
    }
    return f;
}

double PwaFunction::eval(const Vec& x) const {
    const int nv = dim + 1;
    const double tol = 1e-12 * std::fmax(coord_scale(), 1e-30);
    for (size_t i = 0; i < simplices.size(); ++i) {
        Vec v[4];
        for (int k = 0; k < nv; ++k) v[k] = vertices[simplices[i][k]];
        bool inside = true;
        for (int face = 0; face < nv && inside; ++face) {
            // x must be on the inner side of every facet.
            Vec w;
            if (dim == 2) {
                Vec a = v[(face + 1) % 3], b = v[(face + 2) % 3];
                w = {-(b - a).y, (b - a).x, 0.0};
                if (dot(w, v[face] - a) < 0.0) w = -w;
                if (dot(w, x - a) < -tol * norm(w)) inside = false;
            } else {
                Vec a = v[(face + 1) % 4], b = v[(face + 2) % 4], c = v[(face + 3) % 4];
                w = cross(b - a, c - a);
                if (dot(w, v[face] - a) < 0.0) w = -w;
                if (dot(w, x - a) < -tol * norm(w)) inside = false;
            }
        }
        if (inside) return dot(gradients[i], x) + constants[i];
    }
    return 0.0;
}

double PwaFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::fmax(m, std::fabs(v));
    return m;
}

double PwaFunction::total_mesh_volume() const {
    double t = 0.0;
    for (double v : vols) t += v;
    return t;
}

double PwaFunction::coord_scale() const {
    double s = 0.0;
    for (const auto& v : vertices)
        s = std::fmax(s, std::fmax(std::fabs(v.x), std::fmax(std::fabs(v.y), std::fabs(v.z))));
    return s;
}

// --- clipping ---------------------------------------------------------------

namespace {

inline Vec edge_cut(const Vec& a, const Vec& b, double da, double db) {
    return a + (b - a) * (da / (da - db));
}

}  // namespace

double clip_volume_above(int dim, const Vec* verts, const double* vals, double t) {
    const int nv = dim + 1;
    double d[4];
    int pos[4], neg[4];
    int np = 0, nn = 0;
    for (int k = 0; k < nv; ++k) {
        d[k] = vals[k] - t;
        if (d[k] > 0.0)
            pos[np++] = k;
        else
            neg[nn++] = k;
    }
    const double total = simplex_volume(dim, verts);
    if (np == 0) return 0.0;
    if (np == nv) return total;

    auto corner = [&](int X, const int* others, int cnt) {
        double f = 1.0;
        for (int i = 0; i < cnt; ++i) f *= d[X] / (d[X] - d[others[i]]);
        return total * f;
    };

    if (np == 1) return corner(pos[0], neg, nn);
    if (nn == 1) return total - corner(neg[0], pos, np);
    // 3D two-two case: prism (A, Pac, Pad) / (B, Pbc, Pbd).
    const int A = pos[0], B = pos[1], C = neg[0], D = neg[1];
    Vec pac = edge_cut(verts[A], verts[C], d[A], d[C]);
    Vec pad = edge_cut(verts[A], verts[D], d[A], d[D]);
    Vec pbc = edge_cut(verts[B], verts[C], d[B], d[C]);
    Vec pbd = edge_cut(verts[B], verts[D], d[B], d[D]);
    Vec t1[4] = {verts[A], pac, pad, verts[B]};
    Vec t2[4] = {pac, pad, verts[B], pbc};
    Vec t3[4] = {pad, verts[B], pbc, pbd};
    return simplex_volume(3, t1) + simplex_volume(3, t2) + simplex_volume(3, t3);
}

std::vector<std::array<Vec, 4>> clip_pieces_above(int dim, const Vec* verts, const double* vals,
                                                  double t) {
    const int nv = dim + 1;
    double d[4];
    int pos[4], neg[4];
    int np = 0, nn = 0;
    for (int k = 0; k < nv; ++k) {
        d[k] = vals[k] - t;
        if (d[k] > 0.0)
            pos[np++] = k;
        else
            neg[nn++] = k;
    }
    std::vector<std::array<Vec, 4>> out;
    if (np == 0) return out;
    if (np == nv) {
        std::array<Vec, 4> full{};
        for (int k = 0; k < nv; ++k) full[k] = verts[k];
        out.push_back(full);
        return out;
    }
    if (dim == 2) {
        if (np == 1) {
            const int A = pos[0], B = neg[0], C = neg[1];
            Vec pab = edge_cut(verts[A], verts[B], d[A], d[B]);
            Vec pac = edge_cut(verts[A], verts[C], d[A], d[C]);
            out.push_back({verts[A], pab, pac, Vec{}});
        } else {  // np == 2
            const int A = pos[0], B = pos[1], C = neg[0];
            Vec pac = edge_cut(verts[A], verts[C], d[A], d[C]);
            Vec pbc = edge_cut(verts[B], verts[C], d[B], d[C]);
            out.push_back({verts[A], verts[B], pbc, Vec{}});
            out.push_back({verts[A], pbc, pac, Vec{}});
        }
        return out;
    }
    if (np == 1) {
        const int A = pos[0];
        Vec p[3];
        for (int i = 0; i < 3; ++i) p[i] = edge_cut(verts[A], verts[neg[i]], d[A], d[neg[i]]);
        out.push_back({verts[A], p[0], p[1], p[2]});
    } else if (np == 3) {
        // Frustum: prism (A,B,C) over (Pad, Pbd, Pcd).
        const int A = pos[0], B = pos[1], C = pos[2], D = neg[0];
        Vec pad = edge_cut(verts[A], verts[D], d[A], d[D]);
        Vec pbd = edge_cut(verts[B], verts[D], d[B], d[D]);
        Vec pcd = edge_cut(verts[C], verts[D], d[C], d[D]);
        out.push_back({verts[A], verts[B], verts[C], pad});
        out.push_back({verts[B], verts[C], pad, pbd});
        out.push_back({verts[C], pad, pbd, pcd});
    } else {  // np == 2
        const int A = pos[0], B = pos[1], C = neg[0], D = neg[1];
        Vec pac = edge_cut(verts[A], verts[C], d[A], d[C]);
        Vec pad = edge_cut(verts[A], verts[D], d[A], d[D]);
        Vec pbc = edge_cut(verts[B], verts[C], d[B], d[C]);
        Vec pbd = edge_cut(verts[B], verts[D], d[B], d[D]);
        out.push_back({verts[A], pac, pad, verts[B]});
        out.push_back({pac, pad, verts[B], pbc});
        out.push_back({pad, verts[B], pbc, pbd});
    }
    return out;
}

// --- slice density ----------------------------------------------------------

namespace {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration.
const std::vector<std::pair<double, double>>& gauss16() {
    static const std::vector<std::pair<double, double>> rule = [] {
        const int n = 16;
        std::vector<std::pair<double, double>> r(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            r[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return r;
    }();
    return rule;
}

// Integrate fn over [a,b] with geometric panels toward 0 so that algebraic
// endpoint behavior t^s at t=0 stays resolved.
double integrate_graded(double a, double b, const std::function<double(double)>& fn) {
    if (b <= a) return 0.0;
    std::vector<std::pair<double, double>> panels;
    if (a <= 0.0) {
        double lo = b;
        for (int k = 0; k < 45 && lo > 0.0; ++k) {
            double next = lo * 0.5;
            panels.push_back({next, lo});
            lo = next;
        }
        panels.push_back({0.0, lo});
    } else {
        double lo = a;
        while (b - lo > lo) {  // keep panel width <= distance from zero
            double hi = 2.0 * lo;
            panels.push_back({lo, hi});
            lo = hi;
        }
        panels.push_back({lo, b});
    }
    double acc = 0.0;
    for (auto [lo, hi] : panels) {
        if (hi <= lo) continue;
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (const auto& [x, w] : gauss16()) s += w * fn(mid + half * x);
        acc += s * half;
    }
    return acc;
}

}  // namespace

SliceDensity::SliceDensity(const PwaFunction& f) : dim_(f.dim) {
    const int nv = f.dim + 1;
    // Exact pointwise evaluation of |{ |f| > t }|.
    auto mu_exact = [&](double t) {
        double acc = 0.0;
        for (size_t i = 0; i < f.simplices.size(); ++i) {
            Vec x[4];
            double v[4] = {0, 0, 0, 0}, vneg[4] = {0, 0, 0, 0};
            for (int k = 0; k < nv; ++k) {
                x[k] = f.vertices[f.simplices[i][k]];
                v[k] = f.values[f.simplices[i][k]];
                vneg[k] = -v[k];
            }
            acc += clip_volume_above(f.dim, x, v, t);
            acc += clip_volume_above(f.dim, x, vneg, t);
        }
        return acc;
    };

    double vmax = f.max_abs();
    std::vector<double> crit;
    crit.push_back(0.0);
    for (double v : f.values) crit.push_back(std::fabs(v));
    std::sort(crit.begin(), crit.end());
    breaks_.push_back(crit.front());
    for (double c : crit)
        if (c > breaks_.back() + 1e-14 * std::fmax(vmax, 1e-300)) breaks_.push_back(c);
    mu_at_zero_ = mu_exact(0.0);
    if (breaks_.size() < 2) return;  // constant-zero function

    // Interior sampling per interval; mu restricted to an interval between
    // critical values is a polynomial of degree <= n.
    const int deg = dim_;
    coeffs_.resize(breaks_.size() - 1);
    for (size_t k = 0; k + 1 < breaks_.size(); ++k) {
        double a = breaks_[k], b = breaks_[k + 1];
        double tau[4], y[4];
        for (int s = 0; s <= deg; ++s) {
            tau[s] = (s + 0.5) / (deg + 1.0);
            y[s] = mu_exact(a + (b - a) * tau[s]);
        }
        // Solve the (deg+1) x (deg+1) Vandermonde for tau-monomials.
        double m[4][5];
        for (int r = 0; r <= deg; ++r) {
            double pw = 1.0;
            for (int c = 0; c <= deg; ++c) {
                m[r][c] = pw;
                pw *= tau[r];
            }
            m[r][deg + 1] = y[r];
        }
        for (int c = 0; c <= deg; ++c) {
            int piv = c;
            for (int r = c + 1; r <= deg; ++r)
                if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
            for (int j = 0; j <= deg + 1; ++j) std::swap(m[c][j], m[piv][j]);
            for (int r = 0; r <= deg; ++r) {
                if (r == c || m[c][c] == 0.0) continue;
                double fct = m[r][c] / m[c][c];
                for (int j = c; j <= deg + 1; ++j) m[r][j] -= fct * m[c][j];
            }
        }
        coeffs_[k] = {0, 0, 0, 0};
        for (int c = 0; c <= deg; ++c) coeffs_[k][c] = m[c][deg + 1] / m[c][c];
    }
}

double SliceDensity::mu(double t) const {
    if (breaks_.size() < 2) return t < 0.0 ? mu_at_zero_ : 0.0;
    if (t < breaks_.front()) return mu_at_zero_;
    if (t >= breaks_.back()) return 0.0;
    size_t k = std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin();
    k = (k == 0) ? 0 : k - 1;
    if (k + 1 >= breaks_.size()) return 0.0;
    double tau = (t - breaks_[k]) / (breaks_[k + 1] - breaks_[k]);
    const auto& c = coeffs_[k];
    return ((c[3] * tau + c[2]) * tau + c[1]) * tau + c[0];
}

double SliceDensity::power_integral(double q) const {
    if (!(q > 0.0)) throw InputError("power integral needs q > 0");
    double acc = 0.0;
    for (size_t k = 0; k + 1 < breaks_.size(); ++k) {
        double a = breaks_[k], b = breaks_[k + 1];
        const auto& c = coeffs_[k];
        if (a == 0.0) {
            // int_0^b q t^{q-1} sum c_j (t/b)^j dt, exact.
            double bq = std::pow(b, q);
            for (int j = 0; j <= dim_; ++j) acc += c[j] * q * bq / (q + j);
        } else {
            double inv = 1.0 / (b - a);
            acc += integrate_graded(a, b, [&](double t) {
                double tau = (t - a) * inv;
                double poly = ((c[3] * tau + c[2]) * tau + c[1]) * tau + c[0];
                return q * std::pow(t, q - 1.0) * poly;
            });
        }
    }
    return acc;
}

double SliceDensity::apply(const std::function<double(double)>& dphi) const {
    double acc = 0.0;
    for (size_t k = 0; k + 1 < breaks_.size(); ++k) {
        double a = breaks_[k], b = breaks_[k + 1];
        const auto& c = coeffs_[k];
        double inv = 1.0 / (b - a);
        acc += integrate_graded(a, b, [&](double t) {
            double tau = (t - a) * inv;
            double poly = ((c[3] * tau + c[2]) * tau + c[1]) * tau + c[0];
            return dphi(t) * poly;
        });
    }
    return acc;
}

// --- measure / body operations ----------------------------------------------

namespace {

DiscreteSphereMeasure gradient_measure_impl(const PwaFunction& f, double p, bool with_factor_n) {
    double gmax = 0.0;
    for (const auto& g : f.gradients) gmax = std::fmax(gmax, norm(g));
    std::vector<Atom> atoms;
    if (gmax > 0.0) {
        const double floor = 1e-13 * gmax;
        const double factor = with_factor_n ? static_cast<double>(f.dim) : 1.0;
        for (size_t i = 0; i < f.gradients.size(); ++i) {
            double gn = norm(f.gradients[i]);
            if (gn <= floor) continue;  // the zero-gradient set contributes nothing
            atoms.push_back({f.gradients[i] * (-1.0 / gn),
                             factor * f.vols[i] * std::pow(gn, p)});
        }
    }
    return DiscreteSphereMeasure::make(f.dim, std::move(atoms));
}

}  // namespace

DiscreteSphereMeasure gradient_measure(const PwaFunction& f, double p) {
    DiscreteSphereMeasure m = gradient_measure_impl(f, p, true);
    if (m.empty()) throw TrivialFunction("function has vanishing gradient everywhere");
    return m;
}

DiscreteSphereMeasure gradient_measure_or_empty(const PwaFunction& f, double p) {
    return gradient_measure_impl(f, p, true);
}

Polytope sobolev_body(const PwaFunction& f, double p, const SolverConfig& cfg0) {
    SolverConfig cfg = cfg0;
    cfg.p = p;
    return solve(gradient_measure(f, p), cfg).first;
}

Polytope sobolev_body_normalized(const PwaFunction& f, const SolverConfig& cfg) {
    DiscreteSphereMeasure m = gradient_measure_impl(f, f.dim, false);
    if (m.empty()) throw TrivialFunction("function has vanishing gradient everywhere");
    return solve_normalized(m, cfg).first;
}

PwaFunction cone_function(const Polytope& P) {
    std::vector<Vec> verts;
    verts.push_back({0, 0, 0});
    verts.insert(verts.end(), P.vertices.begin(), P.vertices.end());
    std::vector<double> vals(verts.size(), 0.0);
    vals[0] = 1.0;
    std::vector<std::array<int, 4>> simps;
    const double vol_floor = 1e-12 * std::pow(std::fmax(P.diameter(), 1e-30), P.dim);
    for (const auto& fct : P.facets) {
        const auto& cyc = fct.cycle;
        if (P.dim == 2) {
            Vec x[3] = {{0, 0, 0}, P.vertices[cyc[0]], P.vertices[cyc[1]]};
            if (simplex_volume(2, x) > vol_floor)
                simps.push_back({0, cyc[0] + 1, cyc[1] + 1, -1});
        } else {
            for (size_t t = 1; t + 1 < cyc.size(); ++t) {
                Vec x[4] = {{0, 0, 0}, P.vertices[cyc[0]], P.vertices[cyc[t]],
                            P.vertices[cyc[t + 1]]};
                if (simplex_volume(3, x) > vol_floor)
                    simps.push_back({0, cyc[0] + 1, cyc[t] + 1, cyc[t + 1] + 1});
            }
        }
    }
    return PwaFunction::make(P.dim, std::move(verts), std::move(simps), std::move(vals));
}

PwaFunction compose_linear(const PwaFunction& f, const Mat& phi) {
    phi.inverse();  // throws SingularMatrix on degenerate maps
    std::vector<Vec> verts(f.vertices.size());
    for (size_t i = 0; i < verts.size(); ++i) verts[i] = phi.apply(f.vertices[i]);
    return PwaFunction::make(f.dim, std::move(verts), f.simplices, f.values);
}

PwaFunction translate(const PwaFunction& f, const Vec& x0) {
    std::vector<Vec> verts(f.vertices.size());
    for (size_t i = 0; i < verts.size(); ++i) verts[i] = f.vertices[i] + x0;
    return PwaFunction::make(f.dim, std::move(verts), f.simplices, f.values);
}

PwaFunction scale_values(const PwaFunction& f, double t) {
    if (t == 0.0) throw InputError("scale factor must be nonzero");
    std::vector<double> vals(f.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = t * f.values[i];
    return PwaFunction::make(f.dim, f.vertices, f.simplices, std::move(vals));
}

double directional_energy(const PwaFunction& f, const Vec& v, double lambda, double p) {
    if (lambda < 0.0 || lambda > 1.0) throw InputError("lambda must lie in [0,1]");
    double acc = 0.0;
    for (size_t i = 0; i < f.simplices.size(); ++i) {
        double dv = dot(f.gradients[i], v);
        if (dv > 0.0)
            acc += f.vols[i] * (1.0 - lambda) * std::pow(dv, p);
        else if (dv < 0.0)
            acc += f.vols[i] * lambda * std::pow(-dv, p);
    }
    return acc;
}

double power_integral(const PwaFunction& f, double q) { return SliceDensity(f).power_integral(q); }

double lp_star_norm(const PwaFunction& f, double q) {
    if (!(q >= 1.0)) throw InputError("lp_star_norm needs q >= 1");
    return std::pow(power_integral(f, q), 1.0 / q);
}

double distribution_function(const PwaFunction& f, double t) {
    if (t < 0.0) throw InputError("distribution function needs t >= 0");
    const int nv = f.dim + 1;
    double acc = 0.0;
    for (size_t i = 0; i < f.simplices.size(); ++i) {
        Vec x[4];
        double v[4] = {0, 0, 0, 0}, vneg[4] = {0, 0, 0, 0};
        for (int k = 0; k < nv; ++k) {
            x[k] = f.vertices[f.simplices[i][k]];
            v[k] = f.values[f.simplices[i][k]];
            vneg[k] = -v[k];
        }
        acc += clip_volume_above(f.dim, x, v, t);
        acc += clip_volume_above(f.dim, x, vneg, t);
    }
    return acc;
}

}  // namespace lpb
