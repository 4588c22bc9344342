#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "lpbody/errors.hpp"

namespace lpb {

// Small fixed vector used for both dimensions; 2D data keeps z == 0 so the
// 3-component formulas stay valid.
struct Vec {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec() = default;
    Vec(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    Vec operator+(const Vec& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec operator-(const Vec& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec operator-() const { return {-x, -y, -z}; }
    Vec& operator+=(const Vec& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec cross(const Vec& a, const Vec& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double cross2(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& v) {
    double n = norm(v);
    if (n <= 0.0) throw InputError("cannot normalize zero vector");
    return v * (1.0 / n);
}

// Angular distance between two unit vectors, safe near 0 and pi.
inline double angular_dist(const Vec& a, const Vec& b) {
    return 2.0 * std::asin(0.5 * std::fmin(2.0, dist(a, b)));
}

// Dense n x n matrix for n in {2,3}; 2D matrices are embedded with
// m[2][2] = 1 so determinant and inverse formulas are shared.
struct Mat {
    int dim = 3;
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static Mat identity(int dim) {
        Mat r;
        r.dim = dim;
        return r;
    }

    static Mat from_rows(int dim, const Vec& r0, const Vec& r1, const Vec& r2 = Vec{0, 0, 1}) {
        Mat r;
        r.dim = dim;
        const Vec rows[3] = {r0, r1, r2};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = rows[i][j];
        return r;
    }

    static Mat rotation2(double theta) {
        Mat r = identity(2);
        r.m[0][0] = std::cos(theta);
        r.m[0][1] = -std::sin(theta);
        r.m[1][0] = std::sin(theta);
        r.m[1][1] = std::cos(theta);
        return r;
    }

    static Mat diag(int dim, double a, double b, double c = 1.0) {
        Mat r = identity(dim);
        r.m[0][0] = a;
        r.m[1][1] = b;
        r.m[2][2] = c;
        return r;
    }

    Vec apply(const Vec& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat transposed() const {
        Mat r;
        r.dim = dim;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    double det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    Mat inverse() const {
        double d = det();
        double scale = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) scale = std::fmax(scale, std::fabs(m[i][j]));
        if (std::fabs(d) <= 1e-14 * scale * scale * scale)
            throw SingularMatrix("matrix is numerically singular");
        Mat r;
        r.dim = dim;
        r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
        r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
        r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
        r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
        r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
        r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
        r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
        r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
        r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
        return r;
    }

    Mat operator*(const Mat& o) const {
        Mat r;
        r.dim = dim;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }
};

// Solve the 3x3 system rows * x = rhs by Cramer's rule.
inline Vec solve3(const Vec& r0, const Vec& r1, const Vec& r2, const Vec& rhs) {
    Mat a = Mat::from_rows(3, r0, r1, r2);
    double d = a.det();
    if (d == 0.0) throw SingularMatrix("degenerate 3x3 system");
    auto rep = [&](int col) {
        Mat b = a;
        b.m[0][col] = rhs.x;
        b.m[1][col] = rhs.y;
        b.m[2][col] = rhs.z;
        return b.det() / d;
    };
    return {rep(0), rep(1), rep(2)};
}

// Intersection of the two lines u0.x = h0 and u1.x = h1 in the plane.
inline Vec solve2(const Vec& u0, const Vec& u1, double h0, double h1) {
    double d = cross2(u0, u1);
    if (d == 0.0) throw SingularMatrix("parallel lines");
    return {(h0 * u1.y - h1 * u0.y) / d, (u0.x * h1 - u1.x * h0) / d, 0.0};
}

}  // namespace lpb
