#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace cnb {

// Sign of the curvature: selects the ambient metric and the trig family.
// Spherical (+1): Euclidean dot, circular functions, unit sphere S^3.
// Hyperbolic (-1): Lorentz product, hyperbolic functions, upper sheet of H^3.
enum class Sign : int { Spherical = +1, Hyperbolic = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }

inline Sign sign_from_int(int v) {
    if (v == +1) return Sign::Spherical;
    if (v == -1) return Sign::Hyperbolic;
    throw std::invalid_argument("sign must be +1 or -1");
}

struct Vec4 {
    double x = 0, y = 0, z = 0, w = 0;

    double& operator[](std::size_t i) { return (&x)[i]; }
    double operator[](std::size_t i) const { return (&x)[i]; }

    Vec4& operator+=(const Vec4& o) { x += o.x; y += o.y; z += o.z; w += o.w; return *this; }
    Vec4& operator-=(const Vec4& o) { x -= o.x; y -= o.y; z -= o.z; w -= o.w; return *this; }
    Vec4& operator*=(double a) { x *= a; y *= a; z *= a; w *= a; return *this; }
};

inline Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
inline Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
inline Vec4 operator*(double a, Vec4 v) { return v *= a; }
inline Vec4 operator*(Vec4 v, double a) { return v *= a; }
inline Vec4 operator-(const Vec4& v) { return {-v.x, -v.y, -v.z, -v.w}; }

// Euclidean dot for Spherical sign, Lorentz product x1x2+y1y2+z1z2-w1w2 otherwise.
inline double metric_dot(const Vec4& u, const Vec4& v, Sign s) {
    double ww = u.w * v.w;
    return u.x * v.x + u.y * v.y + u.z * v.z + (s == Sign::Spherical ? ww : -ww);
}

inline double dot(const Vec4& u, const Vec4& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z + u.w * v.w;
}

inline double norm(const Vec4& v) { return std::sqrt(dot(v, v)); }

inline double norm_inf(const Vec4& v) {
    return std::max(std::max(std::fabs(v.x), std::fabs(v.y)),
                    std::max(std::fabs(v.z), std::fabs(v.w)));
}

// Row-major 4x4 matrix, just enough linear algebra for the isometry groups.
struct Mat4 {
    std::array<double, 16> a{};

    static Mat4 identity() {
        Mat4 m;
        m.a[0] = m.a[5] = m.a[10] = m.a[15] = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[4 * i + j]; }
    double operator()(int i, int j) const { return a[4 * i + j]; }

    Vec4 apply(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i) {
            r[i] = a[4 * i + 0] * v.x + a[4 * i + 1] * v.y + a[4 * i + 2] * v.z + a[4 * i + 3] * v.w;
        }
        return r;
    }

    Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
};

inline Mat4 operator*(const Mat4& A, const Mat4& B) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += A(i, k) * B(k, j);
            r(i, j) = s;
        }
    return r;
}

// Signature matrix G = diag(1,1,1,sigma).
inline Mat4 signature_matrix(Sign s) {
    Mat4 g = Mat4::identity();
    g(3, 3) = (s == Sign::Spherical) ? 1.0 : -1.0;
    return g;
}

// max |(M^T G M - G)_{ij}|, zero for exact isometries of the sigma-metric.
inline double isometry_defect(const Mat4& m, Sign s) {
    Mat4 g = signature_matrix(s);
    Mat4 r = m.transposed() * g * m;
    double worst = 0;
    for (int i = 0; i < 16; ++i) worst = std::max(worst, std::fabs(r.a[i] - g.a[i]));
    return worst;
}

// Inverse of a sigma-isometry: M^{-1} = G M^T G.
inline Mat4 isometry_inverse(const Mat4& m, Sign s) {
    Mat4 g = signature_matrix(s);
    return g * m.transposed() * g;
}

} // namespace cnb
