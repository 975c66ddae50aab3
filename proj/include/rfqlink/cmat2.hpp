#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace rfqlink {

using Complex = std::complex<double>;

/// 2x2 complex matrix stored row-major. Small enough that everything is by value.
struct CMat2 {
    std::array<Complex, 4> m{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};

    CMat2() = default;
    CMat2(Complex a11, Complex a12, Complex a21, Complex a22) : m{a11, a12, a21, a22} {}

    Complex& operator()(int r, int c) { return m[static_cast<size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return m[static_cast<size_t>(2 * r + c)]; }

    static CMat2 identity() { return CMat2(); }

    Complex det() const { return m[0] * m[3] - m[1] * m[2]; }

    CMat2 operator*(const CMat2& o) const {
        return CMat2(m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                     m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]);
    }

    CMat2 operator+(const CMat2& o) const {
        return CMat2(m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]);
    }

    CMat2 operator-(const CMat2& o) const {
        return CMat2(m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]);
    }

    CMat2 operator*(Complex s) const { return CMat2(m[0] * s, m[1] * s, m[2] * s, m[3] * s); }
    CMat2 operator/(Complex s) const { return CMat2(m[0] / s, m[1] / s, m[2] / s, m[3] / s); }

    /// True when |det| is below the singularity floor.
    bool singular(double floor = 1e-300) const { return std::abs(det()) < floor; }

    CMat2 inverse() const {
        const Complex d = det();
        return CMat2(m[3] / d, -m[1] / d, -m[2] / d, m[0] / d);
    }

    double max_abs() const {
        double v = 0.0;
        for (const auto& e : m) v = std::max(v, std::abs(e));
        return v;
    }
};

/// Largest singular value, from the closed-form eigenvalues of A^H A.
double spectral_norm(const CMat2& a);

}  // namespace rfqlink
