#ifndef RETFIELDS_VEC_HPP
#define RETFIELDS_VEC_HPP

#include <array>
#include <cmath>

namespace retfields {

struct Vec3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

    constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    constexpr Vec3& operator+=(const Vec3& o)
    {
        c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o)
    {
        c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
        return *this;
    }
    constexpr Vec3& operator*=(double s)
    {
        c[0] *= s; c[1] *= s; c[2] *= s;
        return *this;
    }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.c[0], -a.c[1], -a.c[2]}; }

constexpr double dot(const Vec3& a, const Vec3& b)
{
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.c[1] * b.c[2] - a.c[2] * b.c[1],
            a.c[2] * b.c[0] - a.c[0] * b.c[2],
            a.c[0] * b.c[1] - a.c[1] * b.c[0]};
}

constexpr double norm2(const Vec3& a) { return dot(a, a); }

inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Standard basis vector along axis i (0, 1 or 2).
constexpr Vec3 basis(int i)
{
    Vec3 b;
    b[i] = 1.0;
    return b;
}

inline double max_abs(const Vec3& a)
{
    return std::max({std::fabs(a.c[0]), std::fabs(a.c[1]), std::fabs(a.c[2])});
}

} // namespace retfields

#endif
