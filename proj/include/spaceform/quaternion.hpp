#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace spaceform {

/// Real quaternion w + x i + y j + z k. Points of S^3 are unit quaternions with
/// the ambient coordinates (x0, x1, x2, x3) = (w, x, y, z).
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
    template <typename Derived>
    static Quaternion from_vector(const Eigen::MatrixBase<Derived>& v) { return {v(0), v(1), v(2), v(3)}; }

    Eigen::Vector4d vec() const { return {w, x, y, z}; }

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    /// Unit imaginary axis u times angle: exp(angle * u) = cos(angle) + sin(angle) u.
    /// `axis` is normalized internally; its real part is ignored.
    static Quaternion exp_imaginary(const Quaternion& axis, double angle);

    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    Quaternion normalized() const;
    Quaternion imaginary() const { return {0, x, y, z}; }
    Eigen::Vector3d imaginary_vec() const { return {x, y, z}; }

    bool is_unit(double tol = 1e-9) const { return std::abs(norm2() - 1.0) <= tol; }

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

    /// Euclidean inner product on R^4.
    friend double dot(const Quaternion& a, const Quaternion& b) {
        return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    }
};

/// Great-circle distance between unit quaternions viewed as points of S^3.
double sphere_distance(const Quaternion& a, const Quaternion& b);

/// 4x4 matrix of x -> q x.
Eigen::Matrix4d left_multiplication_matrix(const Quaternion& q);
/// 4x4 matrix of x -> x q.
Eigen::Matrix4d right_multiplication_matrix(const Quaternion& q);

} // namespace spaceform
