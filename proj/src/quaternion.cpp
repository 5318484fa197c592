#include "spaceform/quaternion.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <numbers>

namespace spaceform {

Quaternion Quaternion::exp_imaginary(const Quaternion& axis, double angle) {
    const Quaternion u = axis.imaginary();
    const double len = u.norm();
    if (len == 0.0) throw InvalidArgument("exp_imaginary needs a nonzero imaginary axis");
    const double s = std::sin(angle) / len;
    return {std::cos(angle), s * u.x, s * u.y, s * u.z};
}

Quaternion Quaternion::normalized() const {
    const double len = norm();
    if (len == 0.0) throw InvalidArgument("cannot normalize the zero quaternion");
    return (1.0 / len) * *this;
}

double sphere_distance(const Quaternion& a, const Quaternion& b) {
    const double c = dot(a, b);
    if (c >= 0.0) return 2.0 * std::asin(std::min(1.0, (a - b).norm() / 2.0));
    return std::numbers::pi - 2.0 * std::asin(std::min(1.0, (a + b).norm() / 2.0));
}

Eigen::Matrix4d left_multiplication_matrix(const Quaternion& q) {
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) m.col(c) = (q * Quaternion::from_vector(Eigen::Vector4d::Unit(c))).vec();
    return m;
}

Eigen::Matrix4d right_multiplication_matrix(const Quaternion& q) {
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) m.col(c) = (Quaternion::from_vector(Eigen::Vector4d::Unit(c)) * q).vec();
    return m;
}

} // namespace spaceform
