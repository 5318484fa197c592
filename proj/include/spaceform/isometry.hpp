#pragma once

#include "spaceform/model_space.hpp"
#include "spaceform/quaternion.hpp"

#include <optional>
#include <vector>

namespace spaceform {

enum class TwistSide { Left, Right };

/// Provenance of an isometry built from quaternion multiplication on S^3.
/// Products of same-side twists stay twists; the quaternion is renormalized
/// after every product.
struct Twist {
    TwistSide side;
    Quaternion q;
};

/// A transformation of the ambient R^{n+1} preserving the model.
///
/// Curved spaces: a linear map with A^T G A = G (G the Gram matrix of a),
/// mapping the hyperbolic sheet to itself. Flat spaces: stored in homogeneous
/// form [[1, 0], [b, R]] with R orthogonal, so that A acting on (1, x) gives
/// (1, R x + b). Either determinant sign is accepted.
class Isometry {
public:
    static Isometry identity(const ModelSpace& space);

    /// Validates form preservation; throws InvalidArgument otherwise.
    static Isometry from_matrix(const ModelSpace& space, const Matrix& a);

    static Isometry translation(const ModelSpace& space, const Vector& b);
    static Isometry flat_affine(const ModelSpace& space, const Matrix& rotation, const Vector& b);

    const ModelSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    /// Orthogonal n x n block (flat only).
    Matrix linear_part() const;
    /// Translation vector b (flat only; zero vector of length n otherwise).
    Vector translation_part() const;
    int orientation() const;

    const std::vector<int>& word() const noexcept { return word_; }
    Isometry with_word(std::vector<int> word) const;

    const std::optional<Twist>& twist() const noexcept { return twist_; }

    AmbientPoint apply(const AmbientPoint& p) const;
    Vector apply(const Vector& x) const { return matrix_ * x; }

    Isometry inverse() const;

    bool is_identity(double tol = 1e-8) const;
    bool approx_equal(const Isometry& other, double tol = 1e-8) const;

    /// Max entrywise violation of form preservation (curved) or of the flat
    /// homogeneous structure and orthogonality (flat).
    double form_defect() const;

private:
    Isometry(ModelSpace space, Matrix a) : space_(space), matrix_(std::move(a)) {}

    friend Isometry compose(const Isometry& f, const Isometry& g);
    friend Isometry left_twist(const Quaternion& q, const ModelSpace& space);
    friend Isometry right_twist(const Quaternion& q, const ModelSpace& space);

    ModelSpace space_;
    Matrix matrix_;
    std::vector<int> word_;
    std::optional<Twist> twist_;
};

/// f after g. Words concatenate as f.word + g.word.
Isometry compose(const Isometry& f, const Isometry& g);

/// x -> q x on the 3-sphere of `space` (default: unit S^3). `q` is normalized.
Isometry left_twist(const Quaternion& q, const ModelSpace& space = ModelSpace::spherical(3));
/// x -> x q on the 3-sphere of `space`.
Isometry right_twist(const Quaternion& q, const ModelSpace& space = ModelSpace::spherical(3));

/// Infimum over the space of d(x, g x). Closed forms: twists give k arccos(Re q);
/// general spherical maps use the top eigenvalue of the symmetric part; flat maps
/// the translation component along the fixed directions of R; hyperbolic maps the
/// logarithm of the spectral radius.
double minimal_displacement(const Isometry& g, const ModelSpace& space);

/// Some fixed point of g on the model, if one exists (kernel of A - I with
/// singular-value residual <= 1e-8). Ties in sign resolve to the
/// lexicographically larger representative.
std::optional<AmbientPoint> fixed_point(const Isometry& g, const ModelSpace& space);

inline bool has_fixed_point(const Isometry& g, const ModelSpace& space) {
    return fixed_point(g, space).has_value();
}

} // namespace spaceform
