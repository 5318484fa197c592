#include "spaceform/isometry.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spaceform {

namespace {

Matrix scaling(const ModelSpace& space, double power) {
    Matrix s = Matrix::Identity(space.ambient_dim(), space.ambient_dim());
    s(0, 0) = std::pow(space.radius(), power);
    return s;
}

// Conjugates a curved-space isometry into scaled coordinates, where it is
// orthogonal (spherical) or Lorentzian (hyperbolic).
Matrix normalized_matrix(const Isometry& g) {
    const ModelSpace& space = g.space();
    return scaling(space, 1.0) * g.matrix() * scaling(space, -1.0);
}

Matrix twist_matrix(const ModelSpace& space, const Eigen::Matrix4d& m) {
    return scaling(space, -1.0) * Matrix(m) * scaling(space, 1.0);
}

void require_twist_space(const ModelSpace& space) {
    if (space.curvature() != Curvature::Spherical || space.dim() != 3) {
        throw SpaceMismatch("quaternion twists act on the 3-sphere only");
    }
}

} // namespace

Isometry Isometry::identity(const ModelSpace& space) {
    const int dim = space.ambient_dim();
    return {space, Matrix::Identity(dim, dim)};
}

Isometry Isometry::from_matrix(const ModelSpace& space, const Matrix& a) {
    const int dim = space.ambient_dim();
    if (a.rows() != dim || a.cols() != dim) throw DimensionMismatch("isometry matrix must be (n+1)x(n+1)");
    Isometry g(space, a);
    const double defect = g.form_defect();
    const double tol = 1e-9 * std::max(1.0, a.squaredNorm());
    if (!(defect <= tol)) throw InvalidArgument("matrix does not preserve the model (defect " + std::to_string(defect) + ")");
    if (space.curvature() == Curvature::Hyperbolic && !(a(0, 0) > 0.0)) {
        throw InvalidArgument("matrix swaps the two sheets of the hyperboloid");
    }
    return g;
}

Isometry Isometry::translation(const ModelSpace& space, const Vector& b) {
    return flat_affine(space, Matrix::Identity(space.dim(), space.dim()), b);
}

Isometry Isometry::flat_affine(const ModelSpace& space, const Matrix& rotation, const Vector& b) {
    if (!space.is_flat()) throw SpaceMismatch("affine maps with translation exist only in flat space");
    const int n = space.dim();
    if (rotation.rows() != n || rotation.cols() != n || b.size() != n) {
        throw DimensionMismatch("flat affine map needs an n x n block and a length-n translation");
    }
    Matrix a = Matrix::Zero(n + 1, n + 1);
    a(0, 0) = 1.0;
    a.block(1, 0, n, 1) = b;
    a.block(1, 1, n, n) = rotation;
    return from_matrix(space, a);
}

Matrix Isometry::linear_part() const {
    const int n = space_.dim();
    if (space_.is_flat()) return matrix_.block(1, 1, n, n);
    return matrix_;
}

Vector Isometry::translation_part() const {
    const int n = space_.dim();
    if (space_.is_flat()) return matrix_.block(1, 0, n, 1);
    return Vector::Zero(n);
}

int Isometry::orientation() const { return matrix_.determinant() >= 0.0 ? 1 : -1; }

Isometry Isometry::with_word(std::vector<int> word) const {
    Isometry copy = *this;
    copy.word_ = std::move(word);
    return copy;
}

AmbientPoint Isometry::apply(const AmbientPoint& p) const {
    if (p.x.size() != space_.ambient_dim()) throw DimensionMismatch("point dimension does not match isometry");
    return {matrix_ * p.x};
}

Isometry Isometry::inverse() const {
    if (twist_) {
        Isometry inv = twist_->side == TwistSide::Left ? left_twist(twist_->q.conj(), space_)
                                                       : right_twist(twist_->q.conj(), space_);
        return inv;
    }
    const int n = space_.dim();
    Matrix inv;
    if (space_.is_flat()) {
        const Matrix rt = matrix_.block(1, 1, n, n).transpose();
        inv = Matrix::Zero(n + 1, n + 1);
        inv(0, 0) = 1.0;
        inv.block(1, 1, n, n) = rt;
        inv.block(1, 0, n, 1) = -rt * matrix_.block(1, 0, n, 1);
    } else {
        // A^T G A = G  =>  A^{-1} = G^{-1} A^T G.
        const Matrix g = space_.gram();
        Matrix ginv = g;
        ginv(0, 0) = 1.0 / g(0, 0);
        inv = ginv * matrix_.transpose() * g;
    }
    return {space_, std::move(inv)};
}

bool Isometry::is_identity(double tol) const {
    const int dim = space_.ambient_dim();
    return (matrix_ - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

bool Isometry::approx_equal(const Isometry& other, double tol) const {
    return space_ == other.space_ && (matrix_ - other.matrix_).cwiseAbs().maxCoeff() <= tol;
}

double Isometry::form_defect() const {
    const int n = space_.dim();
    if (space_.is_flat()) {
        double defect = std::abs(matrix_(0, 0) - 1.0);
        defect = std::max(defect, matrix_.block(0, 1, 1, n).cwiseAbs().maxCoeff());
        const Matrix r = matrix_.block(1, 1, n, n);
        defect = std::max(defect, (r.transpose() * r - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
        return defect;
    }
    const Matrix g = space_.gram();
    return (matrix_.transpose() * g * matrix_ - g).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff());
}

Isometry compose(const Isometry& f, const Isometry& g) {
    if (f.space_ != g.space_) throw SpaceMismatch("cannot compose isometries of different spaces");
    std::vector<int> word = f.word_;
    word.insert(word.end(), g.word_.begin(), g.word_.end());

    // An exact identity factor passes the other factor's twist through.
    if (!g.twist_ && g.matrix_.isIdentity(0.0)) {
        Isometry h = f;
        h.word_ = std::move(word);
        return h;
    }
    if (!f.twist_ && f.matrix_.isIdentity(0.0)) {
        Isometry h = g;
        h.word_ = std::move(word);
        return h;
    }
    if (f.twist_ && g.twist_ && f.twist_->side == g.twist_->side) {
        // L(p) L(q) = L(pq);  R(p) R(q) x = x q p = R(qp) x.
        const bool left = f.twist_->side == TwistSide::Left;
        const Quaternion q = left ? f.twist_->q * g.twist_->q : g.twist_->q * f.twist_->q;
        Isometry h = left ? left_twist(q, f.space_) : right_twist(q, f.space_);
        h.word_ = std::move(word);
        return h;
    }
    Isometry h(f.space_, f.matrix_ * g.matrix_);
    h.word_ = std::move(word);
    return h;
}

Isometry left_twist(const Quaternion& q, const ModelSpace& space) {
    require_twist_space(space);
    if (q.norm2() == 0.0) throw InvalidArgument("zero quaternion does not define a twist");
    const Quaternion u = q.normalized();
    Isometry g(space, twist_matrix(space, left_multiplication_matrix(u)));
    g.twist_ = Twist{TwistSide::Left, u};
    return g;
}

Isometry right_twist(const Quaternion& q, const ModelSpace& space) {
    require_twist_space(space);
    if (q.norm2() == 0.0) throw InvalidArgument("zero quaternion does not define a twist");
    const Quaternion u = q.normalized();
    Isometry g(space, twist_matrix(space, right_multiplication_matrix(u)));
    g.twist_ = Twist{TwistSide::Right, u};
    return g;
}

double minimal_displacement(const Isometry& g, const ModelSpace& space) {
    if (g.space() != space) throw SpaceMismatch("isometry does not act on this space");
    const double k = space.radius();
    switch (space.curvature()) {
    case Curvature::Spherical: {
        if (g.twist()) return k * std::acos(std::clamp(g.twist()->q.w, -1.0, 1.0));
        // min over unit u of angle(u, B u) = arccos(max eigenvalue of sym(B)).
        const Matrix b = normalized_matrix(g);
        const Matrix sym = 0.5 * (b + b.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
        return k * std::acos(std::clamp(eig.eigenvalues().maxCoeff(), -1.0, 1.0));
    }
    case Curvature::Flat: {
        const int n = space.dim();
        const Matrix m = g.linear_part() - Matrix::Identity(n, n);
        const Vector b = g.translation_part();
        // Least-squares residual of (R - I) x = -b: the part of b along ker(R^T - I).
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
        cod.setThreshold(1e-10);
        const Vector x = cod.solve(-b);
        return (m * x + b).norm();
    }
    case Curvature::Hyperbolic: {
        const Matrix b = normalized_matrix(g);
        Eigen::EigenSolver<Matrix> eig(b, false);
        double rho = 0.0;
        for (int i = 0; i < eig.eigenvalues().size(); ++i) rho = std::max(rho, std::abs(eig.eigenvalues()[i]));
        return rho > 1.0 + 1e-9 ? k * std::log(rho) : 0.0;
    }
    }
    return 0.0;
}

std::optional<AmbientPoint> fixed_point(const Isometry& g, const ModelSpace& space) {
    if (g.space() != space) throw SpaceMismatch("isometry does not act on this space");
    constexpr double kResidual = 1e-8;
    const int dim = space.ambient_dim();
    const int n = space.dim();

    auto canonical_sign = [](Vector v) {
        for (int i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > 1e-12) {
                if (v[i] < 0.0) v = -v;
                break;
            }
        }
        return v;
    };

    if (space.is_flat()) {
        const Matrix m = g.linear_part() - Matrix::Identity(n, n);
        const Vector b = g.translation_part();
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
        cod.setThreshold(1e-10);
        const Vector x = cod.solve(-b);
        if ((m * x + b).norm() > kResidual) return std::nullopt;
        return AmbientPoint{space.from_flat(x)};
    }

    const Matrix b = normalized_matrix(g) - Matrix::Identity(dim, dim);
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    std::vector<int> kernel;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] <= kResidual) kernel.push_back(i);
    }
    if (kernel.empty()) return std::nullopt;

    const double k = space.radius();
    Matrix unscale = Matrix::Identity(dim, dim);
    unscale(0, 0) = 1.0 / k;

    if (space.curvature() == Curvature::Spherical) {
        Vector u = canonical_sign(svd.matrixV().col(kernel.front()));
        return AmbientPoint{unscale * (k * u.normalized())};
    }

    // Hyperbolic: need a timelike vector in the kernel.
    Matrix basis(dim, static_cast<int>(kernel.size()));
    for (size_t c = 0; c < kernel.size(); ++c) basis.col(static_cast<int>(c)) = svd.matrixV().col(kernel[c]);
    Matrix eta = Matrix::Identity(dim, dim);
    eta(0, 0) = -1.0;
    const Matrix restricted = basis.transpose() * eta * basis;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(restricted);
    if (eig.eigenvalues()[0] >= -1e-12) return std::nullopt;
    Vector u = basis * eig.eigenvectors().col(0);
    u /= std::sqrt(-u.dot(eta * u));
    if (u[0] < 0.0) u = -u;
    return AmbientPoint{unscale * (k * u)};
}

} // namespace spaceform
