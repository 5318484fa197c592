#include "spaceform/discrete_group.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace spaceform {

struct DiscreteGroup::Closure {
    std::once_flag once;
    std::vector<Isometry> elements;
    std::exception_ptr failure;
};

namespace {

constexpr double kDedupTolerance = 1e-8;
constexpr double kBucketWidth = 1e-5;

// Near-duplicate lookup: matrices are bucketed by a fixed linear projection of
// their entries. Two matrices within kDedupTolerance entrywise land in the same
// or adjacent buckets, so only three buckets need an exact entrywise check.
class MatrixIndex {
public:
    explicit MatrixIndex(const std::vector<Isometry>& store) : store_(store) {}

    std::optional<size_t> find(const Matrix& m) const {
        const long long key = bucket(m);
        for (long long b = key - 1; b <= key + 1; ++b) {
            auto it = buckets_.find(b);
            if (it == buckets_.end()) continue;
            for (size_t idx : it->second) {
                if ((store_[idx].matrix() - m).cwiseAbs().maxCoeff() <= kDedupTolerance) return idx;
            }
        }
        return std::nullopt;
    }

    void insert(size_t idx) { buckets_[bucket(store_[idx].matrix())].push_back(idx); }

private:
    static long long bucket(const Matrix& m) {
        double proj = 0.0;
        const Eigen::Index count = m.size();
        for (Eigen::Index i = 0; i < count; ++i) proj += (1.0 + 0.37 * static_cast<double>(i % 7)) * m.data()[i];
        return static_cast<long long>(std::floor(proj / kBucketWidth));
    }

    const std::vector<Isometry>& store_;
    std::unordered_map<long long, std::vector<size_t>> buckets_;
};

bool is_pure_translation(const Isometry& g) {
    const int n = g.space().dim();
    return g.space().is_flat() && (g.linear_part() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12;
}

int parse_positive(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
        throw InvalidArgument("bad group order in '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

std::string_view to_string(GroupKind kind) {
    switch (kind) {
    case GroupKind::Finite: return "finite";
    case GroupKind::Lattice: return "lattice";
    case GroupKind::AffineFlat: return "affine-flat";
    case GroupKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

GroupKind group_kind_from_string(std::string_view name) {
    if (name == "finite") return GroupKind::Finite;
    if (name == "lattice") return GroupKind::Lattice;
    if (name == "affine-flat") return GroupKind::AffineFlat;
    if (name == "hyperbolic") return GroupKind::Hyperbolic;
    throw InvalidArgument("unknown group kind '" + std::string(name) + "'");
}

DiscreteGroup::DiscreteGroup(ModelSpace space, std::vector<Isometry> generators, GroupKind kind, int max_word_length)
    : space_(space), kind_(kind), max_word_length_(max_word_length), closure_(std::make_shared<Closure>()) {
    if (max_word_length < 0) throw InvalidArgument("max_word_length must be nonnegative");
    for (const Isometry& g : generators) {
        if (g.space() != space_) throw SpaceMismatch("generator acts on a different space");
    }
    if (kind == GroupKind::Lattice) {
        for (const Isometry& g : generators) {
            if (!is_pure_translation(g)) throw InvalidArgument("lattice generators must be pure flat translations");
        }
    }
    if ((kind == GroupKind::Lattice || kind == GroupKind::AffineFlat) && !space_.is_flat()) {
        throw SpaceMismatch("lattice and affine-flat groups need a flat space");
    }
    if (kind == GroupKind::Hyperbolic && space_.curvature() != Curvature::Hyperbolic) {
        throw SpaceMismatch("hyperbolic group kind needs a hyperbolic space");
    }

    input_count_ = static_cast<int>(generators.size());
    for (int i = 0; i < input_count_; ++i) generators_.push_back(generators[static_cast<size_t>(i)].with_word({i}));
    inverse_index_.assign(static_cast<size_t>(input_count_), -1);
    for (int i = 0; i < input_count_; ++i) {
        const Isometry inv = generators_[static_cast<size_t>(i)].inverse();
        int found = -1;
        for (size_t j = 0; j < generators_.size(); ++j) {
            if (generators_[j].approx_equal(inv, kDedupTolerance)) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(generators_.size());
            generators_.push_back(inv.with_word({found}));
            inverse_index_.push_back(i);
        }
        inverse_index_[static_cast<size_t>(i)] = found;
    }
}

Isometry DiscreteGroup::identity_element() const {
    // A group of same-side twists keeps its identity a twist, so every element
    // reports its quaternion.
    if (!generators_.empty()) {
        const auto& first = generators_.front().twist();
        const bool uniform = first && std::all_of(generators_.begin(), generators_.end(), [&](const Isometry& g) {
                                 return g.twist() && g.twist()->side == first->side;
                             });
        if (uniform) {
            return first->side == TwistSide::Left ? left_twist(Quaternion::one(), space_)
                                                  : right_twist(Quaternion::one(), space_);
        }
    }
    return Isometry::identity(space_);
}

const std::vector<Isometry>& DiscreteGroup::elements() const {
    std::call_once(closure_->once, [this] {
        try {
            std::vector<Isometry> store;
            store.push_back(identity_element());
            MatrixIndex index(store);
            index.insert(0);

            size_t level_begin = 0;
            size_t level_end = 1;
            const bool finite = kind_ == GroupKind::Finite;
            const int levels = finite ? max_word_length_ + 1 : max_word_length_;
            bool closed = false;
            for (int length = 1; length <= levels; ++length) {
                for (size_t e = level_begin; e < level_end; ++e) {
                    for (const Isometry& g : generators_) {
                        Isometry candidate = compose(store[e], g);
                        if (index.find(candidate.matrix())) continue;
                        if (finite && length > max_word_length_) {
                            throw NotClosed("finite group not closed at cutoff " + std::to_string(max_word_length_) +
                                            " (" + std::to_string(store.size()) + " elements so far)");
                        }
                        store.push_back(std::move(candidate));
                        index.insert(store.size() - 1);
                    }
                }
                if (store.size() == level_end) {
                    closed = true;
                    break;
                }
                level_begin = level_end;
                level_end = store.size();
            }
            if (finite && !closed) {
                throw NotClosed("finite group not closed at cutoff " + std::to_string(max_word_length_));
            }
            closure_->elements = std::move(store);
        } catch (...) {
            closure_->failure = std::current_exception();
        }
    });
    if (closure_->failure) std::rethrow_exception(closure_->failure);
    return closure_->elements;
}

Matrix DiscreteGroup::lattice_basis() const {
    if (kind_ != GroupKind::Lattice) throw InvalidArgument("lattice_basis needs a lattice group");
    Matrix basis(space_.dim(), input_count_);
    for (int i = 0; i < input_count_; ++i) basis.col(i) = generators_[static_cast<size_t>(i)].translation_part();
    return basis;
}

std::vector<int> DiscreteGroup::lattice_word(const Eigen::VectorXi& coefficients) const {
    std::vector<int> word;
    for (int i = 0; i < coefficients.size(); ++i) {
        const int letter = coefficients[i] > 0 ? i : inverse_index(i);
        for (int r = 0; r < std::abs(coefficients[i]); ++r) word.push_back(letter);
    }
    return word;
}

std::vector<Eigen::VectorXi> DiscreteGroup::lattice_points_near(const Vector& target, double radius) const {
    const Matrix basis = lattice_basis();
    const int rank = static_cast<int>(basis.cols());
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis);
    if (cod.rank() < rank) throw InvalidArgument("lattice generators are linearly dependent");
    const Matrix pinv = cod.pseudoInverse();
    const Vector center = pinv * target;

    Eigen::VectorXi lo(rank), hi(rank);
    for (int i = 0; i < rank; ++i) {
        const double reach = radius * pinv.row(i).norm() + 1e-9;
        lo[i] = static_cast<int>(std::ceil(center[i] - reach));
        hi[i] = static_cast<int>(std::floor(center[i] + reach));
        if (lo[i] > hi[i]) return {};
    }

    std::vector<Eigen::VectorXi> out;
    Eigen::VectorXi c = lo;
    const double limit = radius * (1.0 + 1e-12) + 1e-12;
    while (true) {
        if ((basis * c.cast<double>() - target).norm() <= limit) out.push_back(c);
        int i = rank - 1;
        while (i >= 0 && c[i] == hi[i]) {
            c[i] = lo[i];
            --i;
        }
        if (i < 0) break;
        ++c[i];
    }
    return out;
}

Isometry DiscreteGroup::lattice_element(const Eigen::VectorXi& coefficients) const {
    return Isometry::translation(space_, lattice_basis() * coefficients.cast<double>()).with_word(lattice_word(coefficients));
}

std::vector<Isometry> enumerate(const DiscreteGroup& group) { return group.elements(); }

DiscreteGroup finite_spherical_group(SphericalFamily family, int m, const ModelSpace& space) {
    if (m < 1) throw InvalidArgument("group parameter m must be >= 1");
    const double pi = std::numbers::pi;
    std::vector<Quaternion> gens;
    switch (family) {
    case SphericalFamily::Cyclic:
        gens = {Quaternion::exp_imaginary(Quaternion::i(), 2.0 * pi / m)};
        break;
    case SphericalFamily::BinaryDihedral:
        gens = {Quaternion::exp_imaginary(Quaternion::i(), pi / m), Quaternion::j()};
        break;
    case SphericalFamily::BinaryTetrahedral:
        gens = {Quaternion(0.5, 0.5, 0.5, 0.5), Quaternion::i()};
        break;
    case SphericalFamily::BinaryOctahedral:
        gens = {Quaternion(0.5, 0.5, 0.5, 0.5), Quaternion::i(), Quaternion(1.0, 1.0, 0.0, 0.0).normalized()};
        break;
    case SphericalFamily::BinaryIcosahedral: {
        const double phi = std::numbers::phi;
        gens = {Quaternion(phi / 2.0, 0.5 / phi, 0.5, 0.0), Quaternion::i()};
        break;
    }
    }
    std::vector<Isometry> isos;
    for (const Quaternion& q : gens) isos.push_back(left_twist(q, space));
    if (family == SphericalFamily::Cyclic && m == 1) isos.clear();
    return {space, std::move(isos), GroupKind::Finite, kDefaultFiniteWordLength};
}

DiscreteGroup finite_spherical_group(std::string_view name, const ModelSpace& space) {
    if (name == "2T") return finite_spherical_group(SphericalFamily::BinaryTetrahedral, 1, space);
    if (name == "2O") return finite_spherical_group(SphericalFamily::BinaryOctahedral, 1, space);
    if (name == "2I") return finite_spherical_group(SphericalFamily::BinaryIcosahedral, 1, space);
    auto suffix = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix) return name.substr(prefix.size());
        return std::nullopt;
    };
    if (auto s = suffix("cyclic:")) return finite_spherical_group(SphericalFamily::Cyclic, parse_positive(*s, name), space);
    if (auto s = suffix("dihedral:")) {
        return finite_spherical_group(SphericalFamily::BinaryDihedral, parse_positive(*s, name), space);
    }
    if (auto s = suffix("2D")) return finite_spherical_group(SphericalFamily::BinaryDihedral, parse_positive(*s, name), space);
    if (auto s = suffix("C")) return finite_spherical_group(SphericalFamily::Cyclic, parse_positive(*s, name), space);
    throw InvalidArgument("unknown spherical group '" + std::string(name) + "'");
}

double minimal_group_displacement(const DiscreteGroup& group) {
    const ModelSpace& space = group.space();
    double best = std::numeric_limits<double>::infinity();
    if (group.kind() == GroupKind::Lattice) {
        const Matrix basis = group.lattice_basis();
        if (basis.cols() == 0) return best;
        const double radius = basis.colwise().norm().minCoeff();
        for (const auto& c : group.lattice_points_near(Vector::Zero(space.dim()), radius)) {
            if (c.isZero()) continue;
            best = std::min(best, (basis * c.cast<double>()).norm());
        }
        return best;
    }
    for (const Isometry& g : group.elements()) {
        if (g.is_identity()) continue;
        best = std::min(best, minimal_displacement(g, space));
    }
    return best;
}

} // namespace spaceform
