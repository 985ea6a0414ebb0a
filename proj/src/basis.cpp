#include "fracdyn/basis.hpp"

#include <cmath>
#include <random>

namespace fracdyn {

std::string to_string(BasisFamily family) {
    return family == BasisFamily::legendre_tensor ? "legendre-tensor" : "user";
}

BasisFamily basis_family_from_string(const std::string& name) {
    if (name == "legendre-tensor") return BasisFamily::legendre_tensor;
    if (name == "user") return BasisFamily::user;
    throw UsageError("unknown basis family '" + name + "'");
}

BasisSpec BasisSpec::legendre(Eigen::Index L, Box domain) {
    if (L < 1) throw UsageError("basis length L must be at least 1");
    BasisSpec spec;
    spec.family_ = BasisFamily::legendre_tensor;
    spec.L_ = L;
    spec.domain_ = std::move(domain);

    // Graded total-degree enumeration; within a degree, tuples are listed in
    // lexicographic order with the first coordinate dominant:
    // (d,0,...), (d-1,1,...), ...
    const Eigen::Index n = spec.domain_.dim();
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    std::function<void(int, int, std::size_t)> emit = [&](int degree, int remaining,
                                                          std::size_t pos) {
        if (static_cast<Eigen::Index>(spec.degrees_.size()) >= L) return;
        if (pos + 1 == tuple.size()) {
            tuple[pos] = remaining;
            spec.degrees_.push_back(tuple);
            return;
        }
        for (int d = remaining; d >= 0; --d) {
            tuple[pos] = d;
            emit(degree, remaining - d, pos + 1);
            if (static_cast<Eigen::Index>(spec.degrees_.size()) >= L) return;
        }
    };
    for (int degree = 0; static_cast<Eigen::Index>(spec.degrees_.size()) < L; ++degree)
        emit(degree, degree, 0);

    for (const auto& t : spec.degrees_)
        for (int d : t) spec.max_degree_ = std::max(spec.max_degree_, d);
    return spec;
}

BasisSpec BasisSpec::user(std::vector<UserFn> functions, Box domain) {
    if (functions.empty()) throw UsageError("user basis must contain at least one function");
    BasisSpec spec;
    spec.family_ = BasisFamily::user;
    spec.L_ = static_cast<Eigen::Index>(functions.size());
    spec.domain_ = std::move(domain);
    spec.user_fns_ = std::move(functions);
    return spec;
}

Eigen::VectorXd eval_basis(const BasisSpec& spec, const Eigen::VectorXd& x, bool* outside) {
    if (x.size() != spec.dim()) throw UsageError("basis query dimension mismatch");
    if (outside) *outside = !spec.domain().contains(x);

    if (spec.family() == BasisFamily::user) {
        Eigen::VectorXd values(spec.length());
        for (Eigen::Index l = 0; l < spec.length(); ++l) values(l) = spec.user_fns_[static_cast<std::size_t>(l)](x);
        return values;
    }

    const Eigen::Index n = spec.dim();
    const Box& box = spec.domain();
    const int maxd = spec.max_degree_;

    // Per-dimension normalized Legendre values up to the maximum degree.
    Eigen::MatrixXd leg(n, maxd + 1);
    for (Eigen::Index d = 0; d < n; ++d) {
        const double width = box.hi(d) - box.lo(d);
        const double t = (2.0 * x(d) - box.lo(d) - box.hi(d)) / width;
        double pm1 = 1.0, p = t;
        leg(d, 0) = std::sqrt(1.0 / width);
        if (maxd >= 1) leg(d, 1) = std::sqrt(3.0 / width) * t;
        for (int deg = 1; deg < maxd; ++deg) {
            const double pnext = ((2.0 * deg + 1.0) * t * p - deg * pm1) / (deg + 1.0);
            pm1 = p;
            p = pnext;
            leg(d, deg + 1) = std::sqrt((2.0 * (deg + 1.0) + 1.0) / width) * pnext;
        }
    }

    Eigen::VectorXd values(spec.length());
    for (Eigen::Index l = 0; l < spec.length(); ++l) {
        double v = 1.0;
        const auto& tuple = spec.degrees()[static_cast<std::size_t>(l)];
        for (Eigen::Index d = 0; d < n; ++d) v *= leg(d, tuple[static_cast<std::size_t>(d)]);
        values(l) = v;
    }
    return values;
}

Eigen::MatrixXd build_design_row(const BasisSpec& spec, const Eigen::VectorXd& x0, double du) {
    const Eigen::Index n = spec.dim();
    const Eigen::Index L = spec.length();
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n * L);
    if (du == 0.0) return block;
    const Eigen::VectorXd phi = eval_basis(spec, x0);
    for (Eigen::Index r = 0; r < n; ++r) block.block(r, r * L, 1, L) = (phi * du).transpose();
    return block;
}

GramCheck orthonormality_check(const BasisSpec& spec, std::size_t samples, std::uint64_t seed) {
    const Eigen::Index L = spec.length();
    const std::size_t min_samples = 10u * static_cast<std::size_t>(L) * static_cast<std::size_t>(L);
    if (samples < min_samples)
        throw UsageError("orthonormality check needs at least 10*L^2 samples");

    std::mt19937_64 rng(seed);
    const Box& box = spec.domain();
    std::vector<std::uniform_real_distribution<double>> dists;
    for (Eigen::Index d = 0; d < box.dim(); ++d) dists.emplace_back(box.lo(d), box.hi(d));

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(L, L);
    Eigen::VectorXd x(box.dim());
    for (std::size_t s = 0; s < samples; ++s) {
        for (Eigen::Index d = 0; d < box.dim(); ++d) x(d) = dists[static_cast<std::size_t>(d)](rng);
        const Eigen::VectorXd phi = eval_basis(spec, x);
        gram.selfadjointView<Eigen::Lower>().rankUpdate(phi);
    }
    Eigen::MatrixXd full = gram.selfadjointView<Eigen::Lower>();
    gram = full * (box.volume() / static_cast<double>(samples));

    GramCheck check;
    check.gram = gram;
    check.max_abs_deviation = (gram - Eigen::MatrixXd::Identity(L, L)).cwiseAbs().maxCoeff();
    return check;
}

Eigen::VectorXd BasisExpansion::eval(const Eigen::VectorXd& x) const {
    const Eigen::Index L = spec.length();
    if (coeffs.size() % L != 0) throw UsageError("expansion coefficient length must be a multiple of L");
    const Eigen::VectorXd phi = eval_basis(spec, x);
    const Eigen::Index n = coeffs.size() / L;
    Eigen::VectorXd out(n);
    for (Eigen::Index r = 0; r < n; ++r) out(r) = phi.dot(coeffs.segment(r * L, L));
    return out;
}

}  // namespace fracdyn
