#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "fracdyn/domain.hpp"

namespace fracdyn {

enum class BasisFamily { legendre_tensor, user };

std::string to_string(BasisFamily family);
BasisFamily basis_family_from_string(const std::string& name);

/// Ordered family of L basis functions, orthonormal on the domain box under
/// the uniform measure. The built-in family is tensor products of
/// domain-rescaled normalized Legendre polynomials, enumerated in graded
/// total-degree order (ties broken lexicographically, first coordinate
/// dominant), so the first function is always the constant 1/sqrt(vol).
class BasisSpec {
public:
    using UserFn = std::function<double(const Eigen::VectorXd&)>;

    BasisSpec() = default;  // empty spec; fill via legendre() or user()

    static BasisSpec legendre(Eigen::Index L, Box domain);
    static BasisSpec user(std::vector<UserFn> functions, Box domain);

    BasisFamily family() const { return family_; }
    Eigen::Index length() const { return L_; }
    Eigen::Index dim() const { return domain_.dim(); }
    const Box& domain() const { return domain_; }

    /// Exponent tuple of each Legendre tensor function.
    const std::vector<std::vector<int>>& degrees() const { return degrees_; }

private:
    BasisFamily family_ = BasisFamily::legendre_tensor;
    Eigen::Index L_ = 0;
    Box domain_;
    std::vector<std::vector<int>> degrees_;
    std::vector<UserFn> user_fns_;
    int max_degree_ = 0;

    friend Eigen::VectorXd eval_basis(const BasisSpec&, const Eigen::VectorXd&, bool*);
};

/// Values of the L ordered basis functions at x. Points outside the domain
/// box are evaluated by the polynomials' natural extension; if `outside` is
/// non-null it is set accordingly.
Eigen::VectorXd eval_basis(const BasisSpec& spec, const Eigen::VectorXd& x,
                           bool* outside = nullptr);

/// Block-diagonal regression rows for one sample: an n x (nL) matrix whose
/// row r carries phi(x0) * du in columns [rL, (r+1)L).
Eigen::MatrixXd build_design_row(const BasisSpec& spec, const Eigen::VectorXd& x0, double du);

struct GramCheck {
    Eigen::MatrixXd gram;
    double max_abs_deviation = 0.0;  // max |G - I| over all entries
};

/// Monte-Carlo estimate of the Gram matrix over the domain box.
GramCheck orthonormality_check(const BasisSpec& spec, std::size_t samples, std::uint64_t seed);

/// Truncated series over a BasisSpec, one coefficient block of length L per
/// state component: component r of eval(x) is phi(x) . coeffs[rL..(r+1)L).
struct BasisExpansion {
    BasisSpec spec;
    Eigen::VectorXd coeffs;

    Eigen::Index components() const { return coeffs.size() / spec.length(); }
    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
};

}  // namespace fracdyn
