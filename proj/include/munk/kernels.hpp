#ifndef MUNK_KERNELS_HPP
#define MUNK_KERNELS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace munk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class KernelFamily { gaussian, polynomial_even, linear_nonneg };

/// A non-negative kernel function. gaussian evaluates
/// exp(-|x-y|^2 / (2 sigma^2)); polynomial_even evaluates
/// (x.y + coef0)^degree with even degree; linear_nonneg evaluates x.y and is
/// non-negative only on non-negative-orthant data (validate_nonneg guards it).
/// offset adds a constant c >= 0 to every evaluation, the origin-trick
/// substitute for a bias term.
struct KernelSpec {
    KernelFamily family = KernelFamily::gaussian;
    double sigma = 1.0;
    int degree = 2;
    double coef0 = 1.0;
    double offset = 0.0;

    void validate() const; // throws ConfigError on bad parameters

    // Token form used in model files and CLI echoes, e.g.
    // "family=gaussian sigma=3" or "family=polynomial_even degree=4 coef0=1".
    std::string to_tokens() const;
    static KernelSpec from_tokens(const std::string& tokens);
};

double eval_kernel(const KernelSpec& spec, const Vec& x, const Vec& y);

// Gram matrix between column-point matrices: entry (i,j) = k(X.col(i), Y.col(j)).
Mat gram(const KernelSpec& spec, const Mat& X, const Mat& Y);

/// The three class blocks K(X_A,X_A), K(X_A,X_B), K(X_B,X_B) driving the
/// multiplicative updates. Construction checks symmetry and non-negativity.
struct GramBlocks {
    Mat aa; // n_A x n_A
    Mat ab; // n_A x n_B
    Mat bb; // n_B x n_B

    Eigen::Index n_a() const { return aa.rows(); }
    Eigen::Index n_b() const { return bb.rows(); }
    double min_entry() const;
};

GramBlocks gram_blocks(const KernelSpec& spec, const Mat& X_A, const Mat& X_B);

struct NonnegReport {
    double min_value = 0.0;
    bool passed = true;
    Eigen::Index arg_i = 0, arg_j = 0; // pair attaining the minimum
};

// Evaluates all pairs among sample_points and reports the minimum value;
// flags failure if any evaluation is negative. Report-only, never throws on
// a negative kernel.
NonnegReport validate_nonneg(const KernelSpec& spec, const std::vector<Vec>& sample_points);

} // namespace munk

#endif
