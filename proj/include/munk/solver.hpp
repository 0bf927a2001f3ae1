#ifndef MUNK_SOLVER_HPP
#define MUNK_SOLVER_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "munk/dataset.hpp"
#include "munk/kernels.hpp"
#include "munk/model.hpp"

namespace munk {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dual coefficients split by class, with the soft-margin box bound C
/// (C = +infinity means hard margin). Coefficients stay in [0, C] after every
/// completed iteration; multiplicative updates keep exact zeros at zero.
struct AlphaState {
    Vec a; // class A (+1), length n_A
    Vec b; // class B (-1), length n_B
    double C = kInfinity;

    Eigen::Index size() const { return a.size() + b.size(); }
    double coeff(Eigen::Index i) const { return i < a.size() ? a[i] : b[i - a.size()]; }
    Vec concat() const;
};

enum class Algo { munk, m3, ka };

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& name);

struct SolverConfig {
    std::int64_t max_iters = 1000000;
    double rel_obj_tol = 1e-10;   // relative objective change threshold
    int patience = 10;            // consecutive small-change iterations to stop
    double kkt_tol = 1e-6;        // max KKT violation to declare convergence
    double init_alpha = 1.0;      // strictly positive uniform initialization
    double denom_guard = 1e-300;  // lower bound on update denominators
    std::int64_t trace_every = 1;
    bool alternating = false;     // Gauss-Seidel ordering instead of Jacobi
    double support_threshold = 1e-8;
    double eta = 0.0;             // KA learning rate; 0 = 1/max_i k_ii

    void validate() const;
};

struct TraceRecord {
    std::int64_t iter = 0;
    double objective = 0.0;
    double kkt_violation = 0.0;
    Eigen::Index n_support = 0;
    double elapsed_s = 0.0;
};

struct ConvergenceTrace {
    std::vector<TraceRecord> records;
    bool converged = false;
};

// Dual objective S(alpha) in the class-split form
// 1/2 (a'K_AA a - 2 a'K_AB b + b'K_BB b) - sum(alpha).
double objective(const GramBlocks& blocks, const AlphaState& st);

/// Positive/negative components of the gradient: pos_a = K_AA a,
/// neg_a = K_AB b + 1, pos_b = K_BB b, neg_b = K_BA a + 1. The gradient with
/// respect to each block is pos - neg.
struct GradientSplit {
    Vec pos_a, neg_a, pos_b, neg_b;

    Vec grad_a() const { return pos_a - neg_a; }
    Vec grad_b() const { return pos_b - neg_b; }
};

GradientSplit gradient_split(const GramBlocks& blocks, const AlphaState& st);

// One multiplicative update a <- a .* neg_a ./ pos_a, b <- b .* neg_b ./ pos_b.
// Both new vectors are computed from the incoming state (Jacobi); set
// alternating to recompute the B-side numerator from the updated a.
AlphaState munk_step(const GramBlocks& blocks, const AlphaState& st, bool alternating = false,
                     double denom_guard = 1e-300);

// Clamps every coefficient to min(alpha_i, C). Idempotent.
AlphaState clip_box(AlphaState st, double C);

// Max KKT violation for box-constrained minimization: interior coefficients
// need |grad| small, lower-bound coefficients need grad >= 0, upper-bound
// coefficients need grad <= 0.
double kkt_violation(const AlphaState& st, const Vec& grad_a, const Vec& grad_b,
                     double support_threshold);

struct TrainResult {
    TrainedModel model;
    ConvergenceTrace trace;
    AlphaState alpha;       // final coefficients in class-concatenated order
    bool converged = false;
    double kkt_residual = 0.0;
    std::int64_t iterations = 0;
    double final_objective = 0.0;
};

/// Full training loop: builds Gram blocks (validating kernel non-negativity
/// for the multiplicative algorithms), iterates the chosen step with box
/// clipping, records a trace, and assembles the model from the final state.
TrainResult train(const LabeledDataset& ds, const KernelSpec& spec, const SolverConfig& cfg,
                  Algo algo, double C = kInfinity);

} // namespace munk

#endif
