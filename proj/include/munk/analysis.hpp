#ifndef MUNK_ANALYSIS_HPP
#define MUNK_ANALYSIS_HPP

#include <string>
#include <vector>

#include "munk/dataset.hpp"
#include "munk/kernels.hpp"
#include "munk/model.hpp"
#include "munk/solver.hpp"

namespace munk {

/// Feature-space geometry at a converged hard-margin solution, in
/// class-concatenated training order (class A rows first, then class B).
/// margin[i] = y_i f(x_i) = K(x_i, w); d_i = margin_i / sqrt(K(w,w));
/// l_i = sqrt(k_ii); d = 1/sqrt(K(w,w)); l = max_i l_i.
struct MarginGeometry {
    double K_ww = 0.0;
    double d = 0.0;
    double l = 0.0;
    Vec margin; // K(x_i, w), signed by class
    Vec d_i;
    Vec l_i;
    Vec alpha;  // converged coefficients, concatenated
    Eigen::Index n_a = 0;

    Eigen::Index size() const { return margin.size(); }
    bool is_class_a(Eigen::Index i) const { return i < n_a; }
};

// KKT residual below which a solution counts as a fixed point for rate
// analysis; the asymptotic bounds are meaningless away from the optimum.
constexpr double kAnalysisKktGate = 1e-9;

// Coefficients below this are treated as exactly zero non-support entries in
// the perturbation analysis (stricter than the model support threshold).
constexpr double kAnalysisZeroThreshold = 1e-10;

MarginGeometry margin_geometry(const TrainedModel& model, const LabeledDataset& train,
                               double kkt_gate = kAnalysisKktGate);

// Asymptotic contraction-factor bounds for non-support coefficient i:
// MUNK: [1 + (d_i - d) d / (l_i l)]^-1, M3 carries an extra 1/2 on the gap
// term. Throw on support indices.
double bound_munk(const MarginGeometry& geom, Eigen::Index i);
double bound_m3(const MarginGeometry& geom, Eigen::Index i);

// Same-class and cross-class fixed-point sums z+_i and z-_i for index i
// (class-concatenated order), computed from the Gram blocks and alpha*.
double z_plus(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i);
double z_minus(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i);

// The raw lower-bound form 1 + (K(x_i,w) - 1) / (l_i l K(w,w)), computed
// without the d_i/d substitution; algebraically equal to 1/bound_munk.
double lower_bound_appendix(const MarginGeometry& geom, Eigen::Index i);

/// One-step contraction factor measured by perturbing non-support
/// coefficient i to delta, applying a single update of the chosen algorithm
/// with all other coefficients held at alpha*, and returning alpha_i' / delta.
double measured_rate(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i,
                     double delta, Algo algo);

struct RatePair {
    double coarse = 0.0;   // delta = 1e-6
    double headline = 0.0; // delta = 1e-8
    double disagreement() const { return std::abs(coarse - headline); }
};

RatePair measured_rate_pair(const GramBlocks& blocks, const AlphaState& alpha_star,
                            Eigen::Index i, Algo algo);

struct RateBoundRow {
    Eigen::Index index = 0; // 0-based class-concatenated position
    int cls = 0;            // +1 for A, -1 for B
    double alpha_star = 0.0;
    double d_i = 0.0;
    double l_i = 0.0;
    double gamma_munk_bound = 0.0;
    double gamma_m3_bound = 0.0;
    double gamma_munk_measured = 0.0;
    double gamma_m3_measured = 0.0;
};

struct RateBoundReport {
    MarginGeometry geometry;
    std::vector<RateBoundRow> rows; // one per non-support coefficient
};

RateBoundReport rate_bound_report(const TrainedModel& model, const LabeledDataset& train,
                                  const GramBlocks& blocks, const AlphaState& alpha_star);

} // namespace munk

#endif
