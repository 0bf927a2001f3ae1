#ifndef MUNK_BASELINES_HPP
#define MUNK_BASELINES_HPP

#include <cstdint>

#include "munk/kernels.hpp"
#include "munk/solver.hpp"

namespace munk {

/// Label-signed Gram matrix A_ij = y_i y_j k_ij in class-concatenated order
/// (A rows/cols first, then B), split entrywise into non-negative parts
/// plus - minus = A.
struct SignedGram {
    Mat plus;
    Mat minus;

    Eigen::Index size() const { return plus.rows(); }
};

SignedGram make_signed_gram(const GramBlocks& blocks);

// Entrywise split of an arbitrary symmetric quadratic-form matrix.
SignedGram split_signed(const Mat& A);

// Operation counters for the structural per-iteration cost comparison
// between the multiplicative updates. Counts are accumulated per thread.
struct OpCounts {
    std::uint64_t sqrt_calls = 0;
};

OpCounts& op_counts();
void reset_op_counts();

// M3 multiplicative update for minimize 1/2 a'Aa - sum(a), a >= 0:
// a_i <- a_i (1 + sqrt(1 + 4 (A+ a)_i (A- a)_i)) / (2 (A+ a)_i). One square
// root per coefficient. Zeros are absorbing.
Vec m3_step(const SignedGram& sg, const Vec& alpha, double denom_guard = 1e-300);

// Kernel Adatron sweep: sequentially a_i <- clamp(a_i + eta (1 - (Aa)_i), 0, C)
// with the margin vector maintained incrementally across the sweep.
Vec ka_step(const SignedGram& sg, const Vec& alpha, double eta, double C);

// Conventional stable default learning rate 1/max_i A_ii.
double ka_default_eta(const SignedGram& sg);

// Objective in the signed form 1/2 a'Aa - sum(a); equals the class-split
// objective on the same instance.
double signed_objective(const SignedGram& sg, const Vec& alpha);

} // namespace munk

#endif
