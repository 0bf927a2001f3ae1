#ifndef MUNK_NMF_HPP
#define MUNK_NMF_HPP

#include <cstdint>
#include <vector>

#include "munk/kernels.hpp"

namespace munk {

/// Frobenius NMF state X ~ W H with all factors entrywise non-negative.
struct NmfState {
    Mat X; // m x n
    Mat W; // m x r
    Mat H; // r x n

    Eigen::Index rank() const { return W.cols(); }
    void validate() const; // dimension and non-negativity checks
};

// 1/2 |X - WH|_F^2 (squared Frobenius norm).
double nmf_objective(const NmfState& st);

// One alternating multiplicative update: W <- W .* (XH') ./ (WHH'), then
// H <- H .* (W'X) ./ (W'WH) using the updated W. Denominators carry a small
// additive guard.
NmfState nmf_step(const NmfState& st, double denom_guard = 1e-12);

struct NmfResult {
    NmfState state;
    std::vector<double> objective_trace; // objective before each step + final
};

// Runs iters steps from a seeded uniform-(0,1] initialization of W and H.
NmfResult nmf_run(const Mat& X, Eigen::Index rank, std::int64_t iters, std::uint64_t seed);

} // namespace munk

#endif
