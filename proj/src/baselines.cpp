#include "munk/baselines.hpp"

#include <cmath>

#include "munk/errors.hpp"

namespace munk {

SignedGram split_signed(const Mat& A) {
    SignedGram sg;
    sg.plus = A.cwiseMax(0.0);
    sg.minus = (-A).cwiseMax(0.0);
    return sg;
}

SignedGram make_signed_gram(const GramBlocks& blocks) {
    const Eigen::Index na = blocks.n_a(), nb = blocks.n_b();
    Mat A(na + nb, na + nb);
    A.topLeftCorner(na, na) = blocks.aa;
    A.topRightCorner(na, nb) = -blocks.ab;
    A.bottomLeftCorner(nb, na) = -blocks.ab.transpose();
    A.bottomRightCorner(nb, nb) = blocks.bb;
    return split_signed(A);
}

namespace {
thread_local OpCounts g_op_counts;
}

OpCounts& op_counts() { return g_op_counts; }
void reset_op_counts() { g_op_counts = OpCounts{}; }

Vec m3_step(const SignedGram& sg, const Vec& alpha, double denom_guard) {
    if (alpha.size() != sg.size())
        throw InputError("m3_step: dimension mismatch");
    const Vec p = sg.plus * alpha;
    const Vec q = sg.minus * alpha;
    Vec out(alpha.size());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0.0) {
            out[i] = 0.0;
            continue;
        }
        ++g_op_counts.sqrt_calls;
        const double factor =
            (1.0 + std::sqrt(1.0 + 4.0 * p[i] * q[i])) / std::max(2.0 * p[i], denom_guard);
        out[i] = alpha[i] * factor;
    }
    return out;
}

Vec ka_step(const SignedGram& sg, const Vec& alpha, double eta, double C) {
    if (alpha.size() != sg.size())
        throw InputError("ka_step: dimension mismatch");
    if (!(eta > 0))
        throw ConfigError("ka_step: eta must be positive");
    const Mat A = sg.plus - sg.minus;
    Vec out = alpha;
    Vec margin = A * out; // maintained incrementally across the sweep
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        double updated = out[i] + eta * (1.0 - margin[i]);
        updated = std::min(std::max(updated, 0.0), C);
        const double delta = updated - out[i];
        if (delta != 0.0) {
            out[i] = updated;
            margin += delta * A.col(i);
        }
    }
    return out;
}

double ka_default_eta(const SignedGram& sg) {
    const double max_diag = (sg.plus - sg.minus).diagonal().maxCoeff();
    if (!(max_diag > 0))
        throw InputError("ka_default_eta: non-positive Gram diagonal");
    return 1.0 / max_diag;
}

double signed_objective(const SignedGram& sg, const Vec& alpha) {
    if (alpha.size() != sg.size())
        throw InputError("signed_objective: dimension mismatch");
    const Mat A = sg.plus - sg.minus;
    return 0.5 * alpha.dot(A * alpha) - alpha.sum();
}

} // namespace munk
