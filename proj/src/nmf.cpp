#include "munk/nmf.hpp"

#include "munk/errors.hpp"
#include "munk/rng.hpp"

namespace munk {

void NmfState::validate() const {
    if (W.rows() != X.rows() || H.cols() != X.cols() || W.cols() != H.rows())
        throw InputError("nmf: factor dimensions do not match X");
    if (rank() > std::min(X.rows(), X.cols()))
        throw InputError("nmf: rank exceeds min(m, n)");
    if (X.minCoeff() < 0 || W.minCoeff() < 0 || H.minCoeff() < 0)
        throw InputError("nmf: negative entries");
}

double nmf_objective(const NmfState& st) {
    st.validate();
    return 0.5 * (st.X - st.W * st.H).squaredNorm();
}

NmfState nmf_step(const NmfState& st, double denom_guard) {
    st.validate();
    NmfState out = st;
    {
        const Mat numer = st.X * st.H.transpose();
        const Mat denom = st.W * (st.H * st.H.transpose());
        out.W = st.W.array() * numer.array() / (denom.array() + denom_guard);
    }
    {
        const Mat numer = out.W.transpose() * st.X;
        const Mat denom = (out.W.transpose() * out.W) * st.H;
        out.H = st.H.array() * numer.array() / (denom.array() + denom_guard);
    }
    return out;
}

NmfResult nmf_run(const Mat& X, Eigen::Index rank, std::int64_t iters, std::uint64_t seed) {
    if (X.minCoeff() < 0)
        throw InputError("nmf_run: X has negative entries");
    if (rank < 1 || rank > std::min(X.rows(), X.cols()))
        throw InputError("nmf_run: invalid rank");
    if (iters < 0)
        throw InputError("nmf_run: negative iteration count");

    SplitMix64 rng(seed);
    NmfState st;
    st.X = X;
    st.W.resize(X.rows(), rank);
    st.H.resize(rank, X.cols());
    // Column-major fill order, W then H, so a seed pins the whole start state.
    for (Eigen::Index j = 0; j < st.W.cols(); ++j)
        for (Eigen::Index i = 0; i < st.W.rows(); ++i)
            st.W(i, j) = rng.next_unit_pos();
    for (Eigen::Index j = 0; j < st.H.cols(); ++j)
        for (Eigen::Index i = 0; i < st.H.rows(); ++i)
            st.H(i, j) = rng.next_unit_pos();

    NmfResult res;
    res.objective_trace.reserve(static_cast<std::size_t>(iters) + 1);
    for (std::int64_t t = 0; t < iters; ++t) {
        res.objective_trace.push_back(nmf_objective(st));
        st = nmf_step(st);
    }
    res.objective_trace.push_back(nmf_objective(st));
    res.state = std::move(st);
    return res;
}

} // namespace munk
