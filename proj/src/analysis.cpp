#include "munk/analysis.hpp"

#include <cmath>

#include "munk/baselines.hpp"
#include "munk/errors.hpp"

namespace munk {

MarginGeometry margin_geometry(const TrainedModel& model, const LabeledDataset& train,
                               double kkt_gate) {
    if (!(model.meta.kkt_residual < kkt_gate))
        throw InputError("margin_geometry: model KKT residual " +
                         std::to_string(model.meta.kkt_residual) +
                         " exceeds the fixed-point gate " + std::to_string(kkt_gate) +
                         "; the asymptotic bounds only hold at the optimum");
    if (train.idx_pos.empty() || train.idx_neg.empty())
        throw InputError("margin_geometry: both classes required");

    const Mat X_A = train.class_matrix(+1);
    const Mat X_B = train.class_matrix(-1);
    const Eigen::Index n_a = X_A.cols(), n_b = X_B.cols();

    MarginGeometry geom;
    geom.n_a = n_a;
    geom.margin.resize(n_a + n_b);
    geom.d_i.resize(n_a + n_b);
    geom.l_i.resize(n_a + n_b);
    geom.alpha = Vec::Zero(n_a + n_b);

    const Vec coef = model.support_alpha.cwiseProduct(model.support_y);
    // f(x) = sum_j alpha_j y_j k(x_j, x); margin_i = y_i f(x_i).
    const Vec f_a = gram(model.kernel, X_A, model.support_X) * coef;
    const Vec f_b = gram(model.kernel, X_B, model.support_X) * coef;
    geom.margin.head(n_a) = f_a;
    geom.margin.tail(n_b) = -f_b;

    for (Eigen::Index i = 0; i < n_a; ++i)
        geom.l_i[i] = std::sqrt(eval_kernel(model.kernel, X_A.col(i), X_A.col(i)));
    for (Eigen::Index i = 0; i < n_b; ++i)
        geom.l_i[n_a + i] = std::sqrt(eval_kernel(model.kernel, X_B.col(i), X_B.col(i)));
    geom.l = geom.l_i.maxCoeff();

    // K(w,w) = sum_ij alpha_i alpha_j y_i y_j k_ij over the support set.
    const Mat K_ss = gram(model.kernel, model.support_X, model.support_X);
    geom.K_ww = coef.dot(K_ss * coef);
    if (!(geom.K_ww > 0))
        throw InputError("margin_geometry: K(w,w) must be positive");
    geom.d = 1.0 / std::sqrt(geom.K_ww);
    geom.d_i = geom.margin / std::sqrt(geom.K_ww);

    // Recover the full coefficient vector: support entries from the model,
    // matched back to training order by class.
    Eigen::Index s = 0;
    for (Eigen::Index i = 0; i < n_a + n_b; ++i) {
        if (s < model.n_support()) {
            const bool same_class = (i < n_a) == (model.support_y[s] > 0);
            const Vec x = i < n_a ? X_A.col(i) : X_B.col(i - n_a);
            if (same_class && (x - model.support_X.col(s)).norm() == 0.0) {
                geom.alpha[i] = model.support_alpha[s];
                ++s;
            }
        }
    }
    if (s != model.n_support())
        throw InputError("margin_geometry: model support vectors not found in training data");
    return geom;
}

namespace {

void require_nonsupport(const MarginGeometry& geom, Eigen::Index i) {
    if (i < 0 || i >= geom.size())
        throw InputError("rate bound: index out of range");
    if (geom.alpha[i] > kAnalysisZeroThreshold)
        throw InputError("rate bound: index " + std::to_string(i) +
                         " is a support coefficient (alpha = " + std::to_string(geom.alpha[i]) +
                         ")");
}

} // namespace

double bound_munk(const MarginGeometry& geom, Eigen::Index i) {
    require_nonsupport(geom, i);
    return 1.0 / (1.0 + (geom.d_i[i] - geom.d) * geom.d / (geom.l_i[i] * geom.l));
}

double bound_m3(const MarginGeometry& geom, Eigen::Index i) {
    require_nonsupport(geom, i);
    return 1.0 / (1.0 + 0.5 * (geom.d_i[i] - geom.d) * geom.d / (geom.l_i[i] * geom.l));
}

double z_plus(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i) {
    if (i < blocks.n_a())
        return blocks.aa.row(i).dot(alpha_star.a);
    return blocks.bb.row(i - blocks.n_a()).dot(alpha_star.b);
}

double z_minus(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i) {
    if (i < blocks.n_a())
        return blocks.ab.row(i).dot(alpha_star.b);
    return blocks.ab.col(i - blocks.n_a()).dot(alpha_star.a);
}

double lower_bound_appendix(const MarginGeometry& geom, Eigen::Index i) {
    require_nonsupport(geom, i);
    return 1.0 + (geom.margin[i] - 1.0) / (geom.l_i[i] * geom.l * geom.K_ww);
}

double measured_rate(const GramBlocks& blocks, const AlphaState& alpha_star, Eigen::Index i,
                     double delta, Algo algo) {
    if (i < 0 || i >= alpha_star.size())
        throw InputError("measured_rate: index out of range");
    if (alpha_star.coeff(i) > kAnalysisZeroThreshold)
        throw InputError("measured_rate: index is a support coefficient");
    if (!(delta > 0))
        throw InputError("measured_rate: delta must be positive");

    AlphaState st = alpha_star;
    if (i < st.a.size())
        st.a[i] = delta;
    else
        st.b[i - st.a.size()] = delta;

    double after = 0.0;
    switch (algo) {
    case Algo::munk: {
        const AlphaState next = munk_step(blocks, st);
        after = next.coeff(i);
        break;
    }
    case Algo::m3: {
        const Vec next = m3_step(make_signed_gram(blocks), st.concat());
        after = next[i];
        break;
    }
    case Algo::ka:
        throw InputError("measured_rate: contraction factors are defined for the "
                         "multiplicative updates only");
    }
    return after / delta;
}

RatePair measured_rate_pair(const GramBlocks& blocks, const AlphaState& alpha_star,
                            Eigen::Index i, Algo algo) {
    RatePair p;
    p.coarse = measured_rate(blocks, alpha_star, i, 1e-6, algo);
    p.headline = measured_rate(blocks, alpha_star, i, 1e-8, algo);
    return p;
}

RateBoundReport rate_bound_report(const TrainedModel& model, const LabeledDataset& train,
                                  const GramBlocks& blocks, const AlphaState& alpha_star) {
    RateBoundReport rep;
    rep.geometry = margin_geometry(model, train);
    if (rep.geometry.size() != alpha_star.size())
        throw InputError("rate_bound_report: alpha size does not match training data");
    for (Eigen::Index i = 0; i < rep.geometry.size(); ++i) {
        if (rep.geometry.alpha[i] > kAnalysisZeroThreshold ||
            alpha_star.coeff(i) > kAnalysisZeroThreshold)
            continue;
        RateBoundRow row;
        row.index = i;
        row.cls = rep.geometry.is_class_a(i) ? 1 : -1;
        row.alpha_star = alpha_star.coeff(i);
        row.d_i = rep.geometry.d_i[i];
        row.l_i = rep.geometry.l_i[i];
        row.gamma_munk_bound = bound_munk(rep.geometry, i);
        row.gamma_m3_bound = bound_m3(rep.geometry, i);
        row.gamma_munk_measured =
            measured_rate_pair(blocks, alpha_star, i, Algo::munk).headline;
        row.gamma_m3_measured = measured_rate_pair(blocks, alpha_star, i, Algo::m3).headline;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace munk
