#include "munk/solver.hpp"

#include <chrono>
#include <cmath>

#include "munk/baselines.hpp"
#include "munk/errors.hpp"

namespace munk {

Vec AlphaState::concat() const {
    Vec v(size());
    v.head(a.size()) = a;
    v.tail(b.size()) = b;
    return v;
}

std::string to_string(Algo algo) {
    switch (algo) {
    case Algo::munk: return "munk";
    case Algo::m3: return "m3";
    case Algo::ka: return "ka";
    }
    return "?";
}

Algo algo_from_string(const std::string& name) {
    if (name == "munk") return Algo::munk;
    if (name == "m3") return Algo::m3;
    if (name == "ka") return Algo::ka;
    throw ConfigError("unknown algorithm: " + name);
}

void SolverConfig::validate() const {
    if (max_iters <= 0)
        throw ConfigError("max_iters must be positive");
    if (!(rel_obj_tol > 0) || !(kkt_tol > 0))
        throw ConfigError("tolerances must be positive");
    if (!(init_alpha > 0))
        throw ConfigError("init_alpha must be strictly positive");
    if (denom_guard < 0)
        throw ConfigError("denom_guard must be >= 0");
    if (trace_every <= 0)
        throw ConfigError("trace_every must be positive");
    if (patience <= 0)
        throw ConfigError("patience must be positive");
    if (!(support_threshold > 0))
        throw ConfigError("support_threshold must be positive");
}

namespace {

void check_dims(const GramBlocks& blocks, const AlphaState& st) {
    if (st.a.size() != blocks.n_a() || st.b.size() != blocks.n_b())
        throw InputError("solver: alpha sizes do not match Gram blocks");
}

} // namespace

double objective(const GramBlocks& blocks, const AlphaState& st) {
    check_dims(blocks, st);
    const Vec ka = blocks.aa * st.a;
    const Vec kb = blocks.bb * st.b;
    const Vec cross = blocks.ab * st.b; // K_AB b, length n_A
    return 0.5 * (st.a.dot(ka) + st.b.dot(kb)) - st.a.dot(cross) - st.a.sum() - st.b.sum();
}

GradientSplit gradient_split(const GramBlocks& blocks, const AlphaState& st) {
    check_dims(blocks, st);
    GradientSplit g;
    g.pos_a = blocks.aa * st.a;
    g.neg_a = blocks.ab * st.b + Vec::Ones(st.a.size());
    g.pos_b = blocks.bb * st.b;
    g.neg_b = blocks.ab.transpose() * st.a + Vec::Ones(st.b.size());
    return g;
}

namespace {

// alpha .* neg ./ max(pos, guard), with exact zeros kept at zero so a 0/0
// on degenerate data cannot produce NaN.
Vec mult_update(const Vec& alpha, const Vec& neg, const Vec& pos, double guard) {
    Vec out(alpha.size());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0.0)
            out[i] = 0.0;
        else
            out[i] = alpha[i] * neg[i] / std::max(pos[i], guard);
    }
    return out;
}

} // namespace

AlphaState munk_step(const GramBlocks& blocks, const AlphaState& st, bool alternating,
                     double denom_guard) {
    check_dims(blocks, st);
    AlphaState out = st;
    const Vec neg_a = blocks.ab * st.b + Vec::Ones(st.a.size());
    const Vec pos_a = blocks.aa * st.a;
    out.a = mult_update(st.a, neg_a, pos_a, denom_guard);
    const Vec& a_for_b = alternating ? out.a : st.a;
    const Vec neg_b = blocks.ab.transpose() * a_for_b + Vec::Ones(st.b.size());
    const Vec pos_b = blocks.bb * st.b;
    out.b = mult_update(st.b, neg_b, pos_b, denom_guard);
    return out;
}

AlphaState clip_box(AlphaState st, double C) {
    if (!(C > 0))
        throw ConfigError("clip_box: C must be positive");
    st.C = C;
    if (std::isfinite(C)) {
        st.a = st.a.cwiseMin(C);
        st.b = st.b.cwiseMin(C);
    }
    return st;
}

double kkt_violation(const AlphaState& st, const Vec& grad_a, const Vec& grad_b,
                     double support_threshold) {
    const double C = st.C;
    double worst = 0.0;
    auto scan = [&](const Vec& alpha, const Vec& grad) {
        for (Eigen::Index i = 0; i < alpha.size(); ++i) {
            double v;
            if (alpha[i] <= support_threshold)
                v = std::max(0.0, -grad[i]); // at lower bound: need grad >= 0
            else if (std::isfinite(C) && alpha[i] >= C - support_threshold)
                v = std::max(0.0, grad[i]); // at upper bound: need grad <= 0
            else
                v = std::abs(grad[i]);
            worst = std::max(worst, v);
        }
    };
    scan(st.a, grad_a);
    scan(st.b, grad_b);
    return worst;
}

namespace {

Eigen::Index count_support(const AlphaState& st, double threshold) {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < st.a.size(); ++i)
        n += st.a[i] > threshold;
    for (Eigen::Index i = 0; i < st.b.size(); ++i)
        n += st.b[i] > threshold;
    return n;
}

TrainedModel build_model(const LabeledDataset& ds, const KernelSpec& spec, const AlphaState& st,
                         double support_threshold, const ModelMeta& meta) {
    // Support vectors in class-concatenated order: class A then class B.
    std::vector<Eigen::Index> cols;
    std::vector<double> alphas;
    std::vector<double> ys;
    for (Eigen::Index i = 0; i < st.a.size(); ++i) {
        if (st.a[i] > support_threshold) {
            cols.push_back(ds.idx_pos[static_cast<std::size_t>(i)]);
            alphas.push_back(st.a[i]);
            ys.push_back(1.0);
        }
    }
    for (Eigen::Index i = 0; i < st.b.size(); ++i) {
        if (st.b[i] > support_threshold) {
            cols.push_back(ds.idx_neg[static_cast<std::size_t>(i)]);
            alphas.push_back(st.b[i]);
            ys.push_back(-1.0);
        }
    }
    TrainedModel m;
    m.kernel = spec;
    m.support_threshold = support_threshold;
    m.meta = meta;
    m.support_X.resize(ds.dim(), static_cast<Eigen::Index>(cols.size()));
    m.support_alpha.resize(static_cast<Eigen::Index>(cols.size()));
    m.support_y.resize(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        auto kk = static_cast<Eigen::Index>(k);
        m.support_X.col(kk) = ds.X.col(cols[k]);
        m.support_alpha[kk] = alphas[k];
        m.support_y[kk] = ys[k];
    }
    return m;
}

} // namespace

TrainResult train(const LabeledDataset& ds, const KernelSpec& spec, const SolverConfig& cfg,
                  Algo algo, double C) {
    cfg.validate();
    spec.validate();
    if (ds.idx_pos.empty() || ds.idx_neg.empty())
        throw InputError("train: both classes must be non-empty");
    if (!(C > 0))
        throw ConfigError("train: C must be positive");

    const Mat X_A = ds.class_matrix(+1);
    const Mat X_B = ds.class_matrix(-1);
    GramBlocks blocks = gram_blocks(spec, X_A, X_B);

    if (algo != Algo::ka && blocks.min_entry() < 0.0)
        throw InputError("train: kernel is not non-negative on this data "
                         "(min Gram entry " + std::to_string(blocks.min_entry()) +
                         "); multiplicative updates require k >= 0");

    AlphaState st;
    st.a = Vec::Constant(blocks.n_a(), cfg.init_alpha);
    st.b = Vec::Constant(blocks.n_b(), cfg.init_alpha);
    st.C = C;
    st = clip_box(std::move(st), C);

    SignedGram sg;
    double eta = cfg.eta;
    if (algo != Algo::munk) {
        sg = make_signed_gram(blocks);
        if (algo == Algo::ka && eta <= 0.0)
            eta = ka_default_eta(sg);
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    ConvergenceTrace trace;
    double kkt = kInfinity;
    double prev_obj = kInfinity;
    double obj = 0.0;
    int stall = 0;
    std::int64_t it = 0;
    bool converged = false;

    auto record = [&](std::int64_t iter) {
        trace.records.push_back({iter, obj, kkt, count_support(st, cfg.support_threshold),
                                 elapsed()});
    };

    for (it = 0; it < cfg.max_iters; ++it) {
        // Gradient pieces double as the objective and the KKT certificate,
        // so the stopping checks add only dot products per iteration.
        GradientSplit g = gradient_split(blocks, st);
        obj = 0.5 * (st.a.dot(g.pos_a) + st.b.dot(g.pos_b)) -
              st.a.dot(g.neg_a - Vec::Ones(st.a.size())) - st.a.sum() - st.b.sum();
        kkt = kkt_violation(st, g.grad_a(), g.grad_b(), cfg.support_threshold);

        if (it % cfg.trace_every == 0)
            record(it);

        if (kkt < cfg.kkt_tol) {
            converged = true;
            break;
        }
        if (std::abs(prev_obj - obj) <= cfg.rel_obj_tol * (1.0 + std::abs(obj))) {
            if (++stall >= cfg.patience) {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
        prev_obj = obj;

        switch (algo) {
        case Algo::munk: {
            AlphaState next = st;
            next.a = mult_update(st.a, g.neg_a, g.pos_a, cfg.denom_guard);
            if (cfg.alternating) {
                const Vec neg_b = blocks.ab.transpose() * next.a + Vec::Ones(st.b.size());
                next.b = mult_update(st.b, neg_b, g.pos_b, cfg.denom_guard);
            } else {
                next.b = mult_update(st.b, g.neg_b, g.pos_b, cfg.denom_guard);
            }
            st = std::move(next);
            break;
        }
        case Algo::m3: {
            Vec v = m3_step(sg, st.concat(), cfg.denom_guard);
            st.a = v.head(st.a.size());
            st.b = v.tail(st.b.size());
            break;
        }
        case Algo::ka: {
            Vec v = ka_step(sg, st.concat(), eta, C);
            st.a = v.head(st.a.size());
            st.b = v.tail(st.b.size());
            break;
        }
        }
        if (std::isfinite(C) && algo != Algo::ka)
            st = clip_box(std::move(st), C);
    }

    if (it == cfg.max_iters) {
        // Loop exhausted: refresh the certificate for the final state.
        GradientSplit g = gradient_split(blocks, st);
        obj = objective(blocks, st);
        kkt = kkt_violation(st, g.grad_a(), g.grad_b(), cfg.support_threshold);
    }
    if (trace.records.empty() || trace.records.back().iter != it)
        record(it);
    trace.converged = converged;

    ModelMeta meta;
    meta.algo = to_string(algo);
    meta.iterations = it;
    meta.objective = obj;
    meta.kkt_residual = kkt;
    meta.converged = converged;

    TrainResult res;
    res.model = build_model(ds, spec, st, cfg.support_threshold, meta);
    res.trace = std::move(trace);
    res.alpha = std::move(st);
    res.converged = converged;
    res.kkt_residual = kkt;
    res.iterations = it;
    res.final_objective = obj;
    return res;
}

} // namespace munk
