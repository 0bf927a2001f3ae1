// Acceptance suite: every check below guards a documented behavior of the
// toolkit at a pinned tolerance. Each criterion prints one [PASS]/[FAIL]
// line; the binary exits nonzero if any criterion fails.
//
// Dataset-dependent checks (criteria 5 and 6) use data/ from the source tree.
// The table-reproduction targets in criterion 6 are known to sit above what
// seeded random splits can achieve for several cells (the published sonar
// numbers trace to the original aspect-angle split, which is not recoverable
// from the public data); the criterion runs in full and reports each cell
// honestly rather than loosening its thresholds. See README, "Reproducing the
// published error rates".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "munk/analysis.hpp"
#include "munk/baselines.hpp"
#include "munk/dataset.hpp"
#include "munk/io.hpp"
#include "munk/model.hpp"
#include "munk/nmf.hpp"
#include "munk/rng.hpp"
#include "munk/solver.hpp"
#include "oracles.hpp"

using namespace munk;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool passed;
    double seconds;
    std::vector<std::string> notes;
};

std::vector<Criterion> g_results;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool trace_monotone(const ConvergenceTrace& trace) {
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        const double prev = trace.records[i - 1].objective;
        if (trace.records[i].objective > prev + 1e-12 * (1.0 + std::abs(prev)))
            return false;
    }
    return true;
}

LabeledDataset two_point_instance() {
    Mat X(2, 2);
    X << 1, 0,
         0, 1;
    Eigen::VectorXi y(2);
    y << 1, -1;
    return make_dataset(X, y);
}

LabeledDataset three_point_instance() {
    Mat X(2, 3);
    X << 1, 0, 0,
         0, 1, 2;
    Eigen::VectorXi y(3);
    y << 1, -1, -1;
    return make_dataset(X, y);
}

AlphaState snap_zeros(AlphaState st, double threshold) {
    for (Eigen::Index i = 0; i < st.a.size(); ++i)
        if (st.a[i] <= threshold)
            st.a[i] = 0.0;
    for (Eigen::Index i = 0; i < st.b.size(); ++i)
        if (st.b[i] <= threshold)
            st.b[i] = 0.0;
    return st;
}

// ---------------------------------------------------------------------------
// 1. Monotone descent over random instances, MUNK and M3, hard and soft.

Criterion criterion_monotone() {
    Timer timer;
    SplitMix64 seeder(20250101);
    bool ok = true;
    std::string first_failure;
    int checked_pairs = 0;

    for (int t = 0; t < 200 && ok; ++t) {
        const auto n_a = 2 + static_cast<Eigen::Index>(seeder.next_below(29));
        const auto n_b = 2 + static_cast<Eigen::Index>(seeder.next_below(29));
        const auto dim = 2 + static_cast<Eigen::Index>(seeder.next_below(3));
        const double sep = 0.3 + 2.2 * seeder.next_unit();
        auto ds = oracle::random_instance(seeder.next_u64(), n_a, n_b, dim, sep);

        KernelSpec spec;
        if (t % 2 == 0) {
            spec.family = KernelFamily::gaussian;
            spec.sigma = 0.7 + 2.3 * seeder.next_unit();
        } else {
            spec.family = KernelFamily::polynomial_even;
            spec.degree = 2 + 2 * static_cast<int>(seeder.next_below(3));
            spec.coef0 = (t / 2) % 2;
        }
        const double C = (t % 4 < 2) ? kInfinity : 0.3 + 3.0 * seeder.next_unit();

        SolverConfig cfg;
        cfg.max_iters = 300;
        cfg.trace_every = 1;
        for (Algo algo : {Algo::munk, Algo::m3}) {
            const auto res = train(ds, spec, cfg, algo, C);
            checked_pairs += static_cast<int>(res.trace.records.size()) - 1;
            if (!trace_monotone(res.trace)) {
                ok = false;
                first_failure = "instance " + std::to_string(t) + " algo " + to_string(algo);
            }
        }
    }

    Criterion c{1, "monotone descent (200 random instances, munk+m3, hard+soft)", ok,
                timer.seconds(), {}};
    c.notes.push_back(std::to_string(checked_pairs) + " consecutive trace pairs checked");
    if (!ok)
        c.notes.push_back("violation at " + first_failure);
    c.passed = c.passed && c.seconds < 120.0;
    if (c.seconds >= 120.0)
        c.notes.push_back("runtime budget (120 s) exceeded");
    return c;
}

// ---------------------------------------------------------------------------
// 2. Converged objective and support coefficients match the projected-gradient
//    oracle on 50 random instances.

Criterion criterion_oracle() {
    Timer timer;
    SplitMix64 seeder(777001);
    bool ok = true;
    double worst_obj_gap = 0, worst_alpha_gap = 0;
    std::string failure;

    for (int t = 0; t < 50 && ok; ++t) {
        const auto n_a = 3 + static_cast<Eigen::Index>(seeder.next_below(13));
        const auto n_b = 3 + static_cast<Eigen::Index>(seeder.next_below(13));
        const auto dim = 2 + static_cast<Eigen::Index>(seeder.next_below(3));
        const double sep = 2.0 + 1.0 * seeder.next_unit();
        auto ds = oracle::random_instance(seeder.next_u64(), n_a, n_b, dim, sep);
        KernelSpec spec{KernelFamily::gaussian, 1.0 + 1.5 * seeder.next_unit()};

        SolverConfig cfg;
        cfg.max_iters = 3000000;
        cfg.kkt_tol = 1e-9;
        cfg.rel_obj_tol = 1e-15;
        cfg.patience = 50;
        const auto res = train(ds, spec, cfg, Algo::munk);

        const Mat A = oracle::signed_matrix(ds, spec);
        const auto sol = oracle::projected_gradient_qp(A, kInfinity, 1e-12);
        if (!sol.converged) {
            ok = false;
            failure = "oracle did not converge on instance " + std::to_string(t);
            break;
        }

        const double obj_gap = std::abs(res.final_objective - sol.objective);
        worst_obj_gap = std::max(worst_obj_gap, obj_gap);
        if (obj_gap > 1e-6) {
            ok = false;
            failure = "objective gap " + std::to_string(obj_gap) + " on instance " +
                      std::to_string(t);
            break;
        }
        const Vec mine = res.alpha.concat();
        for (Eigen::Index i = 0; i < sol.alpha.size(); ++i) {
            if (sol.alpha[i] > 1e-6) {
                const double gap = std::abs(mine[i] - sol.alpha[i]);
                worst_alpha_gap = std::max(worst_alpha_gap, gap);
                if (gap > 1e-4) {
                    ok = false;
                    failure = "alpha gap " + std::to_string(gap) + " on instance " +
                              std::to_string(t);
                }
            }
        }
    }

    Criterion c{2, "oracle equivalence (50 instances, objective 1e-6, alpha 1e-4)", ok,
                timer.seconds(), {}};
    std::ostringstream n;
    n << "worst objective gap " << worst_obj_gap << ", worst support-alpha gap "
      << worst_alpha_gap;
    c.notes.push_back(n.str());
    if (!ok)
        c.notes.push_back(failure);
    c.passed = c.passed && c.seconds < 300.0;
    if (c.seconds >= 300.0)
        c.notes.push_back("runtime budget (300 s) exceeded");
    return c;
}

// ---------------------------------------------------------------------------
// 3. Analytic fixed points.

Criterion criterion_analytic() {
    Timer timer;
    bool ok = true;
    std::vector<std::string> notes;
    const KernelSpec linear{KernelFamily::linear_nonneg};

    {
        SolverConfig cfg;
        cfg.max_iters = 50;
        const auto res = train(two_point_instance(), linear, cfg, Algo::munk);
        const bool good = close_to(res.alpha.a[0], 1.0, 1e-12) &&
                          close_to(res.alpha.b[0], 1.0, 1e-12) &&
                          close_to(res.final_objective, -1.0, 1e-12);
        ok = ok && good;
        notes.push_back(std::string("two-point: alpha=(") + fmt17(res.alpha.a[0]) + "," +
                        fmt17(res.alpha.b[0]) + ") S=" + fmt17(res.final_objective) +
                        (good ? "" : "  <- MISS"));
    }
    {
        SolverConfig cfg;
        cfg.max_iters = 5000;
        cfg.kkt_tol = 1e-14;
        cfg.rel_obj_tol = 1e-16;
        cfg.patience = 200;
        const auto res = train(three_point_instance(), linear, cfg, Algo::munk);
        const bool good = close_to(res.alpha.a[0], 1.0, 1e-9) &&
                          close_to(res.alpha.b[0], 1.0, 1e-9) && res.alpha.b[1] < 1e-8;
        ok = ok && good;
        notes.push_back(std::string("three-point: alpha=(") + fmt17(res.alpha.a[0]) + "," +
                        fmt17(res.alpha.b[0]) + "," + fmt17(res.alpha.b[1]) + ")" +
                        (good ? "" : "  <- MISS"));
    }

    Criterion c{3, "analytic fixed points (two-point exact, 3-point eps < 1e-8)", ok,
                timer.seconds(), notes};
    return c;
}

// ---------------------------------------------------------------------------
// 4. Rate bounds: hand values on the 3-point instance; bound validity and
//    ordering over 50 random converged instances.

Criterion criterion_rate_bounds() {
    Timer timer;
    bool ok = true;
    std::vector<std::string> notes;

    {
        auto ds = three_point_instance();
        const KernelSpec linear{KernelFamily::linear_nonneg};
        SolverConfig cfg;
        cfg.max_iters = 5000;
        cfg.kkt_tol = 1e-14;
        cfg.rel_obj_tol = 1e-16;
        cfg.patience = 200;
        const auto res = train(ds, linear, cfg, Algo::munk);
        const auto blocks = gram_blocks(linear, ds.class_matrix(+1), ds.class_matrix(-1));
        const auto geom = margin_geometry(res.model, ds);
        const double bm = bound_munk(geom, 2);
        const double b3 = bound_m3(geom, 2);
        const auto alpha = snap_zeros(res.alpha, cfg.support_threshold);
        const double measured = measured_rate(blocks, alpha, 2, 1e-8, Algo::munk);
        const bool good = close_to(bm, 8.0 / 9.0, 1e-12) && close_to(b3, 16.0 / 17.0, 1e-12) &&
                          close_to(measured, 0.5, 1e-6) && measured <= bm;
        ok = ok && good;
        std::ostringstream n;
        n << "three-point: bound_munk=" << fmt17(bm) << " bound_m3=" << fmt17(b3)
          << " measured_munk=" << fmt17(measured) << (good ? "" : "  <- MISS");
        notes.push_back(n.str());
    }

    SplitMix64 seeder(99100);
    int instances = 0, rows = 0;
    double worst_excess = -1.0;
    while (instances < 50 && ok) {
        const auto n_a = 4 + static_cast<Eigen::Index>(seeder.next_below(8));
        const auto n_b = 4 + static_cast<Eigen::Index>(seeder.next_below(8));
        const double sep = 1.8 + 1.2 * seeder.next_unit();
        auto ds = oracle::random_instance(seeder.next_u64(), n_a, n_b, 2, sep);
        KernelSpec spec{KernelFamily::gaussian, 1.2 + 0.8 * seeder.next_unit()};
        SolverConfig cfg;
        cfg.max_iters = 3000000;
        cfg.kkt_tol = 1e-11;
        cfg.rel_obj_tol = 1e-16;
        cfg.patience = 60;
        const auto res = train(ds, spec, cfg, Algo::munk);
        if (!(res.kkt_residual < kAnalysisKktGate)) {
            ok = false;
            notes.push_back("instance failed to reach the KKT gate for analysis");
            break;
        }
        ++instances;
        const auto blocks = gram_blocks(spec, ds.class_matrix(+1), ds.class_matrix(-1));
        const auto alpha = snap_zeros(res.alpha, cfg.support_threshold);
        const auto report = rate_bound_report(res.model, ds, blocks, alpha);
        for (const auto& r : report.rows) {
            ++rows;
            worst_excess = std::max(worst_excess, r.gamma_munk_measured - r.gamma_munk_bound);
            worst_excess = std::max(worst_excess, r.gamma_m3_measured - r.gamma_m3_bound);
            if (r.gamma_munk_measured > r.gamma_munk_bound + 1e-4 ||
                r.gamma_m3_measured > r.gamma_m3_bound + 1e-4) {
                ok = false;
                notes.push_back("measured rate exceeds bound at instance " +
                                std::to_string(instances) + " index " +
                                std::to_string(r.index));
            }
            if (r.gamma_munk_bound > r.gamma_m3_bound + 1e-15) {
                ok = false;
                notes.push_back("bound ordering violated");
            }
        }
    }
    notes.push_back(std::to_string(instances) + " instances, " + std::to_string(rows) +
                    " non-support coefficients; worst measured-bound excess " +
                    std::to_string(worst_excess));

    Criterion c{4, "rate bounds (hand values 8/9 and 16/17; measured <= bound; ordering)", ok,
                timer.seconds(), notes};
    c.passed = c.passed && c.seconds < 180.0;
    if (c.seconds >= 180.0)
        c.notes.push_back("runtime budget (180 s) exceeded");
    return c;
}

// ---------------------------------------------------------------------------
// 5. Convergence-speed ordering on breast and sonar (gaussian sigma = 3).

struct SpeedResult {
    std::string dataset;
    long t_munk = -1, t_m3 = -1;
    double rate_ratio = 0.0;
    bool ok = false;
    std::string detail;
};

SpeedResult speed_ordering(const std::string& csv, const std::string& positive, double fraction,
                           bool standardize_features, long iters) {
    SpeedResult out;
    auto ds = load_csv(csv, "class", positive, MissingPolicy::drop_row);
    auto parts = split(ds, {fraction, 1, true});
    if (standardize_features)
        standardize(parts.train, parts.test);
    const KernelSpec spec{KernelFamily::gaussian, 3.0};
    const auto blocks =
        gram_blocks(spec, parts.train.class_matrix(+1), parts.train.class_matrix(-1));
    const auto sg = make_signed_gram(blocks);
    const Mat signed_A = sg.plus - sg.minus;

    std::vector<double> objs[2];
    AlphaState finals[2];
    for (int algo = 0; algo < 2; ++algo) {
        AlphaState st;
        st.a = Vec::Ones(blocks.n_a());
        st.b = Vec::Ones(blocks.n_b());
        objs[algo].reserve(static_cast<std::size_t>(iters) + 1);
        for (long t = 0; t < iters; ++t) {
            if (algo == 0) {
                // objective from the same products the update consumes
                const auto g = gradient_split(blocks, st);
                objs[algo].push_back(0.5 * (st.a.dot(g.pos_a) + st.b.dot(g.pos_b)) -
                                     st.a.dot(g.neg_a - Vec::Ones(st.a.size())) -
                                     st.a.sum() - st.b.sum());
                AlphaState next = st;
                for (Eigen::Index i = 0; i < st.a.size(); ++i)
                    next.a[i] = st.a[i] * g.neg_a[i] / g.pos_a[i];
                for (Eigen::Index i = 0; i < st.b.size(); ++i)
                    next.b[i] = st.b[i] * g.neg_b[i] / g.pos_b[i];
                st = std::move(next);
            } else {
                const Vec cat = st.concat();
                objs[algo].push_back(oracle::label_objective(signed_A, cat));
                const Vec v = m3_step(sg, cat);
                st.a = v.head(blocks.n_a());
                st.b = v.tail(blocks.n_b());
            }
        }
        objs[algo].push_back(objective(blocks, st));
        finals[algo] = st;
    }

    // Iterations to close 99.9999% of the gap between the shared start and
    // the better of the two final objectives.
    const double s_star = std::min(objs[0].back(), objs[1].back());
    const double gap0 = objs[0].front() - s_star;
    auto closure = [&](const std::vector<double>& o) -> long {
        for (std::size_t t = 0; t < o.size(); ++t)
            if (o[t] - s_star <= 1e-6 * gap0)
                return static_cast<long>(t);
        return -1;
    };
    out.t_munk = closure(objs[0]);
    out.t_m3 = closure(objs[1]);

    // Asymptotic per-iteration contraction of each non-support coefficient,
    // measured at the most converged state (MUNK's final): the one-step
    // multiplicative factor in the delta -> 0 limit. Non-support indices are
    // classified by their positive gradient (margin above 1).
    const auto g = gradient_split(blocks, finals[0]);
    const Vec grad_a = g.grad_a(), grad_b = g.grad_b();
    double gamma_munk = 0, gamma_m3 = 0;
    int n_nonsupport = 0;
    for (Eigen::Index i = 0; i < blocks.n_a() + blocks.n_b(); ++i) {
        const bool in_a = i < blocks.n_a();
        const double grad = in_a ? grad_a[i] : grad_b[i - blocks.n_a()];
        if (grad < 1e-3)
            continue;
        ++n_nonsupport;
        const double zp = in_a ? g.pos_a[i] : g.pos_b[i - blocks.n_a()];
        const double zm = (in_a ? g.neg_a[i] : g.neg_b[i - blocks.n_a()]) - 1.0;
        gamma_munk = std::max(gamma_munk, (zm + 1.0) / zp);
        gamma_m3 = std::max(gamma_m3, (1.0 + std::sqrt(1.0 + 4.0 * zp * zm)) / (2.0 * zp));
    }
    out.rate_ratio = std::log(gamma_munk) / std::log(gamma_m3);

    const bool closure_ok = out.t_munk >= 0 && (out.t_m3 < 0 || out.t_munk < out.t_m3);
    out.ok = closure_ok && out.rate_ratio >= 1.5;
    std::ostringstream d;
    d << "iters to close 99.9999% gap: munk " << out.t_munk << ", m3 "
      << (out.t_m3 < 0 ? std::string(">") + std::to_string(iters) : std::to_string(out.t_m3))
      << "; slowest gamma munk " << gamma_munk << " m3 " << gamma_m3 << " (rate ratio "
      << out.rate_ratio << ", " << n_nonsupport << " non-support)";
    out.detail = d.str();
    return out;
}

Criterion criterion_speed() {
    Timer timer;
    const std::string base = MUNK_SOURCE_DIR;
    auto sonar = std::async(std::launch::async, [&] {
        return speed_ordering(base + "/data/sonar.csv", "M", 0.5, false, 500000);
    });
    auto breast = std::async(std::launch::async, [&] {
        return speed_ordering(base + "/data/breast_cancer_wisconsin.csv", "malignant", 0.8,
                              true, 250000);
    });
    const auto rs = sonar.get();
    const auto rb = breast.get();

    Criterion c{5, "convergence-speed ordering vs m3 (breast+sonar, sigma 3)",
                rs.ok && rb.ok, timer.seconds(), {}};
    c.notes.push_back("sonar:  " + rs.detail + (rs.ok ? "" : "  <- MISS"));
    c.notes.push_back("breast: " + rb.detail + (rb.ok ? "" : "  <- MISS"));
    return c;
}

// ---------------------------------------------------------------------------
// 6. Error-rate table reproduction, tolerance-bounded.

struct TableCell {
    std::string label;
    std::string dataset; // "breast" or "sonar"
    std::vector<KernelSpec> conventions; // pass if any convention lands in band
    double target;    // percent
    double tolerance; // percentage points
    bool standardize_features;
    double feature_scale; // constant rescale applied before splitting
    long max_iters;
};

double mean_error_percent(const LabeledDataset& ds, const KernelSpec& spec,
                          bool standardize_features, double fraction, long max_iters) {
    std::vector<std::future<double>> futs;
    futs.reserve(10);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        futs.push_back(std::async(std::launch::async, [&, seed] {
            auto parts = split(ds, {fraction, seed, true});
            if (standardize_features)
                standardize(parts.train, parts.test);
            SolverConfig cfg;
            cfg.max_iters = max_iters;
            cfg.kkt_tol = 1e-6;
            cfg.rel_obj_tol = 1e-12;
            cfg.patience = 20;
            cfg.trace_every = 10000;
            const auto res = train(parts.train, spec, cfg, Algo::munk);
            return misclassification_rate(res.model, parts.test) * 100.0;
        }));
    }
    double sum = 0;
    for (auto& f : futs)
        sum += f.get();
    return sum / static_cast<double>(futs.size());
}

Criterion criterion_table() {
    Timer timer;
    const std::string base = MUNK_SOURCE_DIR;
    auto breast = load_csv(base + "/data/breast_cancer_wisconsin.csv", "class", "malignant",
                           MissingPolicy::drop_row);
    auto sonar = load_csv(base + "/data/sonar.csv", "class", "M", MissingPolicy::drop_row);

    auto gauss = [](double sigma) {
        KernelSpec s;
        s.family = KernelFamily::gaussian;
        s.sigma = sigma;
        return s;
    };
    auto poly = [](int degree, double coef0) {
        KernelSpec s;
        s.family = KernelFamily::polynomial_even;
        s.degree = degree;
        s.coef0 = coef0;
        return s;
    };

    // Gaussian cells use the documented preprocessing (breast standardized,
    // sonar raw: its features are already unit scale). Breast polynomial cells
    // rescale the 1..10 integer features to [0.1, 1] to keep the degree-6 Gram
    // conditioned. Polynomial cells are checked under both kernel conventions
    // (homogeneous coef0=0 and inhomogeneous coef0=1) per the pass rule.
    std::vector<TableCell> cells = {
        {"breast gaussian s=1", "breast", {gauss(1)}, 0.75, 2.0, true, 1.0, 25000},
        {"breast gaussian s=3", "breast", {gauss(3)}, 2.26, 2.0, true, 1.0, 25000},
        {"sonar gaussian s=1", "sonar", {gauss(1)}, 7.69, 5.0, false, 1.0, 50000},
        {"sonar gaussian s=3", "sonar", {gauss(3)}, 11.53, 5.0, false, 1.0, 50000},
        {"breast poly d=4", "breast", {poly(4, 0), poly(4, 1)}, 2.26, 2.0, false, 0.1, 25000},
        {"breast poly d=6", "breast", {poly(6, 0), poly(6, 1)}, 3.76, 2.0, false, 0.1, 25000},
        {"sonar poly d=4", "sonar", {poly(4, 0), poly(4, 1)}, 9.62, 5.0, false, 1.0, 50000},
        {"sonar poly d=6", "sonar", {poly(6, 0), poly(6, 1)}, 10.58, 5.0, false, 1.0, 50000},
    };

    bool all_ok = true;
    std::vector<std::string> notes;
    for (const auto& cell : cells) {
        LabeledDataset ds = cell.dataset == "breast" ? breast : sonar;
        if (cell.feature_scale != 1.0)
            ds.X *= cell.feature_scale;
        const double fraction = cell.dataset == "breast" ? 0.8 : 0.5;
        bool cell_ok = false;
        std::ostringstream line;
        line << cell.label << ": allowed " << cell.target << "+-" << cell.tolerance
             << ", measured";
        for (const auto& spec : cell.conventions) {
            const double err =
                mean_error_percent(ds, spec, cell.standardize_features, fraction,
                                   cell.max_iters);
            line << " " << err << "%";
            cell_ok = cell_ok || std::abs(err - cell.target) <= cell.tolerance;
        }
        line << (cell_ok ? "  [ok]" : "  [out of band]");
        notes.push_back(line.str());
        all_ok = all_ok && cell_ok;
    }

    Criterion c{6, "error-rate table reproduction over 10 seeded splits", all_ok,
                timer.seconds(), notes};
    c.passed = c.passed && c.seconds < 600.0;
    if (c.seconds >= 600.0)
        c.notes.push_back("runtime budget (600 s) exceeded");
    return c;
}

// ---------------------------------------------------------------------------
// 7. Soft margin: box feasibility at every iterate, zero bound violations as
//    C decreases, monotone objective under clipping.

Criterion criterion_soft_margin() {
    Timer timer;
    SplitMix64 seeder(430021);
    bool ok = true;
    std::vector<std::string> notes;
    long iterates_checked = 0;

    for (int t = 0; t < 20 && ok; ++t) {
        auto ds = oracle::random_instance(seeder.next_u64(), 6 + t % 8, 6 + t % 5, 2,
                                          0.5 + 1.5 * seeder.next_unit());
        KernelSpec spec{KernelFamily::gaussian, 1.0};
        const auto blocks = gram_blocks(spec, ds.class_matrix(+1), ds.class_matrix(-1));

        std::ostringstream bound_counts;
        for (const double C : {2.0, 1.0, 0.5, 0.25}) {
            AlphaState st;
            st.a = Vec::Ones(blocks.n_a());
            st.b = Vec::Ones(blocks.n_b());
            st.C = C;
            st = clip_box(std::move(st), C);
            double prev = objective(blocks, st);
            long violations = 0;
            for (int it = 0; it < 400; ++it) {
                st = clip_box(munk_step(blocks, st), C);
                ++iterates_checked;
                if (st.a.minCoeff() < 0 || st.b.minCoeff() < 0 || st.a.maxCoeff() > C ||
                    st.b.maxCoeff() > C)
                    ++violations;
                const double cur = objective(blocks, st);
                if (cur > prev + 1e-12 * (1.0 + std::abs(prev))) {
                    ok = false;
                    notes.push_back("objective increased under clipping, instance " +
                                    std::to_string(t));
                    break;
                }
                prev = cur;
            }
            if (violations != 0) {
                ok = false;
                notes.push_back("box violated at " + std::to_string(violations) +
                                " iterates, instance " + std::to_string(t));
            }
            Eigen::Index at_bound = 0;
            for (Eigen::Index i = 0; i < st.a.size(); ++i)
                at_bound += st.a[i] >= C - 1e-6;
            for (Eigen::Index i = 0; i < st.b.size(); ++i)
                at_bound += st.b[i] >= C - 1e-6;
            bound_counts << " C=" << C << ":" << at_bound;
        }
        if (t < 3)
            notes.push_back("instance " + std::to_string(t) + " at-bound counts" +
                            bound_counts.str());
    }
    notes.push_back(std::to_string(iterates_checked) +
                    " iterates checked; bound-violation count 0 at every C");

    Criterion c{7, "soft margin: feasible iterates, zero violations, monotone objective", ok,
                timer.seconds(), notes};
    return c;
}

// ---------------------------------------------------------------------------
// 8. NMF: monotone objective on 100 random matrices; exact rank-1 recovery.

Criterion criterion_nmf() {
    Timer timer;
    SplitMix64 seeder(121212);
    bool ok = true;
    std::vector<std::string> notes;

    for (int t = 0; t < 100 && ok; ++t) {
        const auto m = 3 + static_cast<Eigen::Index>(seeder.next_below(8));
        const auto n = 3 + static_cast<Eigen::Index>(seeder.next_below(8));
        const auto r = 1 + static_cast<Eigen::Index>(seeder.next_below(
                               static_cast<std::uint64_t>(std::min(m, n))));
        Mat X(m, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < m; ++i)
                X(i, j) = 5.0 * seeder.next_unit();
        const auto res = nmf_run(X, r, 150, seeder.next_u64());
        for (std::size_t k = 1; k < res.objective_trace.size(); ++k) {
            const double prev = res.objective_trace[k - 1];
            if (res.objective_trace[k] > prev + 1e-12 * (1.0 + std::abs(prev))) {
                ok = false;
                notes.push_back("objective increased at matrix " + std::to_string(t));
                break;
            }
        }
    }

    double worst_rel = 0;
    for (int t = 0; t < 10 && ok; ++t) {
        const auto m = 4 + static_cast<Eigen::Index>(seeder.next_below(6));
        const auto n = 4 + static_cast<Eigen::Index>(seeder.next_below(6));
        Vec u(m), v(n);
        for (Eigen::Index i = 0; i < m; ++i)
            u[i] = seeder.next_unit_pos();
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = seeder.next_unit_pos();
        const Mat X = u * v.transpose();
        const auto res = nmf_run(X, 1, 2000, seeder.next_u64());
        const double rel = res.objective_trace.back() / (0.5 * X.squaredNorm());
        worst_rel = std::max(worst_rel, rel);
        if (rel >= 1e-8) {
            ok = false;
            notes.push_back("rank-1 residual " + std::to_string(rel) + " at matrix " +
                            std::to_string(t));
        }
    }
    notes.push_back("worst rank-1 relative residual " + fmt17(worst_rel));

    Criterion c{8, "nmf: monotone objective (100 matrices), rank-1 residual < 1e-8", ok,
                timer.seconds(), notes};
    return c;
}

// ---------------------------------------------------------------------------
// 9. Appendix identity and derivation chain on all analysis instances.

Criterion criterion_appendix() {
    Timer timer;
    SplitMix64 seeder(5150);
    bool ok = true;
    std::vector<std::string> notes;
    int instances = 0, rows = 0;

    while (instances < 50 && ok) {
        const auto n_a = 4 + static_cast<Eigen::Index>(seeder.next_below(8));
        const auto n_b = 4 + static_cast<Eigen::Index>(seeder.next_below(8));
        const double sep = 1.8 + 1.2 * seeder.next_unit();
        auto ds = oracle::random_instance(seeder.next_u64(), n_a, n_b, 2, sep);
        KernelSpec spec{KernelFamily::gaussian, 1.2 + 0.8 * seeder.next_unit()};
        SolverConfig cfg;
        cfg.max_iters = 3000000;
        cfg.kkt_tol = 1e-11;
        cfg.rel_obj_tol = 1e-16;
        cfg.patience = 60;
        const auto res = train(ds, spec, cfg, Algo::munk);
        if (!(res.kkt_residual < kAnalysisKktGate)) {
            ok = false;
            notes.push_back("instance failed to reach the KKT gate");
            break;
        }
        ++instances;
        const auto blocks = gram_blocks(spec, ds.class_matrix(+1), ds.class_matrix(-1));
        const auto alpha = snap_zeros(res.alpha, cfg.support_threshold);
        const auto geom = margin_geometry(res.model, ds);
        for (Eigen::Index i = 0; i < geom.size(); ++i) {
            if (geom.alpha[i] > kAnalysisZeroThreshold || alpha.coeff(i) > 0)
                continue;
            ++rows;
            const double raw = lower_bound_appendix(geom, i);
            const double geometric = 1.0 / bound_munk(geom, i);
            if (std::abs(raw - geometric) > 1e-12 * std::max(1.0, std::abs(geometric))) {
                ok = false;
                notes.push_back("identity mismatch at instance " + std::to_string(instances));
            }
            const double zp = z_plus(blocks, alpha, i);
            const double zm = z_minus(blocks, alpha, i);
            if (std::abs((zp - zm) - geom.margin[i]) > 1e-10) {
                ok = false;
                notes.push_back("z+ - z- mismatch at instance " + std::to_string(instances));
            }
            if (zp > geom.l_i[i] * geom.l * geom.K_ww + 1e-10) {
                ok = false;
                notes.push_back("z+ upper bound violated at instance " +
                                std::to_string(instances));
            }
        }
    }
    notes.push_back(std::to_string(instances) + " instances, " + std::to_string(rows) +
                    " identities checked");

    Criterion c{9, "appendix identity (1e-12) and z-chain (1e-10)", ok, timer.seconds(),
                notes};
    return c;
}

} // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    g_results.push_back(criterion_monotone());
    g_results.push_back(criterion_oracle());
    g_results.push_back(criterion_analytic());
    g_results.push_back(criterion_rate_bounds());
    g_results.push_back(criterion_speed());
    g_results.push_back(criterion_table());
    g_results.push_back(criterion_soft_margin());
    g_results.push_back(criterion_nmf());
    g_results.push_back(criterion_appendix());

    bool all = true;
    std::printf("\n");
    for (const auto& c : g_results) {
        std::printf("[%s] %d. %s (%.1f s)\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.seconds);
        for (const auto& n : c.notes)
            std::printf("       %s\n", n.c_str());
        all = all && c.passed;
    }
    std::printf("\n%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
