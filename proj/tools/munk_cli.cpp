// Command-line front end: train/compare/bounds/nmf subcommands over the
// munk library. Exit codes: 0 success, 2 I/O errors, 3 validation errors,
// 4 non-convergence (downgradeable to a warning with --warn-nonconverged).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <sstream>

#include "munk/analysis.hpp"
#include "munk/baselines.hpp"
#include "munk/dataset.hpp"
#include "munk/errors.hpp"
#include "munk/io.hpp"
#include "munk/model.hpp"
#include "munk/nmf.hpp"
#include "munk/solver.hpp"
#include "munk/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNonConverged = 4;

int log_level() {
    const char* v = std::getenv("MUNK_LOG");
    if (!v)
        return 1;
    return std::atoi(v);
}

struct Options {
    std::string data;
    std::string label_col = "class";
    std::string positive_label = "1";
    std::string kernel = "gaussian";
    double sigma = 1.0;
    int degree = 4;
    double coef0 = 1.0;
    double kernel_offset = 0.0;
    double C = munk::kInfinity;
    std::string algo = "munk";
    double eta = 0.0;
    double split_fraction = 0.8;
    std::uint64_t seed = 1;
    std::string seeds; // "a..b" or comma list; enables multi-seed evaluation
    std::string standardize_mode = "auto";
    std::int64_t max_iters = 1000000;
    double tol = 1e-10;
    double kkt_tol = 1e-6;
    bool alternating = false;
    bool warn_nonconverged = false;
    std::string out_model, out_trace, out_plot, out_report;
    std::int64_t trace_every = 1;

    // nmf subcommand
    std::int64_t nmf_rank = 2;
    std::int64_t nmf_iters = 500;
    std::string out_w, out_h;
};

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--data", o.data, "input CSV path")->required();
    cmd->add_option("--label-col", o.label_col, "label column name or 0-based index");
    cmd->add_option("--positive-label", o.positive_label, "label value mapped to +1");
    cmd->add_option("--kernel", o.kernel, "kernel family")
        ->check(CLI::IsMember({"gaussian", "poly", "linear"}));
    cmd->add_option("--sigma", o.sigma, "gaussian width");
    cmd->add_option("--degree", o.degree, "polynomial degree (even)");
    cmd->add_option("--coef0", o.coef0, "polynomial additive constant");
    cmd->add_option("--kernel-offset", o.kernel_offset, "constant added to every kernel value");
    cmd->add_option("--C", o.C, "soft-margin upper bound (default +inf)");
    cmd->add_option("--split", o.split_fraction, "train fraction in (0,1)");
    cmd->add_option("--seed", o.seed, "split seed");
    cmd->add_option("--seeds", o.seeds, "multi-seed evaluation, e.g. 1..10 or 1,2,5");
    cmd->add_option("--standardize", o.standardize_mode, "feature standardization")
        ->check(CLI::IsMember({"on", "off", "auto"}));
    cmd->add_option("--max-iters", o.max_iters, "iteration cap");
    cmd->add_option("--tol", o.tol, "relative objective-change tolerance");
    cmd->add_option("--kkt-tol", o.kkt_tol, "KKT residual tolerance");
    cmd->add_flag("--alternating", o.alternating, "Gauss-Seidel update ordering");
    cmd->add_flag("--warn-nonconverged", o.warn_nonconverged,
                  "report non-convergence as a warning instead of exit code 4");
    cmd->add_option("--out-trace", o.out_trace, "trace CSV path");
    cmd->add_option("--out-plot", o.out_plot, "SVG plot path");
    cmd->add_option("--trace-every", o.trace_every, "record cadence");
}

munk::KernelSpec kernel_from(const Options& o) {
    munk::KernelSpec spec;
    if (o.kernel == "gaussian") {
        spec.family = munk::KernelFamily::gaussian;
        spec.sigma = o.sigma;
    } else if (o.kernel == "poly") {
        spec.family = munk::KernelFamily::polynomial_even;
        spec.degree = o.degree;
        spec.coef0 = o.coef0;
    } else {
        spec.family = munk::KernelFamily::linear_nonneg;
    }
    spec.offset = o.kernel_offset;
    spec.validate();
    return spec;
}

bool want_standardize(const Options& o) {
    if (o.standardize_mode == "on")
        return true;
    if (o.standardize_mode == "off")
        return false;
    return o.kernel == "gaussian"; // default: on for gaussian, off otherwise
}

munk::SolverConfig solver_config(const Options& o) {
    munk::SolverConfig cfg;
    cfg.max_iters = o.max_iters;
    cfg.rel_obj_tol = o.tol;
    cfg.kkt_tol = o.kkt_tol;
    cfg.alternating = o.alternating;
    cfg.trace_every = o.trace_every;
    cfg.eta = o.eta;
    return cfg;
}

std::vector<std::uint64_t> parse_seeds(const Options& o) {
    if (o.seeds.empty())
        return {o.seed};
    std::vector<std::uint64_t> out;
    auto range = o.seeds.find("..");
    if (range != std::string::npos) {
        const std::uint64_t a = std::stoull(o.seeds.substr(0, range));
        const std::uint64_t b = std::stoull(o.seeds.substr(range + 2));
        if (b < a)
            throw munk::ConfigError("--seeds range is empty: " + o.seeds);
        for (std::uint64_t s = a; s <= b; ++s)
            out.push_back(s);
    } else {
        std::istringstream in(o.seeds);
        std::string tok;
        while (std::getline(in, tok, ','))
            out.push_back(std::stoull(tok));
    }
    if (out.empty())
        throw munk::ConfigError("--seeds parsed to an empty list");
    return out;
}

std::string config_echo(const std::string& subcommand, const Options& o,
                        const munk::KernelSpec& spec, std::uint64_t seed) {
    std::ostringstream s;
    s << subcommand << " data=" << o.data << " label-col=" << o.label_col
      << " positive-label=" << o.positive_label << " kernel{" << spec.to_tokens() << "}"
      << " C=" << (std::isfinite(o.C) ? munk::fmt17(o.C) : "inf") << " algo=" << o.algo
      << " split=" << o.split_fraction << " seed=" << seed
      << " standardize=" << (want_standardize(o) ? "on" : "off")
      << " max-iters=" << o.max_iters << " tol=" << munk::fmt17(o.tol)
      << " kkt-tol=" << munk::fmt17(o.kkt_tol) << " alternating=" << (o.alternating ? 1 : 0);
    return s.str();
}

struct PreparedData {
    munk::LabeledDataset train;
    munk::LabeledDataset test;
};

PreparedData prepare(const Options& o, std::uint64_t seed) {
    auto ds = munk::load_csv(o.data, o.label_col, o.positive_label,
                             munk::MissingPolicy::drop_row);
    munk::SplitSpec sp;
    sp.train_fraction = o.split_fraction;
    sp.seed = seed;
    auto parts = munk::split(ds, sp);
    PreparedData pd{std::move(parts.train), std::move(parts.test)};
    if (want_standardize(o))
        munk::standardize(pd.train, pd.test);
    return pd;
}

struct SeedOutcome {
    munk::TrainResult result;
    double train_err = 0.0;
    double test_err = 0.0;
};

SeedOutcome run_one(const Options& o, const munk::KernelSpec& spec, std::uint64_t seed) {
    if (log_level() >= 2)
        std::cerr << "# " << config_echo(o.algo, o, spec, seed) << "\n";
    PreparedData pd = prepare(o, seed);
    SeedOutcome out;
    out.result = munk::train(pd.train, spec, solver_config(o),
                             munk::algo_from_string(o.algo), o.C);
    out.train_err = munk::misclassification_rate(out.result.model, pd.train);
    out.test_err = munk::misclassification_rate(out.result.model, pd.test);
    return out;
}

int finish_convergence(const Options& o, bool converged) {
    if (converged)
        return kExitOk;
    if (o.warn_nonconverged) {
        std::cerr << "warning: stopped at max-iters without meeting tolerances\n";
        return kExitOk;
    }
    std::cerr << "error: not converged within max-iters (use --warn-nonconverged to downgrade)\n";
    return kExitNonConverged;
}

int cmd_train(const Options& o) {
    const auto spec = kernel_from(o);
    const auto seeds = parse_seeds(o);

    if (seeds.size() == 1) {
        const auto echo = config_echo("train", o, spec, seeds[0]);
        SeedOutcome out = run_one(o, spec, seeds[0]);
        if (!o.out_model.empty())
            munk::save(out.result.model, o.out_model);
        if (!o.out_trace.empty())
            munk::write_trace_csv(out.result.trace, o.out_trace, echo);
        if (!o.out_plot.empty())
            munk::render_convergence_svg({munk::to_svg_trace(out.result.trace, o.algo)},
                                         o.out_plot, echo);
        std::cout << "objective=" << munk::fmt17(out.result.final_objective)
                  << " iters=" << out.result.iterations
                  << " kkt=" << munk::fmt17(out.result.kkt_residual)
                  << " n_support=" << out.result.model.n_support()
                  << " train_error=" << out.train_err << " test_error=" << out.test_err
                  << "\n";
        return finish_convergence(o, out.result.converged);
    }

    // Multi-seed evaluation: independent runs fan out in parallel and are
    // aggregated in ascending seed order.
    std::vector<std::future<SeedOutcome>> futs;
    futs.reserve(seeds.size());
    for (auto s : seeds)
        futs.push_back(std::async(std::launch::async,
                                  [&o, &spec, s] { return run_one(o, spec, s); }));
    double sum = 0, sum2 = 0;
    bool all_converged = true;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        SeedOutcome out = futs[k].get();
        all_converged = all_converged && out.result.converged;
        sum += out.test_err;
        sum2 += out.test_err * out.test_err;
        std::cout << "seed=" << seeds[k] << " test_error=" << out.test_err
                  << " objective=" << munk::fmt17(out.result.final_objective)
                  << " iters=" << out.result.iterations << "\n";
    }
    const double n = static_cast<double>(seeds.size());
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    std::cout << "mean_test_error=" << mean << " stddev=" << std::sqrt(var)
              << " seeds=" << seeds.size() << "\n";
    return finish_convergence(o, all_converged);
}

int cmd_compare(const Options& o) {
    const auto spec = kernel_from(o);
    const auto seeds = parse_seeds(o);
    const auto echo = config_echo("compare", o, spec, seeds[0]);
    PreparedData pd = prepare(o, seeds[0]);

    const auto cfg = solver_config(o);
    auto munk_res = munk::train(pd.train, spec, cfg, munk::Algo::munk, o.C);
    auto m3_res = munk::train(pd.train, spec, cfg, munk::Algo::m3, o.C);

    if (!o.out_trace.empty())
        munk::write_compare_csv(munk_res.trace, m3_res.trace, o.out_trace, echo);
    if (!o.out_plot.empty())
        munk::render_convergence_svg({munk::to_svg_trace(munk_res.trace, "MUNK"),
                                      munk::to_svg_trace(m3_res.trace, "M3")},
                                     o.out_plot, echo);

    std::cout << "munk: objective=" << munk::fmt17(munk_res.final_objective)
              << " iters=" << munk_res.iterations << "\n";
    std::cout << "m3:   objective=" << munk::fmt17(m3_res.final_objective)
              << " iters=" << m3_res.iterations << "\n";
    std::cout << "objective_gap=" << munk::fmt17(std::abs(munk_res.final_objective -
                                                          m3_res.final_objective))
              << "\n";
    return finish_convergence(o, munk_res.converged && m3_res.converged);
}

int cmd_bounds(const Options& o, bool demo) {
    const auto spec = kernel_from(o);
    munk::LabeledDataset train;
    munk::KernelSpec used_spec = spec;

    if (demo) {
        // Built-in 3-point instance: A = {(1,0)}, B = {(0,1), (0,2)} under the
        // linear kernel; non-support coefficient 3 has bounds 8/9 and 16/17.
        munk::Mat X(2, 3);
        X << 1, 0, 0,
             0, 1, 2;
        Eigen::VectorXi y(3);
        y << 1, -1, -1;
        train = munk::make_dataset(X, y);
        used_spec = munk::KernelSpec{munk::KernelFamily::linear_nonneg};
    } else {
        PreparedData pd = prepare(o, parse_seeds(o)[0]);
        train = std::move(pd.train);
    }

    auto cfg = solver_config(o);
    cfg.kkt_tol = std::min(cfg.kkt_tol, demo ? 1e-14 : 1e-10); // bounds need a tight fixed point
    cfg.rel_obj_tol = std::min(cfg.rel_obj_tol, 1e-16);
    cfg.patience = 200;
    if (demo)
        cfg.max_iters = std::max<std::int64_t>(cfg.max_iters, 5000);
    auto res = munk::train(train, used_spec, cfg, munk::Algo::munk, o.C);
    if (!(res.kkt_residual < munk::kAnalysisKktGate)) {
        std::cerr << "error: solution KKT residual " << res.kkt_residual
                  << " is above the analysis gate " << munk::kAnalysisKktGate
                  << "; rate bounds are only valid at the fixed point (raise --max-iters)\n";
        return kExitNonConverged;
    }

    const auto blocks = munk::gram_blocks(used_spec, train.class_matrix(+1),
                                          train.class_matrix(-1));
    // Snap sub-support coefficients to exact zero so the analysis alpha and
    // the model describe the same weight vector.
    munk::AlphaState alpha = res.alpha;
    for (Eigen::Index i = 0; i < alpha.a.size(); ++i)
        if (alpha.a[i] <= cfg.support_threshold)
            alpha.a[i] = 0.0;
    for (Eigen::Index i = 0; i < alpha.b.size(); ++i)
        if (alpha.b[i] <= cfg.support_threshold)
            alpha.b[i] = 0.0;

    const auto report = munk::rate_bound_report(res.model, train, blocks, alpha);
    const auto echo = config_echo(demo ? "bounds --demo" : "bounds", o, used_spec,
                                  o.seeds.empty() ? o.seed : parse_seeds(o)[0]);
    if (!o.out_report.empty())
        munk::write_rate_report_csv(report, o.out_report, echo);

    if (report.rows.empty()) {
        std::cerr << "warning: no non-support coefficients; empty report\n";
        return kExitOk;
    }
    double worst_ratio = 0;
    bool ordering_ok = true;
    for (const auto& r : report.rows) {
        worst_ratio = std::max(worst_ratio, r.gamma_munk_measured / r.gamma_munk_bound);
        ordering_ok = ordering_ok && r.gamma_munk_bound <= r.gamma_m3_bound + 1e-15;
    }
    std::cout << "rows=" << report.rows.size()
              << " max_measured_over_bound=" << munk::fmt17(worst_ratio)
              << " bound_ordering=" << (ordering_ok ? "PASS" : "FAIL")
              << " bound_validity=" << (worst_ratio <= 1.0 + 1e-4 ? "PASS" : "FAIL") << "\n";
    return kExitOk;
}

int cmd_nmf(const Options& o) {
    const munk::Mat X = munk::read_matrix_csv(o.data);
    if (X.minCoeff() < 0) {
        std::cerr << "error: NMF input has negative entries\n";
        return kExitValidation;
    }
    auto res = munk::nmf_run(X, o.nmf_rank, o.nmf_iters, o.seed);
    std::ostringstream echo;
    echo << "nmf data=" << o.data << " rank=" << o.nmf_rank << " iters=" << o.nmf_iters
         << " seed=" << o.seed;
    if (!o.out_w.empty())
        munk::write_matrix_csv(res.state.W, o.out_w, echo.str());
    if (!o.out_h.empty())
        munk::write_matrix_csv(res.state.H, o.out_h, echo.str());
    if (!o.out_trace.empty())
        munk::write_nmf_trace_csv(res.objective_trace, o.out_trace, echo.str());
    const double rel = res.objective_trace.back() / (0.5 * X.squaredNorm());
    std::cout << "objective=" << munk::fmt17(res.objective_trace.back())
              << " relative_residual=" << munk::fmt17(rel) << " iters=" << o.nmf_iters << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplicative-update SVM trainer for non-negative kernels"};
    app.require_subcommand(1);

    Options o;
    bool bounds_demo = false;

    auto* train_cmd = app.add_subcommand("train", "train one model (or multi-seed evaluate)");
    add_common_flags(train_cmd, o);
    train_cmd->add_option("--algo", o.algo, "solver")
        ->check(CLI::IsMember({"munk", "m3", "ka"}));
    train_cmd->add_option("--eta", o.eta, "KA learning rate (default 1/max k_ii)");
    train_cmd->add_option("--out-model", o.out_model, "model file path");

    auto* compare_cmd = app.add_subcommand("compare", "run munk and m3 from identical state");
    add_common_flags(compare_cmd, o);

    auto* bounds_cmd = app.add_subcommand("bounds", "convergence-rate bound report");
    add_common_flags(bounds_cmd, o);
    bounds_cmd->add_option("--out-report", o.out_report, "report CSV path");
    bounds_cmd->add_flag("--demo", bounds_demo, "use the built-in 3-point instance");
    bounds_cmd->get_option("--data")->required(false);

    auto* nmf_cmd = app.add_subcommand("nmf", "non-negative matrix factorization");
    nmf_cmd->add_option("--data", o.data, "numeric CSV matrix")->required();
    nmf_cmd->add_option("--rank", o.nmf_rank, "inner rank");
    nmf_cmd->add_option("--iters", o.nmf_iters, "iterations");
    nmf_cmd->add_option("--seed", o.seed, "initialization seed");
    nmf_cmd->add_option("--out-w", o.out_w, "W output CSV");
    nmf_cmd->add_option("--out-h", o.out_h, "H output CSV");
    nmf_cmd->add_option("--out-trace", o.out_trace, "objective trace CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed())
            return cmd_train(o);
        if (compare_cmd->parsed())
            return cmd_compare(o);
        if (bounds_cmd->parsed())
            return cmd_bounds(o, bounds_demo);
        if (nmf_cmd->parsed())
            return cmd_nmf(o);
    } catch (const munk::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const munk::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const munk::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
