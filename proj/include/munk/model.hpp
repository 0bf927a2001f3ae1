#ifndef MUNK_MODEL_HPP
#define MUNK_MODEL_HPP

#include <cstdint>
#include <string>

#include "munk/dataset.hpp"
#include "munk/kernels.hpp"

namespace munk {

struct ModelMeta {
    std::string algo = "munk";
    std::int64_t iterations = 0;
    double objective = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
};

/// Kernel expansion f(x) = sum_i alpha_i y_i k(x_i, x) over the support
/// vectors (coefficients above support_threshold). No bias: the separating
/// hyperplane passes through the origin in feature space.
struct TrainedModel {
    KernelSpec kernel;
    Mat support_X;     // d x s
    Vec support_alpha; // length s, entrywise > 0
    Vec support_y;     // length s, entries +/-1
    double support_threshold = 1e-8;
    ModelMeta meta;

    Eigen::Index n_support() const { return support_alpha.size(); }
    Eigen::Index dim() const { return support_X.rows(); }
};

double decision(const TrainedModel& m, const Vec& x);

// Decision values for column points; one gram evaluation per (sv, point) pair.
Vec decision_many(const TrainedModel& m, const Mat& X);

// sign(decision); exact zero maps to +1.
Eigen::VectorXi predict(const TrainedModel& m, const Mat& X);

double misclassification_rate(const TrainedModel& m, const LabeledDataset& test);

// Line-oriented text format, versioned ("munk-model v1"), 17 significant
// digits per value so finite fields round-trip bit-exactly.
void save(const TrainedModel& m, const std::string& path);
TrainedModel load(const std::string& path);

} // namespace munk

#endif
