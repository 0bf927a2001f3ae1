#ifndef MUNK_DATASET_HPP
#define MUNK_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "munk/kernels.hpp"

namespace munk {

/// Two-class dataset: column feature vectors plus +/-1 labels.
/// idx_pos / idx_neg are the column indices of the +1 and -1 classes.
struct LabeledDataset {
    Mat X;                      // d x n
    Eigen::VectorXi y;          // entries in {+1,-1}
    std::vector<Eigen::Index> idx_pos;
    std::vector<Eigen::Index> idx_neg;

    Eigen::Index n() const { return X.cols(); }
    Eigen::Index dim() const { return X.rows(); }

    // Feature columns of one class, in index order.
    Mat class_matrix(int label) const;

    // Recomputes idx_pos/idx_neg from y and checks invariants.
    void reindex();
};

LabeledDataset make_dataset(Mat X, Eigen::VectorXi y);

enum class MissingPolicy { drop_row, error };

/// Loads a two-class CSV. Cells equal to "?" are missing values, handled per
/// policy. label_column accepts a header name or a 0-based column index (as a
/// decimal string). Rows whose label equals positive_label map to +1, all
/// others to -1. A header row is auto-detected: if any feature cell of the
/// first row is non-numeric (and not "?"), the row is a header.
LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::string& positive_label, MissingPolicy missing_policy);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct Split {
    LabeledDataset train;
    LabeledDataset test;
    std::vector<Eigen::Index> train_rows; // original indices, ascending
    std::vector<Eigen::Index> test_rows;
};

/// Deterministic seeded split. Stratified mode allocates per-class training
/// counts by largest remainder so the total equals round(fraction * n) and
/// each class ratio is preserved within one element.
Split split(const LabeledDataset& ds, const SplitSpec& spec);

struct Standardizer {
    Vec mean;
    Vec scale; // 1 for zero-variance features

    Mat apply(const Mat& X) const;
    Mat invert(const Mat& X) const;
};

// Fits per-feature mean/scale on train (population variance) and transforms
// both sets with the train statistics. Zero-variance features are centered
// only.
Standardizer standardize(LabeledDataset& train, LabeledDataset& test);

} // namespace munk

#endif
