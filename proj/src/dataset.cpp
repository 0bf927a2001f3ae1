#include "munk/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "munk/errors.hpp"
#include "munk/rng.hpp"

namespace munk {

Mat LabeledDataset::class_matrix(int label) const {
    const auto& idx = label > 0 ? idx_pos : idx_neg;
    Mat M(X.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
        M.col(static_cast<Eigen::Index>(k)) = X.col(idx[k]);
    return M;
}

void LabeledDataset::reindex() {
    if (y.size() != X.cols())
        throw InputError("dataset: label count does not match column count");
    idx_pos.clear();
    idx_neg.clear();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] == 1)
            idx_pos.push_back(i);
        else if (y[i] == -1)
            idx_neg.push_back(i);
        else
            throw InputError("dataset: labels must be +1 or -1");
    }
}

LabeledDataset make_dataset(Mat X, Eigen::VectorXi y) {
    LabeledDataset ds;
    ds.X = std::move(X);
    ds.y = std::move(y);
    ds.reindex();
    return ds;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool parse_index(const std::string& s, std::size_t& out) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        return false;
    out = static_cast<std::size_t>(std::stoull(s));
    return true;
}

} // namespace

LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::string& positive_label, MissingPolicy missing_policy) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty())
            continue;
        auto cells = split_csv_line(line);
        for (auto& c : cells)
            c = trim(c);
        rows.push_back(std::move(cells));
    }
    if (rows.empty())
        throw IoError(path + ": empty file");

    const std::size_t ncols = rows[0].size();
    if (ncols < 2)
        throw IoError(path + ": need at least one feature column and a label column");
    for (const auto& r : rows)
        if (r.size() != ncols)
            throw IoError(path + ": ragged rows");

    std::size_t label_idx = 0;
    bool label_is_name = !parse_index(label_column, label_idx);

    // Header detection: a named label column demands a header; otherwise the
    // first row is a header iff some feature cell is neither numeric nor "?".
    bool has_header = false;
    if (label_is_name) {
        auto it = std::find(rows[0].begin(), rows[0].end(), label_column);
        if (it == rows[0].end())
            throw IoError(path + ": label column '" + label_column + "' not in header");
        label_idx = static_cast<std::size_t>(it - rows[0].begin());
        has_header = true;
    } else {
        if (label_idx >= ncols)
            throw IoError(path + ": label column index out of range");
        double tmp;
        for (std::size_t c = 0; c < ncols; ++c)
            if (c != label_idx && rows[0][c] != "?" && !parse_number(rows[0][c], tmp))
                has_header = true;
    }

    const std::size_t first_data = has_header ? 1 : 0;
    const std::size_t nfeat = ncols - 1;

    std::vector<std::vector<double>> feats;
    std::vector<int> labels;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        bool missing = false;
        std::vector<double> fr(nfeat);
        std::size_t fi = 0;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (c == label_idx)
                continue;
            if (rows[r][c] == "?") {
                missing = true;
                break;
            }
            if (!parse_number(rows[r][c], fr[fi]))
                throw IoError(path + ": non-numeric feature cell '" + rows[r][c] + "' at row " +
                              std::to_string(r + 1));
            ++fi;
        }
        if (missing) {
            if (missing_policy == MissingPolicy::error)
                throw InputError(path + ": missing value at row " + std::to_string(r + 1));
            continue;
        }
        feats.push_back(std::move(fr));
        labels.push_back(rows[r][label_idx] == positive_label ? 1 : -1);
    }
    if (feats.empty())
        throw InputError(path + ": no usable rows after filtering");

    Mat X(static_cast<Eigen::Index>(nfeat), static_cast<Eigen::Index>(feats.size()));
    Eigen::VectorXi y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < feats.size(); ++i) {
        for (std::size_t f = 0; f < nfeat; ++f)
            X(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) = feats[i][f];
        y[static_cast<Eigen::Index>(i)] = labels[i];
    }

    LabeledDataset ds = make_dataset(std::move(X), std::move(y));
    if (ds.idx_pos.empty() || ds.idx_neg.empty())
        throw InputError(path + ": single-class data (check --positive-label)");
    return ds;
}

namespace {

LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<Eigen::Index>& rows) {
    Mat X(ds.dim(), static_cast<Eigen::Index>(rows.size()));
    Eigen::VectorXi y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        X.col(static_cast<Eigen::Index>(k)) = ds.X.col(rows[k]);
        y[static_cast<Eigen::Index>(k)] = ds.y[rows[k]];
    }
    LabeledDataset out;
    out.X = std::move(X);
    out.y = std::move(y);
    out.reindex();
    return out;
}

} // namespace

Split split(const LabeledDataset& ds, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw ConfigError("split: train_fraction must lie in (0,1)");

    SplitMix64 rng(spec.seed);
    std::vector<Eigen::Index> train_rows, test_rows;

    if (spec.stratified) {
        if (ds.idx_pos.size() < 2 || ds.idx_neg.size() < 2)
            throw InputError("split: stratified split needs >= 2 members per class");
        // Largest-remainder allocation: total train size equals
        // round(fraction*n); per-class counts are within one of proportional.
        const double f = spec.train_fraction;
        const auto n = static_cast<double>(ds.n());
        const auto target = static_cast<std::size_t>(std::llround(f * n));
        std::array<const std::vector<Eigen::Index>*, 2> classes = {&ds.idx_pos, &ds.idx_neg};
        std::array<std::size_t, 2> want{};
        std::array<double, 2> frac{};
        std::size_t got = 0;
        for (int c = 0; c < 2; ++c) {
            double exact = f * static_cast<double>(classes[c]->size());
            want[c] = static_cast<std::size_t>(std::floor(exact));
            frac[c] = exact - std::floor(exact);
            got += want[c];
        }
        while (got < target) {
            int c = frac[0] >= frac[1] ? 0 : 1;
            want[c] += 1;
            frac[c] = -1.0;
            ++got;
        }
        for (int c = 0; c < 2; ++c) {
            auto ids = *classes[c];
            shuffle(ids, rng);
            if (want[c] == 0 || want[c] >= ids.size())
                throw InputError("split: a class would be empty in train or test");
            train_rows.insert(train_rows.end(), ids.begin(),
                              ids.begin() + static_cast<std::ptrdiff_t>(want[c]));
            test_rows.insert(test_rows.end(), ids.begin() + static_cast<std::ptrdiff_t>(want[c]),
                             ids.end());
        }
    } else {
        std::vector<Eigen::Index> ids(static_cast<std::size_t>(ds.n()));
        for (std::size_t i = 0; i < ids.size(); ++i)
            ids[i] = static_cast<Eigen::Index>(i);
        shuffle(ids, rng);
        auto k = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(ds.n())));
        if (k == 0 || k >= ids.size())
            throw InputError("split: degenerate train size");
        train_rows.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
        test_rows.assign(ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end());
    }

    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());

    Split s;
    s.train = take_rows(ds, train_rows);
    s.test = take_rows(ds, test_rows);
    s.train_rows = std::move(train_rows);
    s.test_rows = std::move(test_rows);
    if (s.train.idx_pos.empty() || s.train.idx_neg.empty())
        throw InputError("split: a class is empty in the training set");
    return s;
}

Mat Standardizer::apply(const Mat& X) const {
    return (X.colwise() - mean).array().colwise() / scale.array();
}

Mat Standardizer::invert(const Mat& X) const {
    return (X.array().colwise() * scale.array()).colwise() + mean.array();
}

Standardizer standardize(LabeledDataset& train, LabeledDataset& test) {
    if (train.n() == 0)
        throw InputError("standardize: empty training set");
    Standardizer st;
    st.mean = train.X.rowwise().mean();
    Mat centered = train.X.colwise() - st.mean;
    Vec var = centered.array().square().rowwise().mean();
    st.scale = var.array().sqrt();
    for (Eigen::Index i = 0; i < st.scale.size(); ++i)
        if (st.scale[i] == 0.0)
            st.scale[i] = 1.0;
    train.X = st.apply(train.X);
    if (test.n() > 0)
        test.X = st.apply(test.X);
    return st;
}

} // namespace munk
