#include "munk/model.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "munk/errors.hpp"

namespace munk {

double decision(const TrainedModel& m, const Vec& x) {
    if (x.size() != m.dim())
        throw InputError("decision: feature dimension mismatch");
    double f = 0.0;
    for (Eigen::Index i = 0; i < m.n_support(); ++i)
        f += m.support_alpha[i] * m.support_y[i] * eval_kernel(m.kernel, m.support_X.col(i), x);
    return f;
}

Vec decision_many(const TrainedModel& m, const Mat& X) {
    if (X.rows() != m.dim())
        throw InputError("decision: feature dimension mismatch");
    const Mat K = gram(m.kernel, X, m.support_X); // n x s
    return K * (m.support_alpha.cwiseProduct(m.support_y));
}

Eigen::VectorXi predict(const TrainedModel& m, const Mat& X) {
    const Vec f = decision_many(m, X);
    Eigen::VectorXi labels(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i)
        labels[i] = f[i] >= 0.0 ? 1 : -1; // ties break to +1
    return labels;
}

double misclassification_rate(const TrainedModel& m, const LabeledDataset& test) {
    if (test.n() == 0)
        throw InputError("misclassification_rate: empty test set");
    const Eigen::VectorXi pred = predict(m, test.X);
    Eigen::Index wrong = 0;
    for (Eigen::Index i = 0; i < test.n(); ++i)
        wrong += pred[i] != test.y[i];
    return static_cast<double>(wrong) / static_cast<double>(test.n());
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void save(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << "munk-model v1\n";
    out << m.kernel.to_tokens() << "\n";
    out << "meta algo=" << m.meta.algo << " iterations=" << m.meta.iterations
        << " objective=" << fmt17(m.meta.objective)
        << " kkt=" << fmt17(m.meta.kkt_residual)
        << " converged=" << (m.meta.converged ? 1 : 0)
        << " support_threshold=" << fmt17(m.support_threshold)
        << " dim=" << m.dim() << " n_support=" << m.n_support() << "\n";
    for (Eigen::Index i = 0; i < m.n_support(); ++i) {
        out << fmt17(m.support_alpha[i]) << ' ' << (m.support_y[i] > 0 ? 1 : -1);
        for (Eigen::Index f = 0; f < m.dim(); ++f)
            out << ' ' << fmt17(m.support_X(f, i));
        out << '\n';
    }
    if (!out)
        throw IoError("write failed for " + path);
}

TrainedModel load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "munk-model v1")
        throw IoError(path + ": not a munk-model v1 file");

    TrainedModel m;
    if (!std::getline(in, line))
        throw IoError(path + ": truncated (missing kernel line)");
    m.kernel = KernelSpec::from_tokens(line);

    if (!std::getline(in, line))
        throw IoError(path + ": truncated (missing meta line)");
    Eigen::Index dim = -1, n_support = -1;
    {
        std::istringstream meta(line);
        std::string tok;
        meta >> tok;
        if (tok != "meta")
            throw IoError(path + ": malformed meta line");
        while (meta >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw IoError(path + ": malformed meta token " + tok);
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "algo")
                m.meta.algo = val;
            else if (key == "iterations")
                m.meta.iterations = std::stoll(val);
            else if (key == "objective")
                m.meta.objective = std::stod(val);
            else if (key == "kkt")
                m.meta.kkt_residual = std::stod(val);
            else if (key == "converged")
                m.meta.converged = val == "1";
            else if (key == "support_threshold")
                m.support_threshold = std::stod(val);
            else if (key == "dim")
                dim = std::stoll(val);
            else if (key == "n_support")
                n_support = std::stoll(val);
            else
                throw IoError(path + ": unknown meta key " + key);
        }
    }
    if (dim < 0 || n_support < 0)
        throw IoError(path + ": meta line missing dim or n_support");

    m.support_X.resize(dim, n_support);
    m.support_alpha.resize(n_support);
    m.support_y.resize(n_support);
    for (Eigen::Index i = 0; i < n_support; ++i) {
        if (!std::getline(in, line))
            throw IoError(path + ": truncated (expected " + std::to_string(n_support) +
                          " support vectors)");
        std::istringstream row(line);
        double alpha, y;
        if (!(row >> alpha >> y) || (y != 1 && y != -1) || !(alpha > 0))
            throw IoError(path + ": malformed support vector line " + std::to_string(i + 1));
        m.support_alpha[i] = alpha;
        m.support_y[i] = y;
        for (Eigen::Index f = 0; f < dim; ++f)
            if (!(row >> m.support_X(f, i)))
                throw IoError(path + ": short support vector line " + std::to_string(i + 1));
        double extra;
        if (row >> extra)
            throw IoError(path + ": overlong support vector line " + std::to_string(i + 1));
    }
    return m;
}

} // namespace munk
