#include "munk/kernels.hpp"

#include <cmath>
#include <sstream>

#include "munk/errors.hpp"

namespace munk {

void KernelSpec::validate() const {
    switch (family) {
    case KernelFamily::gaussian:
        if (!(sigma > 0.0))
            throw ConfigError("gaussian kernel requires sigma > 0");
        break;
    case KernelFamily::polynomial_even:
        if (degree < 2 || degree % 2 != 0)
            throw ConfigError("polynomial kernel requires even degree >= 2");
        if (coef0 < 0.0)
            throw ConfigError("polynomial kernel requires coef0 >= 0");
        break;
    case KernelFamily::linear_nonneg:
        break;
    }
    if (offset < 0.0)
        throw ConfigError("kernel offset must be >= 0");
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::string KernelSpec::to_tokens() const {
    std::string s;
    switch (family) {
    case KernelFamily::gaussian:
        s = "family=gaussian sigma=" + fmt_g(sigma);
        break;
    case KernelFamily::polynomial_even:
        s = "family=polynomial_even degree=" + std::to_string(degree) + " coef0=" + fmt_g(coef0);
        break;
    case KernelFamily::linear_nonneg:
        s = "family=linear_nonneg";
        break;
    }
    if (offset > 0.0)
        s += " offset=" + fmt_g(offset);
    return s;
}

KernelSpec KernelSpec::from_tokens(const std::string& tokens) {
    KernelSpec spec;
    bool have_family = false;
    std::istringstream in(tokens);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad kernel token (expected key=value): " + tok);
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "family") {
            have_family = true;
            if (val == "gaussian")
                spec.family = KernelFamily::gaussian;
            else if (val == "polynomial_even")
                spec.family = KernelFamily::polynomial_even;
            else if (val == "linear_nonneg")
                spec.family = KernelFamily::linear_nonneg;
            else
                throw ConfigError("unknown kernel family: " + val);
        } else if (key == "sigma") {
            spec.sigma = std::stod(val);
        } else if (key == "degree") {
            spec.degree = std::stoi(val);
        } else if (key == "coef0") {
            spec.coef0 = std::stod(val);
        } else if (key == "offset") {
            spec.offset = std::stod(val);
        } else {
            throw ConfigError("unknown kernel token: " + key);
        }
    }
    if (!have_family)
        throw ConfigError("kernel spec missing family token");
    spec.validate();
    return spec;
}

double eval_kernel(const KernelSpec& spec, const Vec& x, const Vec& y) {
    spec.validate();
    if (x.size() != y.size())
        throw InputError("eval_kernel: dimension mismatch");
    double v = 0.0;
    switch (spec.family) {
    case KernelFamily::gaussian:
        v = std::exp(-(x - y).squaredNorm() / (2.0 * spec.sigma * spec.sigma));
        break;
    case KernelFamily::polynomial_even:
        v = std::pow(x.dot(y) + spec.coef0, spec.degree);
        break;
    case KernelFamily::linear_nonneg:
        v = x.dot(y);
        break;
    }
    return v + spec.offset;
}

Mat gram(const KernelSpec& spec, const Mat& X, const Mat& Y) {
    spec.validate();
    if (X.rows() != Y.rows())
        throw InputError("gram: feature dimensions differ");
    Mat K(X.cols(), Y.cols());
    for (Eigen::Index j = 0; j < Y.cols(); ++j)
        for (Eigen::Index i = 0; i < X.cols(); ++i)
            K(i, j) = eval_kernel(spec, X.col(i), Y.col(j));
    return K;
}

double GramBlocks::min_entry() const {
    double m = aa.minCoeff();
    if (ab.size() > 0)
        m = std::min(m, ab.minCoeff());
    return std::min(m, bb.minCoeff());
}

namespace {

void check_symmetric(const Mat& K, const char* name) {
    const double scale = 1.0 + K.cwiseAbs().maxCoeff();
    if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError(std::string("gram_blocks: ") + name + " not symmetric");
}

} // namespace

GramBlocks gram_blocks(const KernelSpec& spec, const Mat& X_A, const Mat& X_B) {
    if (X_A.cols() == 0 || X_B.cols() == 0)
        throw InputError("gram_blocks: both classes must be non-empty");
    if (X_A.rows() != X_B.rows())
        throw InputError("gram_blocks: feature dimensions differ");
    GramBlocks g{gram(spec, X_A, X_A), gram(spec, X_A, X_B), gram(spec, X_B, X_B)};
    check_symmetric(g.aa, "K_AA");
    check_symmetric(g.bb, "K_BB");
    return g;
}

NonnegReport validate_nonneg(const KernelSpec& spec, const std::vector<Vec>& sample_points) {
    if (sample_points.size() < 2)
        throw InputError("validate_nonneg: need at least 2 sample points");
    NonnegReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sample_points.size(); ++i) {
        for (std::size_t j = i; j < sample_points.size(); ++j) {
            double v = eval_kernel(spec, sample_points[i], sample_points[j]);
            if (v < rep.min_value) {
                rep.min_value = v;
                rep.arg_i = static_cast<Eigen::Index>(i);
                rep.arg_j = static_cast<Eigen::Index>(j);
            }
        }
    }
    rep.passed = rep.min_value >= 0.0;
    return rep;
}

} // namespace munk
