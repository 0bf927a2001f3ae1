#include "munk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "munk/errors.hpp"

namespace munk {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    return out;
}

void preamble(std::ofstream& out, const char* name, const std::string& config_echo) {
    out << "# " << name << " v1\n";
    if (!config_echo.empty())
        out << "# config: " << config_echo << "\n";
}

} // namespace

void write_trace_csv(const ConvergenceTrace& trace, const std::string& path,
                     const std::string& config_echo) {
    auto out = open_out(path);
    preamble(out, "munk-trace", config_echo);
    out << "iter,objective,kkt_violation,n_support,elapsed_s\n";
    for (const auto& r : trace.records)
        out << r.iter << ',' << fmt17(r.objective) << ',' << fmt17(r.kkt_violation) << ','
            << r.n_support << ',' << fmt17(r.elapsed_s) << '\n';
    if (!out)
        throw IoError("write failed for " + path);
}

void write_compare_csv(const ConvergenceTrace& munk_trace, const ConvergenceTrace& m3_trace,
                       const std::string& path, const std::string& config_echo) {
    auto out = open_out(path);
    preamble(out, "munk-compare", config_echo);
    out << "iter,objective_munk,objective_m3\n";
    const auto& a = munk_trace.records;
    const auto& b = m3_trace.records;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const std::int64_t ia = i < a.size() ? a[i].iter : b[j].iter;
        const std::int64_t ib = j < b.size() ? b[j].iter : a[i].iter;
        const std::int64_t iter = std::min(ia, ib);
        const double va = i < a.size() ? a[i].objective : a.back().objective;
        const double vb = j < b.size() ? b[j].objective : b.back().objective;
        out << iter << ',' << fmt17(va) << ',' << fmt17(vb) << '\n';
        if (i < a.size() && a[i].iter == iter)
            ++i;
        if (j < b.size() && b[j].iter == iter)
            ++j;
    }
    if (!out)
        throw IoError("write failed for " + path);
}

void write_rate_report_csv(const RateBoundReport& report, const std::string& path,
                           const std::string& config_echo) {
    auto out = open_out(path);
    preamble(out, "munk-rate-report", config_echo);
    out << "index,class,alpha_star,d_i,l_i,gamma_munk_bound,gamma_m3_bound,"
           "gamma_munk_measured,gamma_m3_measured\n";
    for (const auto& r : report.rows)
        out << (r.index + 1) << ',' << r.cls << ',' << fmt17(r.alpha_star) << ','
            << fmt17(r.d_i) << ',' << fmt17(r.l_i) << ',' << fmt17(r.gamma_munk_bound) << ','
            << fmt17(r.gamma_m3_bound) << ',' << fmt17(r.gamma_munk_measured) << ','
            << fmt17(r.gamma_m3_measured) << '\n';
    if (!out)
        throw IoError("write failed for " + path);
}

void write_nmf_trace_csv(const std::vector<double>& objectives, const std::string& path,
                         const std::string& config_echo) {
    auto out = open_out(path);
    preamble(out, "munk-nmf-trace", config_echo);
    out << "iter,frobenius_objective\n";
    for (std::size_t t = 0; t < objectives.size(); ++t)
        out << t << ',' << fmt17(objectives[t]) << '\n';
    if (!out)
        throw IoError("write failed for " + path);
}

void write_matrix_csv(const Mat& M, const std::string& path, const std::string& config_echo) {
    auto out = open_out(path);
    preamble(out, "munk-matrix", config_echo);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            if (j)
                out << ',';
            out << fmt17(M(i, j));
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed for " + path);
}

Mat read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw IoError(path + ": non-numeric cell '" + cell + "'");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError(path + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw IoError(path + ": no numeric rows");
    Mat M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return M;
}

} // namespace munk
