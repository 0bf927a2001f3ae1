#ifndef MUNK_IO_HPP
#define MUNK_IO_HPP

#include <string>
#include <vector>

#include "munk/analysis.hpp"
#include "munk/kernels.hpp"
#include "munk/solver.hpp"

namespace munk {

// Full-precision decimal text for a double (17 significant digits).
std::string fmt17(double v);

// Output files all begin with "# <name> v1" and "# config: <echo>" comment
// lines, then the exact column header. Readers skip '#' lines.

// Header: iter,objective,kkt_violation,n_support,elapsed_s
void write_trace_csv(const ConvergenceTrace& trace, const std::string& path,
                     const std::string& config_echo);

// Header: iter,objective_munk,objective_m3. Rows are the union of recorded
// iterations; a trace that stopped earlier repeats its final objective.
void write_compare_csv(const ConvergenceTrace& munk_trace, const ConvergenceTrace& m3_trace,
                       const std::string& path, const std::string& config_echo);

// Header: index,class,alpha_star,d_i,l_i,gamma_munk_bound,gamma_m3_bound,
//         gamma_munk_measured,gamma_m3_measured
// The index column is 1-based over the class-concatenated training order.
void write_rate_report_csv(const RateBoundReport& report, const std::string& path,
                           const std::string& config_echo);

// Header: iter,frobenius_objective
void write_nmf_trace_csv(const std::vector<double>& objectives, const std::string& path,
                         const std::string& config_echo);

// Plain numeric CSV (no header) for NMF factor output and input.
void write_matrix_csv(const Mat& M, const std::string& path, const std::string& config_echo);
Mat read_matrix_csv(const std::string& path);

} // namespace munk

#endif
