#ifndef MUNK_SVG_HPP
#define MUNK_SVG_HPP

#include <string>
#include <vector>

#include "munk/solver.hpp"

namespace munk {

struct SvgTrace {
    std::string label;
    std::vector<std::int64_t> iters;
    std::vector<double> objectives;
};

SvgTrace to_svg_trace(const ConvergenceTrace& trace, std::string label);

/// Renders objective-vs-iteration curves as a standalone SVG: log10 iteration
/// axis (records at iteration 0 are dropped), linear objective axis, one
/// polyline per trace, legend top right. The output bytes are a pure function
/// of the inputs.
std::string render_convergence_svg(const std::vector<SvgTrace>& traces);

void render_convergence_svg(const std::vector<SvgTrace>& traces, const std::string& path,
                            const std::string& config_echo);

} // namespace munk

#endif
