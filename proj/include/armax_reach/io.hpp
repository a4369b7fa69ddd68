#ifndef ARMAX_REACH_IO_HPP_
#define ARMAX_REACH_IO_HPP_

#include <string>
#include <vector>

#include "armax_reach/bench.hpp"
#include "armax_reach/experiment.hpp"

namespace armax_reach {

/// Reach CSV, columns exactly `method,k,dim,lower,upper`, rows sorted by
/// (method, k, dim). Identical config and seed give byte-identical output.
std::string reach_csv(const std::vector<MethodRun>& runs);

/// Containment CSV, columns `method,k,fraction`; only runs with a report.
std::string containment_csv(const std::vector<MethodRun>& runs);

/// Bench CSV, columns exactly `method,f_k,f_n,p,median_s,slope_axis,slope`.
std::string bench_csv(const std::vector<BenchRecord>& records);

/// Per-step SVG of the 2-D projected polygons of every method, with sampled
/// outputs overlaid when available. Returns the file names written.
std::vector<std::string> write_reach_svgs(const std::string& dir,
                                          const ExperimentOutputs& outputs,
                                          const std::array<Eigen::Index, 2>& dims);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace armax_reach

#endif  // ARMAX_REACH_IO_HPP_
