#pragma once

#include <string>
#include <vector>

namespace fairalloc::experiment {

/// Turns a run directory into one columnar file per figure panel:
/// regret_vs_T.csv, unfairness_vs_T.csv and acceptance_type_<j>.csv
/// (j = 1..n). Each file opens with a '#' line naming its columns.
/// Throws MissingInput when summary.csv is absent, IoError on write failure.
/// Returns the paths written.
std::vector<std::string> emit_plot_data(const std::string& in_dir, const std::string& out_dir);

}  // namespace fairalloc::experiment
