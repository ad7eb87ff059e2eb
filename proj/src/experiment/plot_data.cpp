#include "fairalloc/experiment/plot_data.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairalloc/errors.hpp"
#include "fairalloc/experiment/runner.hpp"

namespace fairalloc::experiment {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path, std::vector<std::string>& written) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  written.push_back(path.string());
}

}  // namespace

std::vector<std::string> emit_plot_data(const std::string& in_dir, const std::string& out_dir) {
  const fs::path in(in_dir);
  const auto rows = read_summary((in / "summary.csv").string());
  if (rows.empty()) throw MissingInput("'" + (in / "summary.csv").string() + "' has no rows");
  const auto cells = aggregate_rows(rows);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
  const fs::path out(out_dir);
  std::vector<std::string> written;

  {
    const fs::path path = out / "regret_vs_T.csv";
    auto f = open_out(path);
    f << "# env,policy,T,trials,mean_regret,se_regret  (one curve per env/policy; x = T)\n";
    for (const auto& c : cells) {
      f << c.env << ',' << c.policy << ',' << c.horizon << ',' << c.trials << ',' << format_number(c.mean_regret)
        << ',' << format_number(c.se_regret) << "\n";
    }
    finish(f, path, written);
  }
  {
    const fs::path path = out / "unfairness_vs_T.csv";
    auto f = open_out(path);
    f << "# env,policy,T,trials,mean_cumulative_unfairness,se_cumulative_unfairness  (one curve per env/policy; x = T)\n";
    for (const auto& c : cells) {
      f << c.env << ',' << c.policy << ',' << c.horizon << ',' << c.trials << ','
        << format_number(c.mean_cumulative_unfairness) << ',' << format_number(c.se_cumulative_unfairness) << "\n";
    }
    finish(f, path, written);
  }

  const fs::path acceptance = in / "acceptance.csv";
  if (!fs::exists(acceptance)) return written;
  std::ifstream a(acceptance, std::ios::binary);
  if (!a) throw IoError("cannot read '" + acceptance.string() + "'");
  std::string line;
  if (!std::getline(a, line)) throw MissingInput("'" + acceptance.string() + "' is empty");
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = line.find(",mean_y_", pos)) != std::string::npos; ++pos) ++n;

  std::vector<std::ofstream> files;
  std::vector<fs::path> paths;
  for (std::size_t j = 1; j <= n; ++j) {
    paths.push_back(out / ("acceptance_type_" + std::to_string(j) + ".csv"));
    files.push_back(open_out(paths.back()));
    files.back() << "# env,policy,T,t,mean_y  (trial-mean acceptance probability of type " << j
                 << " at period t; one curve per env/policy/T)\n";
  }
  while (std::getline(a, line)) {
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) parts.push_back(cell);
    if (parts.size() != 4 + n) throw IoError("'" + acceptance.string() + "': ragged row");
    const std::string key = parts[0] + ',' + parts[1] + ',' + parts[2] + ',' + parts[3];
    for (std::size_t j = 0; j < n; ++j) files[j] << key << ',' << parts[4 + j] << "\n";
  }
  for (std::size_t j = 0; j < n; ++j) finish(files[j], paths[j], written);
  return written;
}

}  // namespace fairalloc::experiment
