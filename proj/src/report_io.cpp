#include "corrbeta/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace corrbeta {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string cell_text(double v) { return format_fixed(round_half_up(v, 3), 3); }

}  // namespace

std::string grid_to_text(const EfficiencyGrid& grid) {
  constexpr std::size_t kWidth = 7;
  std::ostringstream os;
  os << "Efficiency with Johnk's method, c1=c3, r=" << format_fixed(grid.r, 2) << '\n';
  os << pad_left("c1 \\ c2", 8) << " |";
  for (double c2 : grid.c2_values) os << pad_left(format_fixed(c2, 2), kWidth);
  os << '\n' << std::string(9, '-') << '+' << std::string(kWidth * grid.c2_values.size(), '-')
     << '\n';
  for (Eigen::Index i = 0; i < grid.cells.rows(); ++i) {
    os << pad_left(format_fixed(grid.c1_values[static_cast<std::size_t>(i)], 2), 8) << " |";
    for (Eigen::Index j = 0; j < grid.cells.cols(); ++j) {
      os << pad_left(cell_text(grid.cells(i, j)), kWidth);
    }
    os << '\n';
  }
  return os.str();
}

std::string grid_to_csv(const EfficiencyGrid& grid) {
  std::ostringstream os;
  os << "c1\\c2";
  for (double c2 : grid.c2_values) os << ',' << format_number(c2);
  os << '\n';
  for (Eigen::Index i = 0; i < grid.cells.rows(); ++i) {
    os << format_number(grid.c1_values[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < grid.cells.cols(); ++j) os << ',' << cell_text(grid.cells(i, j));
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json grid_to_json(const EfficiencyGrid& grid) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  nlohmann::ordered_json rounded = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < grid.cells.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    nlohmann::ordered_json row_rounded = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < grid.cells.cols(); ++j) {
      row.push_back(grid.cells(i, j));
      row_rounded.push_back(round_half_up(grid.cells(i, j), 3));
    }
    cells.push_back(std::move(row));
    rounded.push_back(std::move(row_rounded));
  }
  return {{"r", grid.r},
          {"constraint", EfficiencyGrid::constraint_tag},
          {"c1_values", grid.c1_values},
          {"c2_values", grid.c2_values},
          {"cells", std::move(cells)},
          {"cells_rounded", std::move(rounded)}};
}

nlohmann::ordered_json to_json(const DirichletAlphas<>& alphas) {
  return {{"a0", alphas.a0()},
          {"a1", alphas.a1()},
          {"a2", alphas.a2()},
          {"a3", alphas.a3()},
          {"gamma_sum", alphas.gamma_sum()}};
}

nlohmann::ordered_json to_json(const FeasibilityReport<>& report) {
  // NaN margins (c4 <= 0) serialize as null.
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json violated = nlohmann::ordered_json::array();
  for (Restriction r : report.violated) violated.push_back(to_string(r));
  return {{"feasible", report.feasible},
          {"alpha3", num(report.alpha3)},
          {"margins",
           {{"alpha1", num(report.margins.alpha1)},
            {"alpha2", num(report.margins.alpha2)},
            {"alpha0", num(report.margins.alpha0)},
            {"alpha3", num(report.margins.alpha3)}}},
          {"violated", std::move(violated)},
          {"special_case", to_string(report.special_case)}};
}

nlohmann::ordered_json to_json(const ValidationReport& rep) {
  const ToleranceSpec& t = rep.tolerance_spec;
  return {{"n", rep.n},
          {"mean_y1", rep.mean_y1},
          {"mean_y2", rep.mean_y2},
          {"var_y1", rep.var_y1},
          {"var_y2", rep.var_y2},
          {"corr", rep.corr},
          {"expected_mean_y1", rep.expected_mean_y1},
          {"expected_mean_y2", rep.expected_mean_y2},
          {"expected_var_y1", rep.expected_var_y1},
          {"expected_var_y2", rep.expected_var_y2},
          {"expected_corr", rep.expected_corr},
          {"ks_y1", rep.ks_y1},
          {"ks_y2", rep.ks_y2},
          {"pass", rep.pass},
          {"tolerance_spec",
           {{"sigmas", t.sigmas},
            {"mean_y1", t.mean_y1},
            {"mean_y2", t.mean_y2},
            {"var_y1", t.var_y1},
            {"var_y2", t.var_y2},
            {"corr", t.corr},
            {"ks", t.ks}}}};
}

nlohmann::ordered_json to_json(const JohnkStats& stats) {
  return {{"attempts", stats.attempts},
          {"accepts", stats.accepts},
          {"acceptance_rate", stats.acceptance_rate()}};
}

void write_pairs_csv(std::ostream& os, const SampleBatch& batch) {
  os << "y1,y2\n";
  std::string line;
  for (Eigen::Index i = 0; i < batch.pairs.rows(); ++i) {
    line = format_number(batch.pairs(i, 0));
    line += ',';
    line += format_number(batch.pairs(i, 1));
    line += '\n';
    os << line;
  }
}

nlohmann::ordered_json to_json(const SampleBatch& batch) {
  std::vector<double> y1(batch.size());
  std::vector<double> y2(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const SamplePair p = batch[i];
    y1[i] = p.y1;
    y2[i] = p.y2;
  }
  nlohmann::ordered_json j = {{"seed", batch.seed},
                      {"stream", batch.stream_id},
                      {"method", to_string(batch.method)},
                      {"y1", std::move(y1)},
                      {"y2", std::move(y2)}};
  if (batch.johnk) j["johnk"] = to_json(*batch.johnk);
  return j;
}

}  // namespace corrbeta
