#pragma once

#include <span>
#include <string>
#include <vector>

#include "lsc/train/record.hpp"

namespace lsc {

// Rows are (target_ratio, dataset, variant), columns perturbation rates,
// cells mean±std (in percent) of the test metric of "selected" records over
// seeds. Cells without records hold "—".
struct ResultTable {
  struct Row {
    double target_ratio = 0.0;
    std::string dataset;
    std::string variant;
    std::vector<std::string> cells;
  };
  std::vector<double> rates;
  std::vector<Row> rows;
};

ResultTable build_table(std::span<const ExperimentRecord> records);

// "80.00±14.14"; sample std, 0 for a single value.
std::string format_cell(std::span<const double> values);

std::string render_text(const ResultTable& t);
std::string render_csv(const ResultTable& t);

}  // namespace lsc
