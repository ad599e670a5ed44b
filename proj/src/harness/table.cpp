#include "lsc/harness/table.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "lsc/eval/metrics.hpp"

namespace lsc {
namespace {

constexpr const char* kMissing = "—";

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

// Display width in code points (cells contain the multi-byte "±" and "—").
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::vector<std::vector<std::string>> as_grid(const ResultTable& t) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"target_ratio", "dataset", "variant"};
  for (const double r : t.rates) {
    header.push_back(format_number(r));
  }
  grid.push_back(std::move(header));
  for (const auto& row : t.rows) {
    std::vector<std::string> line{format_number(row.target_ratio), row.dataset, row.variant};
    line.insert(line.end(), row.cells.begin(), row.cells.end());
    grid.push_back(std::move(line));
  }
  return grid;
}

}  // namespace

std::string format_cell(std::span<const double> values) {
  if (values.empty()) {
    return kMissing;
  }
  const MeanStd s = aggregate(values);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f±%.2f", 100.0 * s.mean, 100.0 * s.std);
  return buf;
}

ResultTable build_table(std::span<const ExperimentRecord> records) {
  using RowKey = std::tuple<double, std::string, std::string>;
  // Latest record per (row, rate, seed), so resumed logs do not double count.
  std::map<RowKey, std::map<double, std::map<std::uint64_t, double>>> cells;
  std::vector<double> rates;
  for (const auto& r : records) {
    if (r.kind != RecordKind::kSelected) {
      continue;
    }
    cells[{r.target_ratio, r.dataset, r.variant}][r.perturb_rate][r.seed] = r.test_metric;
    rates.push_back(r.perturb_rate);
  }
  std::sort(rates.begin(), rates.end());
  rates.erase(std::unique(rates.begin(), rates.end()), rates.end());

  ResultTable t;
  t.rates = rates;
  for (const auto& [key, by_rate] : cells) {
    ResultTable::Row row{std::get<0>(key), std::get<1>(key), std::get<2>(key), {}};
    for (const double rate : rates) {
      std::vector<double> values;
      if (const auto it = by_rate.find(rate); it != by_rate.end()) {
        for (const auto& [seed, v] : it->second) {
          values.push_back(v);
        }
      }
      row.cells.push_back(format_cell(values));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render_text(const ResultTable& t) {
  const auto grid = as_grid(t);
  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& line : grid) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      width[j] = std::max(width[j], display_width(line[j]));
    }
  }
  std::ostringstream out;
  for (const auto& line : grid) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (j > 0) {
        out << "  ";
      }
      out << line[j];
      if (j + 1 < line.size()) {
        out << std::string(width[j] - display_width(line[j]), ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const ResultTable& t) {
  std::ostringstream out;
  for (const auto& line : as_grid(t)) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (j > 0) {
        out << ',';
      }
      const bool quote = line[j].find_first_of(",\"\n") != std::string::npos;
      if (quote) {
        out << '"';
        for (const char c : line[j]) {
          out << (c == '"' ? "\"\"" : std::string(1, c));
        }
        out << '"';
      } else {
        out << line[j];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lsc
