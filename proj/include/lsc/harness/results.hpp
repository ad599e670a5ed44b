#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "lsc/train/record.hpp"

namespace lsc {

// Reads every record of a JSONL file; blank lines are skipped. Throws
// ParseError with file:line on a malformed line.
std::vector<ExperimentRecord> read_records(const std::filesystem::path& file);

// Append-only JSONL writer. With `resume`, records already in the file are
// loaded and can be looked up by cell key; otherwise the file is truncated.
class ResultLog {
 public:
  ResultLog(std::filesystem::path file, bool resume);

  // Completed record for a cell key, or nullptr.
  const ExperimentRecord* find(const std::string& key) const;
  // Writes and flushes one line.
  void append(const ExperimentRecord& r);

  const std::filesystem::path& path() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  std::ofstream out_;
  std::map<std::string, ExperimentRecord> done_;
};

}  // namespace lsc
