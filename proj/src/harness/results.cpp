#include "lsc/harness/results.hpp"

#include "lsc/core/error.hpp"

namespace lsc {

std::vector<ExperimentRecord> read_records(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open results file " + file.string());
  }
  std::vector<ExperimentRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      out.push_back(record_from_json(line));
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

ResultLog::ResultLog(std::filesystem::path file, bool resume) : file_(std::move(file)) {
  if (file_.has_parent_path()) {
    std::filesystem::create_directories(file_.parent_path());
  }
  if (resume && std::filesystem::exists(file_)) {
    for (auto& r : read_records(file_)) {
      if (r.kind != RecordKind::kError) {
        done_[cell_key(r)] = std::move(r);
      }
    }
  }
  out_.open(file_, resume ? std::ios::binary | std::ios::app : std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw ValidationError("cannot write results file " + file_.string());
  }
}

const ExperimentRecord* ResultLog::find(const std::string& key) const {
  const auto it = done_.find(key);
  return it == done_.end() ? nullptr : &it->second;
}

void ResultLog::append(const ExperimentRecord& r) {
  out_ << to_json_line(r) << '\n';
  out_.flush();
  if (r.kind != RecordKind::kError) {
    done_[cell_key(r)] = r;
  }
}

}  // namespace lsc
