#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace lsc::acceptance {

struct Context {
  std::filesystem::path data_dir;
  std::filesystem::path work_dir;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome(const Context&)> check;
};

std::vector<Criterion> unit_criteria();        // 1-5
std::vector<Criterion> experiment_criteria();  // 6-11

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace lsc::acceptance
