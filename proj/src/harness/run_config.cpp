#include "lsc/harness/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) {
      throw ConfigError("empty list element in '" + std::string(text) + "'");
    }
    out.push_back(item);
    if (comma == std::string_view::npos) {
      return out;
    }
    start = comma + 1;
  }
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(what) + ": '" + std::string(text) + "' is not a non-negative integer");
  }
  return v;
}

std::size_t parse_positive(std::string_view text, std::string_view what) {
  const auto v = parse_uint(text, what);
  if (v == 0) {
    throw ConfigError(std::string(what) + " must be positive");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  if (text.front() == '[') {
    if (text.back() != ']' || text.size() < 3) {
      throw ConfigError("seeds: unterminated list '" + std::string(text) + "'");
    }
    std::vector<std::uint64_t> seeds;
    for (const auto item : split_list(text.substr(1, text.size() - 2))) {
      seeds.push_back(parse_uint(item, "seeds"));
    }
    return seeds;
  }
  const auto n = parse_positive(text, "seeds");
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) {
    seeds[i] = i;
  }
  return seeds;
}

void parse_backend(std::string_view text, std::optional<simd::Backend>& out) {
  if (text == "auto") {
    out.reset();
  } else if (text == "scalar") {
    out = simd::Backend::kScalar;
  } else if (text == "avx2") {
    out = simd::Backend::kAvx2;
  } else {
    throw ConfigError("backend: expected auto, scalar or avx2, got '" + std::string(text) + "'");
  }
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::filesystem::path&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"data", [](RunConfig& c, std::string_view v, const auto& base) { c.data = base / std::string(v); }},
      {"dataset", [](RunConfig& c, std::string_view v, const auto&) { c.dataset = std::string(v); }},
      {"output", [](RunConfig& c, std::string_view v, const auto& base) { c.output = base / std::string(v); }},
      {"task", [](RunConfig& c, std::string_view v, const auto&) { c.train.task = parse_task(v); }},
      {"variant",
       [](RunConfig& c, std::string_view v, const auto&) {
         c.variants.clear();
         for (const auto item : split_list(v)) {
           c.variants.push_back(parse_variant(item));
         }
       }},
      {"target_ratio",
       [](RunConfig& c, std::string_view v, const auto&) { c.target_ratios = parse_double_list(v, "target_ratio"); }},
      {"perturb_rate",
       [](RunConfig& c, std::string_view v, const auto&) { c.perturb_rates = parse_double_list(v, "perturb_rate"); }},
      {"lambda_grid",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.lambda_grid = parse_double_list(v, "lambda_grid"); }},
      {"seeds", [](RunConfig& c, std::string_view v, const auto&) { c.seeds = parse_seeds(v); }},
      {"epochs", [](RunConfig& c, std::string_view v, const auto&) { c.train.epochs = parse_positive(v, "epochs"); }},
      {"lr", [](RunConfig& c, std::string_view v, const auto&) { c.train.lr = parse_double(v, "lr"); }},
      {"hidden", [](RunConfig& c, std::string_view v, const auto&) { c.train.hidden = parse_positive(v, "hidden"); }},
      {"latent", [](RunConfig& c, std::string_view v, const auto&) { c.train.latent = parse_positive(v, "latent"); }},
      {"layers", [](RunConfig& c, std::string_view v, const auto&) { c.train.layers = parse_positive(v, "layers"); }},
      {"reg_layers",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.reg_layers = parse_positive(v, "reg_layers"); }},
      {"jaccard_threshold",
       [](RunConfig& c, std::string_view v, const auto&) {
         c.train.jaccard_threshold = parse_double(v, "jaccard_threshold");
       }},
      {"selection", [](RunConfig& c, std::string_view v, const auto&) { c.train.selection = parse_selection(v); }},
      {"target_loss",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.target_loss = parse_target_loss(v); }},
      {"target_relation",
       [](RunConfig& c, std::string_view v, const auto&) { c.target_relation = parse_relation_key(v); }},
      {"backend", [](RunConfig& c, std::string_view v, const auto&) { parse_backend(v, c.backend); }},
  };
  return table;
}

void validate(const RunConfig& c) {
  c.train.validate();
  for (const double r : c.target_ratios) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw ConfigError("target_ratio must lie in (0, 1]");
    }
  }
  for (const double p : c.perturb_rates) {
    if (p < 0.0) {
      throw ConfigError("perturb_rate must be non-negative");
    }
  }
  if (c.variants.empty()) {
    throw ConfigError("no variant given");
  }
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (const auto item : split_list(text)) {
    out.push_back(parse_double(item, what));
  }
  return out;
}

RelationKey parse_relation_key(std::string_view text) {
  const auto a = text.find("__");
  const auto b = a == std::string_view::npos ? a : text.find("__", a + 2);
  if (b == std::string_view::npos || text.find("__", b + 2) != std::string_view::npos || a == 0 || b == a + 2 ||
      b + 2 == text.size()) {
    throw ConfigError("relation '" + std::string(text) + "' is not of the form src__name__dst");
  }
  return RelationKey{std::string(text.substr(0, a)), std::string(text.substr(a + 2, b - a - 2)),
                     std::string(text.substr(b + 2))};
}

RunConfig default_run_config() {
  RunConfig c;
  c.train.epochs = 300;
  return c;
}

RunConfig parse_run_config(std::string_view text, const std::string& origin, const std::filesystem::path& base_dir) {
  RunConfig c = default_run_config();
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto where = origin + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ConfigError(where + "empty value for '" + std::string(key) + "'");
    }
    if (!c.explicit_keys.insert(std::string(key)).second) {
      throw ConfigError(where + "key '" + std::string(key) + "' given twice");
    }
    try {
      it->second(c, value, base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (c.dataset.empty() && !c.data.empty()) {
    c.dataset = c.data.lexically_normal().filename().string();
    if (c.dataset.empty()) {
      c.dataset = c.data.lexically_normal().parent_path().filename().string();
    }
  }
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), file.string(), file.parent_path());
}

}  // namespace lsc
