#pragma once

// Output helpers for the nel tool: fixed 17-digit number formatting for
// CSV and JSON, and the manifest written next to every output file.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace nel::cli {

using json = nlohmann::ordered_json;

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Serializes like json::dump but prints every float with %.17g.
inline void write_json(std::ostream& os, const json& j, int indent = 2, int depth = 0) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string pad_close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << pad_close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : j)
        if (v.is_structured()) scalars = false;
      if (scalars) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << pad_close << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v))
        os << fmt(v);
      else
        os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

inline std::string json_text(const json& j) {
  std::ostringstream os;
  write_json(os, j);
  os << "\n";
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
    return os.str();
  }
};

class RunManifest {
 public:
  RunManifest(std::string subcommand, json parameters)
      : subcommand_(std::move(subcommand)), parameters_(std::move(parameters)),
        start_(std::chrono::steady_clock::now()) {}

  /// Writes text to path, or to stdout when path is empty, and records it.
  void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    outputs_.push_back(path);
    write_sidecar(path);
  }

  /// Records a file written by someone else.
  void record(const std::string& path) { outputs_.push_back(path); }

  json to_json() const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return json{{"subcommand", subcommand_},
                {"parameters", parameters_},
                {"tool_version", NEL_VERSION},
                {"wall_time_s", wall},
                {"outputs", outputs_}};
  }

 private:
  void write_sidecar(const std::string& path) const {
    std::ofstream f(path + ".manifest.json");
    auto m = to_json();
    m["output"] = path;
    f << json_text(m);
  }

  std::string subcommand_;
  json parameters_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
};

}  // namespace nel::cli
