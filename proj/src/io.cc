// SPDX-License-Identifier: Apache-2.0

#include "rpo/io.h"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rpo {
namespace {

std::vector<std::string> SplitCells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void Fail(int line, const std::string& what) {
  throw std::invalid_argument("csv line " + std::to_string(line) + ": " + what);
}

std::string Format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Dataset ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Fail(1, "missing header");
  std::vector<std::string> header = SplitCells(line);
  for (auto& h : header) h = Trim(h);
  const int cols = static_cast<int>(header.size());
  if (cols < 2 || header[cols - 2] != "b1" || header[cols - 1] != "b2") {
    Fail(1, "header must end with b1,b2");
  }
  const int d = cols - 2;
  for (int j = 0; j < d; ++j) {
    if (header[j] != "feature_" + std::to_string(j)) {
      Fail(1, "expected column feature_" + std::to_string(j) + ", got '" +
                  header[j] + "'");
    }
  }
  Dataset data(d);
  for (int line_no = 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string> cells = SplitCells(line);
    if (static_cast<int>(cells.size()) != cols) {
      Fail(line_no, "expected " + std::to_string(cols) + " cells, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> values(cols);
    for (int j = 0; j < cols; ++j) {
      const std::string cell = Trim(cells[j]);
      char* end = nullptr;
      errno = 0;
      values[j] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0' || errno == ERANGE ||
          !std::isfinite(values[j])) {
        Fail(line_no, "non-numeric cell '" + cell + "' in column " + header[j]);
      }
    }
    AuctionSample s{std::vector<double>(values.begin(), values.begin() + d),
                    values[d], values[d + 1]};
    try {
      data.Add(std::move(s));
    } catch (const std::invalid_argument& e) {
      Fail(line_no, e.what());
    }
  }
  return data;
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  for (int j = 0; j < data.dimension(); ++j) out << "feature_" << j << ',';
  out << "b1,b2\n";
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    std::string row;
    for (double w : s.features) row += Format(w) + ",";
    row += Format(s.b1) + "," + Format(s.b2) + "\n";
    for (std::int64_t k = 0; k < data.multiplicity(i); ++k) out << row;
  }
}

Dataset LoadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadCsv(in);
}

void SaveCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteCsv(data, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string BoxToJson(const Box& box) {
  nlohmann::json j;
  j["lower"] = box.lower;
  j["upper"] = box.upper;
  j["offset_lower"] = box.offset_lower;
  j["offset_upper"] = box.offset_upper;
  return j.dump(2) + "\n";
}

Box BoxFromJson(const std::string& text) {
  Box box;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    box.lower = j.at("lower").get<std::vector<double>>();
    box.upper = j.at("upper").get<std::vector<double>>();
    box.offset_lower = j.value("offset_lower", 0.0);
    box.offset_upper = j.value("offset_upper", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad box file: ") + e.what());
  }
  ValidateBox(box);
  return box;
}

Box LoadBox(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return BoxFromJson(buf.str());
}

void SaveBox(const Box& box, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << BoxToJson(box);
}

std::string ModelToJson(const LinearModel& model) {
  nlohmann::json j;
  j["beta"] = model.beta;
  j["beta0"] = model.beta0;
  return j.dump();
}

}  // namespace rpo
