// voxanon/line_reader.cpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "voxanon/line_reader.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "voxanon/error.hpp"

namespace voxanon {

std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

void for_each_record(const std::filesystem::path &path,
                     const std::function<void(std::size_t, const std::vector<std::string_view> &)> &fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    fn(number, fields);
  }
  if (in.bad()) throw Error(ErrorKind::IoError, "read error in " + path.string());
}

void throw_malformed(const std::filesystem::path &file, std::size_t line, const std::string &why) {
  throw Error(ErrorKind::MalformedLine, file.string() + ":" + std::to_string(line) + ": " + why);
}

double parse_double(std::string_view field, const std::filesystem::path &file, std::size_t line) {
  double v = 0;
  const char *end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw_malformed(file, line, "not a finite number: '" + std::string(field) + "'");
  return v;
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot create " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

}  // namespace voxanon
