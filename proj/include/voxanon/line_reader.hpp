// voxanon/line_reader.hpp

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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace voxanon {

/// Splits on runs of spaces/tabs. A trailing CR is dropped first.
std::vector<std::string_view> split_fields(std::string_view line);

/// Calls fn(line_number, fields) for each non-blank line of the file.
/// Line numbers start at 1. Throws MissingFile if it cannot be opened.
void for_each_record(const std::filesystem::path &path,
                     const std::function<void(std::size_t, const std::vector<std::string_view> &)> &fn);

/// Parses a finite double, throwing MalformedLine naming file and line.
double parse_double(std::string_view field, const std::filesystem::path &file, std::size_t line);

[[noreturn]] void throw_malformed(const std::filesystem::path &file, std::size_t line, const std::string &why);

/// Writes text atomically enough for our purposes: truncate and write,
/// throwing IoError on failure.
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace voxanon
