// voxanon/manifest.cpp

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

#include "voxanon/manifest.hpp"

#include <algorithm>
#include <set>

#include "voxanon/error.hpp"
#include "voxanon/line_reader.hpp"

namespace fs = std::filesystem;

namespace voxanon {

namespace {

std::string at(const fs::path &file, std::size_t line) {
  return file.string() + ":" + std::to_string(line);
}

}  // namespace

fs::path DataDir::wav_path(const std::string &utt) const {
  const auto it = wav_index.find(utt);
  if (it == wav_index.end()) throw Error(ErrorKind::OrphanUtterance, utt + " is not in wav.scp");
  fs::path p(it->second);
  return p.is_absolute() ? p : root / p;
}

std::vector<std::string> DataDir::speakers() const {
  std::set<std::string> s;
  for (const auto &[utt, spk] : utt2spk) s.insert(spk);
  return {s.begin(), s.end()};
}

DataDir load_data_dir(const fs::path &dir) {
  DataDir data;
  data.root = dir;
  const fs::path wav_scp = dir / "wav.scp";
  const fs::path utt2spk = dir / "utt2spk";
  for (const fs::path &required : {wav_scp, utt2spk})
    if (!fs::exists(required)) throw Error(ErrorKind::MissingFile, required.string());

  std::map<std::string, std::size_t> wav_line;
  for_each_record(wav_scp, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f.size() != 2) throw_malformed(wav_scp, line, "expected '<utt> <path>'");
    if (f[1].back() == '|' || f[1].front() == '|') throw_malformed(wav_scp, line, "command pipes are not supported");
    if (!data.wav_index.emplace(std::string(f[0]), std::string(f[1])).second)
      throw Error(ErrorKind::DuplicateUtterance, at(wav_scp, line) + ": " + std::string(f[0]));
    wav_line[std::string(f[0])] = line;
  });

  for_each_record(utt2spk, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f.size() != 2) throw_malformed(utt2spk, line, "expected '<utt> <speaker>'");
    const std::string utt(f[0]);
    if (!data.wav_index.count(utt))
      throw Error(ErrorKind::OrphanUtterance, at(utt2spk, line) + ": " + utt + " is not in wav.scp");
    if (!data.utt2spk.emplace(utt, std::string(f[1])).second)
      throw Error(ErrorKind::DuplicateUtterance, at(utt2spk, line) + ": " + utt);
  });
  for (const auto &[utt, path] : data.wav_index)
    if (!data.utt2spk.count(utt))
      throw Error(ErrorKind::OrphanUtterance, at(wav_scp, wav_line[utt]) + ": " + utt + " has no speaker in utt2spk");

  const fs::path spk2gender = dir / "spk2gender";
  if (fs::exists(spk2gender)) {
    for_each_record(spk2gender, [&](std::size_t line, const std::vector<std::string_view> &f) {
      if (f.size() != 2) throw_malformed(spk2gender, line, "expected '<speaker> <F|M>'");
      Gender g;
      if (f[1] == "F" || f[1] == "f")
        g = Gender::Female;
      else if (f[1] == "M" || f[1] == "m")
        g = Gender::Male;
      else
        throw_malformed(spk2gender, line, "gender must be F or M");
      if (!data.spk2gender.emplace(std::string(f[0]), g).second)
        throw_malformed(spk2gender, line, "duplicate speaker " + std::string(f[0]));
    });
    for (const std::string &spk : data.speakers())
      if (!data.spk2gender.count(spk)) throw Error(ErrorKind::MissingGender, spk + " has no entry in spk2gender");
  }

  const fs::path text = dir / "text";
  if (fs::exists(text)) {
    data.text.emplace();
    for_each_record(text, [&](std::size_t line, const std::vector<std::string_view> &f) {
      const std::string utt(f[0]);
      if (!data.wav_index.count(utt))
        throw Error(ErrorKind::OrphanUtterance, at(text, line) + ": " + utt + " is not in wav.scp");
      std::vector<std::string> toks(f.begin() + 1, f.end());
      if (!data.text->emplace(utt, std::move(toks)).second)
        throw Error(ErrorKind::DuplicateUtterance, at(text, line) + ": " + utt);
    });
  }
  return data;
}

void save_data_dir(const DataDir &data, const fs::path &dir) {
  fs::create_directories(dir);
  std::string wav, u2s, s2g;
  for (const auto &[utt, path] : data.wav_index) wav += utt + ' ' + path + '\n';
  for (const auto &[utt, spk] : data.utt2spk) u2s += utt + ' ' + spk + '\n';
  for (const auto &[spk, g] : data.spk2gender) s2g += spk + (g == Gender::Female ? " F\n" : " M\n");
  write_text_file(dir / "wav.scp", wav);
  write_text_file(dir / "utt2spk", u2s);
  if (!data.spk2gender.empty()) write_text_file(dir / "spk2gender", s2g);
  if (data.text) {
    std::string txt;
    for (const auto &[utt, toks] : *data.text) {
      txt += utt;
      for (const std::string &t : toks) txt += ' ' + t;
      txt += '\n';
    }
    write_text_file(dir / "text", txt);
  }
}

LayoutReport validate_submission_layout(const fs::path &root) {
  LayoutReport report;
  const fs::path exp = root / "exp";
  auto is_file = [](const fs::path &p) { return fs::is_regular_file(p); };
  auto is_dir = [](const fs::path &p) { return fs::is_directory(p); };

  if (!is_file(exp / "results_summary")) report.missing.push_back("exp/results_summary");
  if (!is_dir(exp / "asv_orig"))
    report.missing.push_back("exp/asv_orig");
  else if (!is_file(exp / "asv_orig" / "cosine_out"))
    report.missing.push_back("exp/asv_orig/cosine_out");

  std::vector<std::string> anon_dirs;
  std::vector<std::string> extra;
  if (is_dir(exp)) {
    for (const auto &entry : fs::directory_iterator(exp)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("asv_anon", 0) == 0 && entry.is_directory())
        anon_dirs.push_back(name);
      else if (!((name == "results_summary" && entry.is_regular_file()) ||
                 (name == "asv_orig" && entry.is_directory()) || (name == "asr" && entry.is_directory()) ||
                 (name == "ser" && entry.is_directory())))
        extra.push_back("exp/" + name);
    }
  }
  std::sort(anon_dirs.begin(), anon_dirs.end());
  if (anon_dirs.empty()) report.missing.push_back("exp/asv_anon<suffix>");
  for (const std::string &d : anon_dirs)
    if (!is_file(exp / d / "cosine_out")) report.missing.push_back("exp/" + d + "/cosine_out");

  if (!is_dir(exp / "asr")) report.missing.push_back("exp/asr");

  bool has_csv = false;
  if (is_dir(exp / "ser"))
    for (const auto &entry : fs::directory_iterator(exp / "ser"))
      if (entry.is_regular_file() && entry.path().filename().string().ends_with("csv")) has_csv = true;
  if (!has_csv) report.missing.push_back("exp/ser/*csv");

  std::sort(extra.begin(), extra.end());
  report.extra = std::move(extra);
  return report;
}

}  // namespace voxanon
