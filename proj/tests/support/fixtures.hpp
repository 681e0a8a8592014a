#pragma once

// Reads the plain-text vector fixtures under tests/fixtures: one record per
// line, whitespace-separated hex fields, '#' starts a comment.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef WSIM_FIXTURE_DIR
#error "WSIM_FIXTURE_DIR must be defined"
#endif

namespace wsim::test {

struct Record {
  std::string kind;
  std::vector<std::string> fields;
};

inline std::vector<Record> load_fixture(const std::string& name) {
  std::ifstream in(std::string(WSIM_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::vector<Record> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    Record rec;
    if (!(words >> rec.kind)) continue;
    for (std::string w; words >> w;) rec.fields.push_back(w);
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<Record> records_of(const std::vector<Record>& all, const std::string& kind) {
  std::vector<Record> out;
  for (const auto& r : all) {
    if (r.kind == kind) out.push_back(r);
  }
  return out;
}

}  // namespace wsim::test
