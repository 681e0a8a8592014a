#include "wsim/portal/language.hpp"

#include <algorithm>

#include "wsim/portal/assets.hpp"

namespace wsim::portal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_language(std::string_view name) {
  return std::find(kLanguages.begin(), kLanguages.end(), name) != kLanguages.end();
}

const std::string& StringTable::get(std::string_view key) const {
  const auto it = entries_.find(std::string(key));
  if (it == entries_.end()) {
    throw PortalError("language '" + language_ + "' has no string '" + std::string(key) + "'");
  }
  return it->second;
}

std::vector<std::string> StringTable::missing_keys() const {
  std::vector<std::string> out;
  for (auto k : kStringKeys) {
    if (!entries_.contains(std::string(k))) out.emplace_back(k);
  }
  return out;
}

StringTable parse_string_table(std::string language, std::string_view text) {
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw PortalError(language + ":" + std::to_string(line_no) + ": expected key=value");
    }
    entries[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return StringTable(std::move(language), std::move(entries));
}

const StringTable& language_table(std::string_view language) {
  static const std::map<std::string, StringTable, std::less<>> tables = [] {
    std::map<std::string, StringTable, std::less<>> m;
    for (const auto& a : assets::languages()) m.emplace(a.name, parse_string_table(a.name, a.content));
    return m;
  }();
  const auto it = tables.find(language);
  if (!is_language(language) || it == tables.end()) {
    throw PortalError("unknown portal language '" + std::string(language) + "'");
  }
  return it->second;
}

}  // namespace wsim::portal
