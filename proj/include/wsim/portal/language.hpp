#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsim::portal {

inline constexpr std::array<std::string_view, 12> kLanguages = {
    "english", "spanish", "french", "catalan", "portuguese", "russian",
    "greek",   "italian", "polish", "german",  "turkish",    "arabic"};

/// Keys every language table must define.
inline constexpr std::array<std::string_view, 12> kStringKeys = {
    "code",   "dir",         "title",        "heading",         "intro",        "password_label",
    "submit", "error_wrong", "error_length", "success_heading", "success_body", "offline"};

class PortalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_language(std::string_view name);

class StringTable {
 public:
  StringTable() = default;
  StringTable(std::string language, std::map<std::string, std::string> entries)
      : language_(std::move(language)), entries_(std::move(entries)) {}

  const std::string& language() const { return language_; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Throws PortalError for a missing key.
  const std::string& get(std::string_view key) const;

  std::vector<std::string> missing_keys() const;

 private:
  std::string language_;
  std::map<std::string, std::string> entries_;
};

/// `key=value` lines; `#` comments and blank lines ignored. Throws
/// PortalError with the line number on a line without `=`.
StringTable parse_string_table(std::string language, std::string_view text);

/// Built-in table for one of kLanguages. Throws PortalError otherwise.
const StringTable& language_table(std::string_view language);

}  // namespace wsim::portal
