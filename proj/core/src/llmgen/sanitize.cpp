#include "newsaudit/llmgen/sanitize.hpp"

#include <regex>
#include <sstream>

#include "newsaudit/detail/builtin_data.hpp"
#include "newsaudit/errors.hpp"

namespace newsaudit::llmgen {

namespace {

const std::vector<std::regex>& compiled_patterns() {
  static const std::vector<std::regex> res = [] {
    std::vector<std::regex> out;
    for (const std::string& pat : disclaimer_patterns())
      out.emplace_back(pat, std::regex_constants::icase);
    return out;
  }();
  return res;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_quote(char c) { return c == '"' || c == '\''; }

// One cleanup sweep; sanitize() iterates this to a fixpoint.
std::string pass(const std::string& input) {
  // Normalize line endings and split.
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : input) {
      if (c == '\r') continue;
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  static const std::regex label(R"(^\s*(title|headline|body)\s*:\s*)",
                                std::regex_constants::icase);
  static const std::regex markdown(R"(^\s*#+\s*)");

  std::vector<std::string> kept;
  for (std::string line : lines) {
    line = std::regex_replace(line, label, "", std::regex_constants::format_first_only);
    line = std::regex_replace(line, markdown, "",
                              std::regex_constants::format_first_only);
    bool disclaimer = false;
    for (const std::regex& re : compiled_patterns()) {
      if (std::regex_search(line, re)) {
        disclaimer = true;
        break;
      }
    }
    if (disclaimer) continue;
    // Trailing whitespace is never meaningful.
    std::size_t e = line.find_last_not_of(" \t");
    line = (e == std::string::npos) ? "" : line.substr(0, e + 1);
    kept.push_back(line);
  }

  // Collapse blank-line runs to single paragraph breaks and drop
  // leading/trailing ones.
  std::string out;
  bool pending_break = false;
  for (const std::string& line : kept) {
    if (line.empty()) {
      pending_break = !out.empty();
      continue;
    }
    if (!out.empty()) out += pending_break ? "\n\n" : "\n";
    out += line;
    pending_break = false;
  }

  std::string t = trim(out);
  // Symmetric surrounding quotes around the whole remaining text.
  while (t.size() >= 2 && is_quote(t.front()) && is_quote(t.back())) {
    t = trim(t.substr(1, t.size() - 2));
  }
  return t;
}

}  // namespace

const std::vector<std::string>& disclaimer_patterns() {
  static const std::vector<std::string> patterns = [] {
    auto data = detail::builtin_file("templates/disclaimer_patterns.txt");
    if (!data) throw ValidationError("builtin disclaimer pattern list missing");
    std::vector<std::string> out;
    std::istringstream in{std::string(*data)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      out.push_back(t);
    }
    return out;
  }();
  return patterns;
}

std::string sanitize(const std::string& raw) {
  std::string cur = raw;
  for (int i = 0; i < 16; ++i) {  // fixpoint in practice after <= 3 sweeps
    std::string next = pass(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

bool sanitize_rejects(const std::string& raw) { return sanitize(raw).empty(); }

}  // namespace newsaudit::llmgen
