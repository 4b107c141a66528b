#include "eduagent/prompts.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eduagent/errors.hpp"

namespace eduagent {
namespace detail {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

PromptTemplate parse_template(const std::string& text) {
  PromptTemplate tmpl;
  std::istringstream in(text);
  std::string line;
  std::string* target = nullptr;
  std::string system, user;
  while (std::getline(in, line)) {
    const std::string marker = trim(line);
    if (marker == "[system]") {
      target = &system;
      continue;
    }
    if (marker == "[user]") {
      target = &user;
      continue;
    }
    if (!target) {
      user += line;  // no markers: whole file is the user template
      user += '\n';
      continue;
    }
    *target += line;
    *target += '\n';
  }
  tmpl.system = trim(system);
  tmpl.user = trim(user);
  if (tmpl.system.empty())
    tmpl.system =
        "You are one agent in a multi-agent question generation workflow. "
        "Reply with a single JSON object and nothing else.";
  return tmpl;
}

}  // namespace detail

PromptLibrary PromptLibrary::defaults() {
  std::map<std::string, std::string> raw;
  detail::embedded_prompts(raw);
  PromptLibrary lib;
  for (const auto& [name, text] : raw)
    lib.templates_[name] = detail::parse_template(text);
  return lib;
}

PromptLibrary PromptLibrary::from_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::config_error, "template directory not found: " + dir);
  PromptLibrary lib = defaults();
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    std::ostringstream buf;
    buf << in.rdbuf();
    lib.templates_[entry.path().stem().string()] = detail::parse_template(buf.str());
  }
  return lib;
}

const PromptTemplate& PromptLibrary::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end())
    throw Error(ErrorCode::config_error, "unknown prompt template: " + name);
  return it->second;
}

std::string PromptLibrary::render(const std::string& text,
                                  const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t close = text.find('}', i + 1);
    if (close == std::string::npos) {
      out.append(text, i, std::string::npos);
      break;
    }
    const std::string name = text.substr(i + 1, close - i - 1);
    auto it = vars.find(name);
    if (it == vars.end()) {
      out.push_back(text[i++]);  // not a placeholder; keep scanning
      continue;
    }
    out += it->second;
    i = close + 1;
  }
  return out;
}

}  // namespace eduagent
