#pragma once

#include <map>
#include <string>

namespace eduagent {

struct PromptTemplate {
  std::string system;
  std::string user;
};

/// Named prompt templates with {placeholder} substitution. Built-in defaults
/// are compiled in from data/prompts/; a template directory from config
/// overrides them file by file (<name>.txt with [system] / [user] sections).
class PromptLibrary {
 public:
  static PromptLibrary defaults();
  static PromptLibrary from_directory(const std::string& dir);

  const PromptTemplate& get(const std::string& name) const;
  bool has(const std::string& name) const { return templates_.count(name) > 0; }

  /// Replaces every {name} occurrence whose name is a key in vars; all other
  /// brace text (JSON examples in particular) is left untouched.
  static std::string render(const std::string& text,
                            const std::map<std::string, std::string>& vars);

 private:
  std::map<std::string, PromptTemplate> templates_;
};

namespace detail {
void embedded_prompts(std::map<std::string, std::string>& out);
PromptTemplate parse_template(const std::string& text);
}  // namespace detail

}  // namespace eduagent
