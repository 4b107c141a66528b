#include "eduagent/text.hpp"

#include <cctype>

namespace eduagent {
namespace {

struct Codepoint {
  char32_t value = 0;
  std::size_t length = 1;  // bytes consumed
  bool valid = false;
};

Codepoint decode_utf8(const std::string& s, std::size_t i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    char32_t cp = (b0 & 0x1F) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
    return {cp, 2, true};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    char32_t cp = (b0 & 0x0F) << 12 |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3F);
    return {cp, 3, true};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    char32_t cp = (b0 & 0x07) << 18 |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
                  (static_cast<unsigned char>(s[i + 3]) & 0x3F);
    return {cp, 4, true};
  }
  return {0, 1, false};
}

bool is_cjk_ideograph(char32_t cp) {
  return (cp >= 0x3400 && cp <= 0x4DBF) || (cp >= 0x4E00 && cp <= 0x9FFF) ||
         (cp >= 0xF900 && cp <= 0xFAFF);
}

bool is_wide_punct(char32_t cp) {
  return (cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK punctuation
         (cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFFEF);
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  enum class Run { none, word, digits };
  std::vector<std::string> tokens;
  std::string current;
  Run run = Run::none;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(current);
    current.clear();
    run = Run::none;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const Codepoint cp = decode_utf8(text, i);
    i += cp.length;
    if (!cp.valid) {
      flush();
      continue;
    }
    const char32_t c = cp.value;
    if (c < 0x80) {
      const unsigned char a = static_cast<unsigned char>(c);
      if (std::isalpha(a)) {
        if (run != Run::word) flush();
        run = Run::word;
        current.push_back(static_cast<char>(std::tolower(a)));
      } else if (std::isdigit(a)) {
        if (run != Run::digits) flush();
        run = Run::digits;
        current.push_back(static_cast<char>(a));
      } else {
        flush();
      }
      continue;
    }
    if (is_wide_punct(c)) {
      flush();
      continue;
    }
    if (is_cjk_ideograph(c)) {
      flush();
      append_utf8(current, c);
      flush();
      continue;
    }
    // other non-ASCII letters join the current word run
    if (run != Run::word) flush();
    run = Run::word;
    append_utf8(current, c);
  }
  flush();
  return tokens;
}

std::string stem_token(const std::string& token) {
  const std::size_t n = token.size();
  if (n <= 3) return token;
  auto ends_with = [&](const char* suffix) {
    const std::size_t m = std::char_traits<char>::length(suffix);
    return n >= m && token.compare(n - m, m, suffix) == 0;
  };
  if (ends_with("sses")) return token.substr(0, n - 2);
  if (ends_with("ies")) return token.substr(0, n - 3) + "y";
  if (ends_with("ss")) return token;
  if (ends_with("s")) return token.substr(0, n - 1);
  if (ends_with("ing") && n - 3 >= 3) return token.substr(0, n - 3);
  if (ends_with("ed") && n - 2 >= 3) return token.substr(0, n - 2);
  return token;
}

}  // namespace eduagent
