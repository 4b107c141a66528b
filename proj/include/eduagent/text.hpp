#pragma once

#include <string>
#include <vector>

namespace eduagent {

/// Metric tokenizer, fixed because every similarity score depends on it:
/// ASCII letters are lowercased and grouped into word tokens, digit runs form
/// one token per run, CJK ideographs are one token each, other non-ASCII
/// letter codepoints group into runs, and punctuation is dropped. Input is
/// treated as UTF-8; malformed bytes are skipped.
std::vector<std::string> tokenize(const std::string& text);

/// Light English suffix stripper used by the meteor_lite stem-match stage.
/// Rules, applied first-match on tokens longer than three characters:
/// "sses"->"ss", "ies"->"y", keep "ss", drop trailing "s", drop "ing"/"ed"
/// when at least three characters remain.
std::string stem_token(const std::string& token);

}  // namespace eduagent
