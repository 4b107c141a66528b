#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "eduagent/errors.hpp"

namespace eduagent {

enum class Difficulty { easy, medium, hard };
enum class QuestionType { multiple_choice, fill_in_blank };

const char* to_string(Difficulty d);
const char* to_string(QuestionType t);
Difficulty difficulty_from_string(const std::string& s);
QuestionType question_type_from_string(const std::string& s);

/// The four-field constraint object every generation run is conditioned on:
/// grade, knowledge concepts, difficulty, core competency (plus the
/// multiple-choice / fill-in-the-blank split).
struct EducationalGoal {
  int grade = 1;
  std::vector<std::string> knowledge_concepts;
  Difficulty difficulty = Difficulty::medium;
  std::string competency;
  QuestionType question_type = QuestionType::fill_in_blank;

  /// Throws Error{invalid_argument} when grade is out of [1,9], the concept
  /// set is empty, or the competency is blank.
  void validate() const;
};

struct Question {
  std::string stem;
  std::string answer;
  std::optional<std::vector<std::string>> options;
  std::optional<std::string> rationale;
};

/// Whitespace-trimmed, space-collapsed, ASCII-lowercased form used wherever
/// two answer strings are compared.
std::string normalize_text(const std::string& s);

/// Validates Question invariants for the given question type: non-empty stem
/// and answer, options present iff multiple choice, and exactly one option
/// normalizing equal to the answer.
void validate_question(const Question& q, QuestionType type);

struct DimensionVerdict {
  std::string dimension;
  bool pass = false;
  std::string reason;
};

void validate_verdict(const DimensionVerdict& v);

/// One evaluation round for a candidate: per-dimension verdicts from the
/// Solver and Educator, the derived binary pass signals, the two ranking
/// scores on [0,10], and the textual feedback fed to the Writer on revision.
struct EvaluationReport {
  std::vector<DimensionVerdict> solver_verdicts;
  std::vector<DimensionVerdict> educator_verdicts;
  bool pass_solver = false;
  bool pass_educator = false;
  double rank_solver = 0.0;
  double rank_educator = 0.0;
  std::string feedback;
};

/// Builds a report with the pass flags derived from the verdict lists; the
/// flags are never stored independently of the conjunctions.
EvaluationReport make_report(std::vector<DimensionVerdict> solver_verdicts,
                             std::vector<DimensionVerdict> educator_verdicts,
                             double rank_solver, double rank_educator,
                             std::string feedback);

struct CandidateRecord {
  Question question;
  int direction_id = 0;
  int iteration = 0;
  std::optional<EvaluationReport> report;
};

/// Candidates whose reports pass both gates (p^S and p^E), input order
/// preserved. Throws Error{missing_report} when any report is absent.
std::vector<CandidateRecord> build_pass_set(std::span<const CandidateRecord> candidates);

/// True when `a` ranks strictly ahead of `b`: higher rank sum, then higher
/// Educator rank on sum ties. Both records must carry reports.
bool ranks_ahead(const CandidateRecord& a, const CandidateRecord& b);

/// Index of the best record: maximal rank_solver + rank_educator, ties broken
/// by higher rank_educator, remaining ties by lowest index.
std::size_t select_final_index(std::span<const CandidateRecord> pass_set);

/// The best record under the same ordering as select_final_index.
CandidateRecord select_final(std::span<const CandidateRecord> pass_set);

/// Top-k records under the select_final ordering (stable on full ties).
/// k past the list length yields the whole list, sorted.
std::vector<CandidateRecord> best_candidates(std::span<const CandidateRecord> candidates,
                                             std::size_t k);

// JSON bindings (bank files, traces, the CLI surface).
void to_json(nlohmann::json& j, const EducationalGoal& g);
void from_json(const nlohmann::json& j, EducationalGoal& g);
void to_json(nlohmann::json& j, const Question& q);
void from_json(const nlohmann::json& j, Question& q);
void to_json(nlohmann::json& j, const DimensionVerdict& v);
void from_json(const nlohmann::json& j, DimensionVerdict& v);
void to_json(nlohmann::json& j, const EvaluationReport& r);
void from_json(const nlohmann::json& j, EvaluationReport& r);
void to_json(nlohmann::json& j, const CandidateRecord& r);
void from_json(const nlohmann::json& j, CandidateRecord& r);

}  // namespace eduagent
