#include "eduagent/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace eduagent {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::missing_report: return "missing_report";
    case ErrorCode::empty_pass_set: return "empty_pass_set";
    case ErrorCode::provider_unreachable: return "provider_unreachable";
    case ErrorCode::provider_rejected: return "provider_rejected";
    case ErrorCode::timeout: return "timeout";
    case ErrorCode::parse_failure: return "parse_failure";
    case ErrorCode::schema_violation: return "schema_violation";
    case ErrorCode::file_unreadable: return "file_unreadable";
    case ErrorCode::empty_bank: return "empty_bank";
    case ErrorCode::planner_output_invalid: return "planner_output_invalid";
    case ErrorCode::writer_output_invalid: return "writer_output_invalid";
    case ErrorCode::evaluator_output_invalid: return "evaluator_output_invalid";
    case ErrorCode::iteration_exhausted: return "iteration_exhausted";
    case ErrorCode::empty_sequence: return "empty_sequence";
    case ErrorCode::too_few_questions: return "too_few_questions";
    case ErrorCode::embedder_unavailable: return "embedder_unavailable";
    case ErrorCode::misaligned_outputs: return "misaligned_outputs";
    case ErrorCode::internal_error: return "internal_error";
  }
  return "unknown";
}

const char* to_string(Difficulty d) {
  switch (d) {
    case Difficulty::easy: return "easy";
    case Difficulty::medium: return "medium";
    case Difficulty::hard: return "hard";
  }
  return "medium";
}

const char* to_string(QuestionType t) {
  return t == QuestionType::multiple_choice ? "multiple_choice" : "fill_in_blank";
}

Difficulty difficulty_from_string(const std::string& s) {
  if (s == "easy") return Difficulty::easy;
  if (s == "medium") return Difficulty::medium;
  if (s == "hard") return Difficulty::hard;
  throw Error(ErrorCode::invalid_argument, "unknown difficulty: " + s);
}

QuestionType question_type_from_string(const std::string& s) {
  if (s == "multiple_choice") return QuestionType::multiple_choice;
  if (s == "fill_in_blank") return QuestionType::fill_in_blank;
  throw Error(ErrorCode::invalid_argument, "unknown question_type: " + s);
}

void EducationalGoal::validate() const {
  if (grade < 1 || grade > 9)
    throw Error(ErrorCode::invalid_argument, "grade out of range");
  if (knowledge_concepts.empty())
    throw Error(ErrorCode::invalid_argument, "knowledge_concepts must be non-empty");
  for (const auto& c : knowledge_concepts)
    if (normalize_text(c).empty())
      throw Error(ErrorCode::invalid_argument, "blank knowledge concept");
  if (normalize_text(competency).empty())
    throw Error(ErrorCode::invalid_argument, "competency must be non-empty");
}

std::string normalize_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // leading whitespace dropped
  for (unsigned char ch : s) {
    if (std::isspace(ch)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(static_cast<char>(std::tolower(ch)));
  }
  return out;
}

void validate_question(const Question& q, QuestionType type) {
  if (normalize_text(q.stem).empty())
    throw Error(ErrorCode::invalid_argument, "question stem is empty");
  if (normalize_text(q.answer).empty())
    throw Error(ErrorCode::invalid_argument, "question answer is empty");
  if (type == QuestionType::multiple_choice) {
    if (!q.options || q.options->empty())
      throw Error(ErrorCode::invalid_argument,
                  "multiple_choice question requires options");
    const std::string want = normalize_text(q.answer);
    int hits = 0;
    for (const auto& opt : *q.options)
      if (normalize_text(opt) == want) ++hits;
    if (hits != 1)
      throw Error(ErrorCode::invalid_argument,
                  "exactly one option must equal the answer (found " +
                      std::to_string(hits) + ")");
  } else if (q.options && !q.options->empty()) {
    throw Error(ErrorCode::invalid_argument,
                "fill_in_blank question must not carry options");
  }
}

void validate_verdict(const DimensionVerdict& v) {
  if (normalize_text(v.dimension).empty())
    throw Error(ErrorCode::invalid_argument, "verdict dimension is empty");
  if (!v.pass && normalize_text(v.reason).empty())
    throw Error(ErrorCode::invalid_argument,
                "failing verdict requires a reason (" + v.dimension + ")");
}

namespace {

bool all_pass(const std::vector<DimensionVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const DimensionVerdict& v) { return v.pass; });
}

void require_rank(double rank, const char* which) {
  if (!std::isfinite(rank) || rank < 0.0 || rank > 10.0)
    throw Error(ErrorCode::invalid_argument,
                std::string(which) + " rank must be finite and within [0,10]");
}

const EvaluationReport& require_report(const CandidateRecord& rec) {
  if (!rec.report)
    throw Error(ErrorCode::missing_report,
                "candidate (direction " + std::to_string(rec.direction_id) +
                    ", iteration " + std::to_string(rec.iteration) +
                    ") has no evaluation report");
  return *rec.report;
}

double rank_sum(const CandidateRecord& rec) {
  const auto& r = require_report(rec);
  return r.rank_solver + r.rank_educator;
}

}  // namespace

EvaluationReport make_report(std::vector<DimensionVerdict> solver_verdicts,
                             std::vector<DimensionVerdict> educator_verdicts,
                             double rank_solver, double rank_educator,
                             std::string feedback) {
  for (const auto& v : solver_verdicts) validate_verdict(v);
  for (const auto& v : educator_verdicts) validate_verdict(v);
  require_rank(rank_solver, "solver");
  require_rank(rank_educator, "educator");
  EvaluationReport report;
  report.pass_solver = all_pass(solver_verdicts);
  report.pass_educator = all_pass(educator_verdicts);
  report.solver_verdicts = std::move(solver_verdicts);
  report.educator_verdicts = std::move(educator_verdicts);
  report.rank_solver = rank_solver;
  report.rank_educator = rank_educator;
  report.feedback = std::move(feedback);
  return report;
}

std::vector<CandidateRecord> build_pass_set(std::span<const CandidateRecord> candidates) {
  for (const auto& rec : candidates) require_report(rec);
  std::vector<CandidateRecord> out;
  for (const auto& rec : candidates)
    if (rec.report->pass_solver && rec.report->pass_educator) out.push_back(rec);
  return out;
}

bool ranks_ahead(const CandidateRecord& a, const CandidateRecord& b) {
  const double sa = rank_sum(a);
  const double sb = rank_sum(b);
  if (sa != sb) return sa > sb;
  return a.report->rank_educator > b.report->rank_educator;
}

std::size_t select_final_index(std::span<const CandidateRecord> pass_set) {
  if (pass_set.empty())
    throw Error(ErrorCode::empty_pass_set, "select_final on an empty pass set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pass_set.size(); ++i)
    if (ranks_ahead(pass_set[i], pass_set[best])) best = i;
  return best;
}

CandidateRecord select_final(std::span<const CandidateRecord> pass_set) {
  return pass_set[select_final_index(pass_set)];
}

std::vector<CandidateRecord> best_candidates(std::span<const CandidateRecord> candidates,
                                             std::size_t k) {
  if (k == 0)
    throw Error(ErrorCode::invalid_argument, "best_candidates requires k >= 1");
  for (const auto& rec : candidates) require_report(rec);
  std::vector<CandidateRecord> out(candidates.begin(), candidates.end());
  std::stable_sort(out.begin(), out.end(), ranks_ahead);
  if (out.size() > k) out.resize(k);
  return out;
}

void to_json(nlohmann::json& j, const EducationalGoal& g) {
  j = nlohmann::json{{"grade", g.grade},
                     {"knowledge_concepts", g.knowledge_concepts},
                     {"difficulty", to_string(g.difficulty)},
                     {"competency", g.competency},
                     {"question_type", to_string(g.question_type)}};
}

void from_json(const nlohmann::json& j, EducationalGoal& g) {
  g.grade = j.at("grade").get<int>();
  g.knowledge_concepts = j.at("knowledge_concepts").get<std::vector<std::string>>();
  g.difficulty = difficulty_from_string(j.at("difficulty").get<std::string>());
  g.competency = j.at("competency").get<std::string>();
  g.question_type = question_type_from_string(j.at("question_type").get<std::string>());
}

void to_json(nlohmann::json& j, const Question& q) {
  j = nlohmann::json{{"stem", q.stem}, {"answer", q.answer}};
  if (q.options) j["options"] = *q.options;
  if (q.rationale) j["rationale"] = *q.rationale;
}

void from_json(const nlohmann::json& j, Question& q) {
  q.stem = j.at("stem").get<std::string>();
  q.answer = j.at("answer").get<std::string>();
  q.options.reset();
  q.rationale.reset();
  if (j.contains("options") && !j.at("options").is_null())
    q.options = j.at("options").get<std::vector<std::string>>();
  if (j.contains("rationale") && !j.at("rationale").is_null())
    q.rationale = j.at("rationale").get<std::string>();
}

void to_json(nlohmann::json& j, const DimensionVerdict& v) {
  j = nlohmann::json{{"dimension", v.dimension}, {"pass", v.pass}, {"reason", v.reason}};
}

void from_json(const nlohmann::json& j, DimensionVerdict& v) {
  v.dimension = j.at("dimension").get<std::string>();
  v.pass = j.at("pass").get<bool>();
  v.reason = j.value("reason", "");
}

void to_json(nlohmann::json& j, const EvaluationReport& r) {
  j = nlohmann::json{{"solver_verdicts", r.solver_verdicts},
                     {"educator_verdicts", r.educator_verdicts},
                     {"pass_solver", r.pass_solver},
                     {"pass_educator", r.pass_educator},
                     {"rank_solver", r.rank_solver},
                     {"rank_educator", r.rank_educator},
                     {"feedback", r.feedback}};
}

void from_json(const nlohmann::json& j, EvaluationReport& r) {
  r.solver_verdicts = j.at("solver_verdicts").get<std::vector<DimensionVerdict>>();
  r.educator_verdicts = j.at("educator_verdicts").get<std::vector<DimensionVerdict>>();
  r.pass_solver = j.at("pass_solver").get<bool>();
  r.pass_educator = j.at("pass_educator").get<bool>();
  r.rank_solver = j.at("rank_solver").get<double>();
  r.rank_educator = j.at("rank_educator").get<double>();
  r.feedback = j.value("feedback", "");
}

void to_json(nlohmann::json& j, const CandidateRecord& r) {
  j = nlohmann::json{{"question", r.question},
                     {"direction_id", r.direction_id},
                     {"iteration", r.iteration}};
  if (r.report)
    j["report"] = *r.report;
  else
    j["report"] = nullptr;
}

void from_json(const nlohmann::json& j, CandidateRecord& r) {
  r.question = j.at("question").get<Question>();
  r.direction_id = j.at("direction_id").get<int>();
  r.iteration = j.at("iteration").get<int>();
  r.report.reset();
  if (j.contains("report") && !j.at("report").is_null())
    r.report = j.at("report").get<EvaluationReport>();
}

}  // namespace eduagent
