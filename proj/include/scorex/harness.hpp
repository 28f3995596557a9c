#pragma once

// Series ingestion, sequential cumulative evaluation, the simplex survey
// of cross-prevision exceedance, and CSV trace emission.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scorex/core.hpp"
#include "scorex/exchange.hpp"
#include "scorex/gains.hpp"
#include "scorex/information.hpp"
#include "scorex/scoring.hpp"

namespace scorex {

// ---------------------------------------------------------------------------
// Errors carrying input line numbers (1-based)

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string what)
      : Error("line " + std::to_string(line) + ": " + std::move(what)),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::size_t line, std::string cause)
      : Error("line " + std::to_string(line) + ": " + std::move(cause)),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NonMonotoneStep : public Error {
 public:
  NonMonotoneStep(std::size_t line, std::int64_t t, std::int64_t previous)
      : Error("line " + std::to_string(line) + ": step " + std::to_string(t) +
              " does not increase past " + std::to_string(previous)),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SinkError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Series types

struct ForecastRecord {
  std::int64_t t;
  Pmv p;
  Pmv q;
  OutcomeIndex outcome;
};

enum class SeriesFormat { Jsonl, Csv };

struct TraceStep {
  std::int64_t t = 0;
  double s_p = 0.0, s_q = 0.0;
  double ng_p = 0.0, ng_q = 0.0;
  double award_p = 0.0, award_q = 0.0;
  bool degen_p = false, degen_q = false;
  double cum_s_p = 0.0, cum_s_q = 0.0;
  double cum_award_p = 0.0, cum_award_q = 0.0;
};

// Per-step direct scores, net gains, and exchange awards together with
// their prefix sums.
struct EvaluationTrace {
  std::vector<TraceStep> steps;
};

struct SurveyResult {
  std::int64_t trials = 0;
  std::int64_t exceed_count = 0;
  double proportion = 0.0;
  std::uint64_t seed = 0;
  int n_dims = 0;
};

// ---------------------------------------------------------------------------
// Loading

namespace detail {

struct RawRecord {
  std::int64_t t;
  std::vector<double> p, q;
  int outcome;
};

// Shared validation once a record has been pulled out of either format.
inline void append_record(std::vector<ForecastRecord>& out, RawRecord raw,
                          std::size_t line) {
  if (raw.p.size() != raw.q.size())
    throw RealmMismatch(line, "p has " + std::to_string(raw.p.size()) +
                                  " weights but q has " +
                                  std::to_string(raw.q.size()));
  if (!out.empty() && out.front().p.size() != raw.p.size())
    throw RealmMismatch(
        line, "record realm size " + std::to_string(raw.p.size()) +
                  " differs from the series realm size " +
                  std::to_string(out.front().p.size()));
  if (!out.empty() && raw.t <= out.back().t)
    throw NonMonotoneStep(line, raw.t, out.back().t);
  try {
    const Realm realm(static_cast<int>(raw.p.size()));
    Pmv p = validate_pmv(std::move(raw.p), realm);
    Pmv q = validate_pmv(std::move(raw.q), realm);
    if (raw.outcome < 1 || raw.outcome > realm.size())
      throw DomainViolation("outcome " + std::to_string(raw.outcome) +
                            " outside realm of size " +
                            std::to_string(realm.size()));
    out.push_back(ForecastRecord{raw.t, std::move(p), std::move(q),
                                 OutcomeIndex(raw.outcome)});
  } catch (const Error& e) {
    throw ValidationError(line, e.what());
  }
}

inline bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::vector<ForecastRecord> load_jsonl(std::istream& in) {
  std::vector<ForecastRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded()) throw ParseError(line_no, "malformed JSON");
    if (!rec.is_object()) throw ParseError(line_no, "expected a JSON object");
    RawRecord raw;
    if (!rec.contains("t") || !rec["t"].is_number_integer())
      throw ParseError(line_no, "missing or non-integer field \"t\"");
    if (!rec.contains("outcome") || !rec["outcome"].is_number_integer())
      throw ParseError(line_no, "missing or non-integer field \"outcome\"");
    raw.t = rec["t"].get<std::int64_t>();
    raw.outcome = rec["outcome"].get<int>();
    for (const char* key : {"p", "q"}) {
      if (!rec.contains(key) || !rec[key].is_array())
        throw ParseError(line_no,
                         std::string("missing or non-array field \"") + key +
                             "\"");
      auto& dst = key[0] == 'p' ? raw.p : raw.q;
      for (const auto& v : rec[key]) {
        if (!v.is_number())
          throw ParseError(line_no,
                           std::string("non-numeric entry in \"") + key + "\"");
        dst.push_back(v.get<double>());
      }
    }
    append_record(out, std::move(raw), line_no);
  }
  return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline double parse_double_field(const std::string& s, std::size_t line,
                                 const std::string& name) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "field " + name + " is not a number: \"" + s + "\"");
  return value;
}

inline std::int64_t parse_int_field(const std::string& s, std::size_t line,
                                    const std::string& name) {
  std::int64_t value = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line,
                     "field " + name + " is not an integer: \"" + s + "\"");
  return value;
}

inline std::vector<ForecastRecord> load_csv(std::istream& in) {
  std::vector<ForecastRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (n == 0) {
      // Header: t,outcome,p_1,...,p_N,q_1,...,q_N
      if (fields.size() < 6 || fields.size() % 2 != 0 || fields[0] != "t" ||
          fields[1] != "outcome")
        throw ParseError(line_no, "malformed series header");
      n = (fields.size() - 2) / 2;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string pi = "p_" + std::to_string(i + 1);
        const std::string qi = "q_" + std::to_string(i + 1);
        if (fields[2 + i] != pi || fields[2 + n + i] != qi)
          throw ParseError(line_no, "malformed series header");
      }
      continue;
    }
    if (fields.size() != 2 + 2 * n)
      throw ParseError(line_no, "expected " + std::to_string(2 + 2 * n) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    RawRecord raw;
    raw.t = parse_int_field(fields[0], line_no, "t");
    raw.outcome =
        static_cast<int>(parse_int_field(fields[1], line_no, "outcome"));
    for (std::size_t i = 0; i < n; ++i)
      raw.p.push_back(parse_double_field(fields[2 + i], line_no,
                                         "p_" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < n; ++i)
      raw.q.push_back(parse_double_field(fields[2 + n + i], line_no,
                                         "q_" + std::to_string(i + 1)));
    append_record(out, std::move(raw), line_no);
  }
  return out;
}

}  // namespace detail

inline std::vector<ForecastRecord> load_forecast_series(std::istream& in,
                                                        SeriesFormat format) {
  return format == SeriesFormat::Jsonl ? detail::load_jsonl(in)
                                       : detail::load_csv(in);
}

// ---------------------------------------------------------------------------
// Evaluation

// Sequential fold over the series. Signs and variances are recomputed from
// each step's own forecasts, so time-varying forecasters are scored with
// forecast-time information only.
inline EvaluationTrace run_sequential_evaluation(
    const std::vector<ForecastRecord>& records) {
  EvaluationTrace trace;
  trace.steps.reserve(records.size());
  double cum_s_p = 0.0, cum_s_q = 0.0, cum_award_p = 0.0, cum_award_q = 0.0;
  for (const ForecastRecord& r : records) {
    TraceStep step;
    step.t = r.t;
    step.s_p = total_log_score(r.p, r.outcome).total;
    step.s_q = total_log_score(r.q, r.outcome).total;
    step.ng_p = net_gain(r.p, r.outcome);
    step.ng_q = net_gain(r.q, r.outcome);
    const ExchangeAward award = pareto_awards(r.p, r.q, r.outcome);
    step.award_p = award.award_to_p;
    step.award_q = award.award_to_q;
    step.degen_p = award.degenerate_p;
    step.degen_q = award.degenerate_q;
    step.cum_s_p = cum_s_p += step.s_p;
    step.cum_s_q = cum_s_q += step.s_q;
    step.cum_award_p = cum_award_p += step.award_p;
    step.cum_award_q = cum_award_q += step.award_q;
    trace.steps.push_back(step);
  }
  return trace;
}

// Frequency of P_p[S(X,q)] > P_q[S(X,q)] over independent uniform simplex
// pairs. Trial k draws p and q from substreams 2k and 2k+1, so the result
// is a pure function of (n_dims, trials, seed) no matter how trials are
// scheduled.
inline SurveyResult survey_cross_prevision_exceedance(int n_dims,
                                                      std::int64_t trials,
                                                      std::uint64_t seed) {
  if (n_dims < 2)
    throw DomainViolation("survey requires n_dims >= 2, got " +
                          std::to_string(n_dims));
  if (trials < 1)
    throw DomainViolation("survey requires trials >= 1, got " +
                          std::to_string(trials));
  const Realm realm(n_dims);
  std::int64_t exceed = 0;
  for (std::int64_t k = 0; k < trials; ++k) {
    const auto pair_base = static_cast<std::uint64_t>(k) * 2;
    const Pmv p = sample_simplex_uniform(realm, seed, pair_base);
    const Pmv q = sample_simplex_uniform(realm, seed, pair_base + 1);
    if (score_prevision_cross(p, q) > score_prevision_own(q)) ++exceed;
  }
  SurveyResult result;
  result.trials = trials;
  result.exceed_count = exceed;
  result.proportion =
      static_cast<double>(exceed) / static_cast<double>(trials);
  result.seed = seed;
  result.n_dims = n_dims;
  return result;
}

// ---------------------------------------------------------------------------
// Trace emission

// 17 significant digits: lossless double round trip through text.
inline void emit_trace_csv(const EvaluationTrace& trace, std::ostream& out) {
  const auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "t,s_p,s_q,ng_p,ng_q,award_p,award_q,degen_p,degen_q,"
         "cum_s_p,cum_s_q,cum_award_p,cum_award_q\n";
  for (const TraceStep& s : trace.steps) {
    out << s.t << ',' << fmt(s.s_p) << ',' << fmt(s.s_q) << ',' << fmt(s.ng_p)
        << ',' << fmt(s.ng_q) << ',' << fmt(s.award_p) << ',' << fmt(s.award_q)
        << ',' << (s.degen_p ? 1 : 0) << ',' << (s.degen_q ? 1 : 0) << ','
        << fmt(s.cum_s_p) << ',' << fmt(s.cum_s_q) << ',' << fmt(s.cum_award_p)
        << ',' << fmt(s.cum_award_q) << '\n';
  }
  out.flush();
  if (!out) throw SinkError("trace emission failed");
}

}  // namespace scorex
