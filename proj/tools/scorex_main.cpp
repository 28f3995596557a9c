// scorex command-line driver: score, complex, gains, exchange, run, survey,
// and bregman-diag subcommands over inline pmvs or forecast series files.
//
// Exit codes: 0 success, 1 validation/parse failure, 2 usage error.
// File outputs are written to a temporary sibling and renamed into place,
// so a failing run never leaves a partial output file.

#include <cstdint>
#include <cstdlib>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scorex/scorex.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

scorex::Pmv parse_pmv(const std::string& flag, const std::string& text) {
  std::vector<double> weights;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = comma == std::string::npos
                                ? text.substr(start)
                                : text.substr(start, comma - start);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw UsageError(flag + ": \"" + tok + "\" is not a number");
    weights.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (weights.size() < 2)
    throw UsageError(flag + ": need at least two comma-separated weights");
  return scorex::validate_pmv(weights,
                              scorex::Realm(static_cast<int>(weights.size())));
}

// Runs the writer against stdout or a temporary file renamed into place.
void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw scorex::SinkError("cannot open " + tmp.string());
      writer(out);
      out.flush();
      if (!out) throw scorex::SinkError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

void emit_json(const std::string& path, const json& value) {
  with_output(path, [&](std::ostream& out) { out << value.dump(2) << '\n'; });
}

json breakdown_json(const scorex::ScoreBreakdown& b) {
  return json{{"log_component", b.log_component},
              {"complementary_component", b.complementary_component},
              {"total", b.total}};
}

json previsions_json(const scorex::FourPrevisions& fp) {
  return json{{"p_own", fp.p_own},
              {"p_other", fp.p_other},
              {"q_own", fp.q_own},
              {"q_other", fp.q_other}};
}

json complex_json(const scorex::KullbackComplex& kc) {
  return json{{"total_symmetric", kc.total_symmetric},
              {"d_generator", kc.d_generator},
              {"delta_generator", kc.delta_generator},
              {"cross_generator", kc.cross_generator}};
}

const char* candidate_name(scorex::BregmanCandidate c) {
  switch (c) {
    case scorex::BregmanCandidate::KlD:
      return "kl-d";
    case scorex::BregmanCandidate::Delta:
      return "delta";
    default:
      return "cross-h";
  }
}

const char* verdict_name(scorex::BregmanVerdict v) {
  switch (v) {
    case scorex::BregmanVerdict::BregmanConsistent:
      return "bregman-consistent";
    case scorex::BregmanVerdict::ConstantGap:
      return "constant-gap";
    default:
      return "divergent-gap";
  }
}

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed) {
  if (seed_opt->count() > 0) return seed;
  if (const char* env = std::getenv("SCOREX_SEED")) {
    std::uint64_t value = 0;
    const std::string text(env);
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw UsageError("SCOREX_SEED is not an unsigned integer: \"" + text +
                       "\"");
    return value;
  }
  throw UsageError("survey needs --seed or the SCOREX_SEED variable");
}

std::vector<scorex::ForecastRecord> load_series(const std::string& path,
                                                scorex::SeriesFormat format) {
  if (path == "-") return scorex::load_forecast_series(std::cin, format);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scorex::Error("cannot open input " + path);
  return scorex::load_forecast_series(in, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparative evaluation of two probability forecasters under "
               "the total log score"};
  app.require_subcommand(1);

  std::string p_text, q_text, input = "-", output = "-", format = "jsonl";
  std::string candidate = "all", deltas_text = "1e-2,1e-3,1e-4,1e-5,1e-6";
  int outcome = 1, n_dims = 3;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  double q_scalar = 0.5;
  bool per_component = false;

  auto* score = app.add_subcommand("score", "Score one forecast record");
  score->add_option("--p", p_text, "p weights, comma separated")->required();
  score->add_option("--q", q_text, "q weights, comma separated")->required();
  score->add_option("--outcome", outcome, "observed outcome index, 1-based")
      ->required();
  score->add_option("--output", output, "output path or - for stdout");

  auto* complex =
      app.add_subcommand("complex", "Divergence complex and previsions");
  complex->add_option("--p", p_text)->required();
  complex->add_option("--q", q_text)->required();
  complex->add_flag("--per-component", per_component,
                    "also report the two score components separately");
  complex->add_option("--output", output);

  auto* gains = app.add_subcommand("gains", "Realized and expected gains");
  gains->add_option("--p", p_text)->required();
  gains->add_option("--q", q_text)->required();
  gains->add_option("--outcome", outcome)->required();
  gains->add_option("--output", output);

  auto* exchange =
      app.add_subcommand("exchange", "Variance table and Pareto awards");
  exchange->add_option("--p", p_text)->required();
  exchange->add_option("--q", q_text)->required();
  exchange->add_option("--outcome", outcome)->required();
  exchange->add_option("--output", output);

  auto* run = app.add_subcommand("run", "Evaluate a forecast series");
  run->add_option("--input", input, "series path or - for stdin");
  run->add_option("--output", output, "trace CSV path or - for stdout");
  run->add_option("--format", format, "input format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  auto* survey =
      app.add_subcommand("survey", "Cross-prevision exceedance survey");
  survey->add_option("--n-dims", n_dims, "realm size");
  survey->add_option("--trials", trials, "number of sampled pairs");
  auto* seed_opt = survey->add_option("--seed", seed, "RNG seed");
  survey->add_option("--output", output);

  auto* bregman =
      app.add_subcommand("bregman-diag", "Bregman limit-gap diagnostics");
  bregman->add_option("--q-scalar", q_scalar, "expansion point in (0,1)")
      ->required();
  bregman->add_option("--deltas", deltas_text,
                      "comma-separated decreasing step sizes");
  bregman->add_option("--candidate", candidate, "kl-d, delta, cross-h or all")
      ->check(CLI::IsMember({"kl-d", "delta", "cross-h", "all"}));
  bregman->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (score->parsed()) {
      const scorex::Pmv p = parse_pmv("--p", p_text);
      const scorex::Pmv q = parse_pmv("--q", q_text);
      const scorex::OutcomeIndex o(outcome);
      emit_json(output,
                json{{"outcome", outcome},
                     {"p", breakdown_json(scorex::total_log_score(p, o))},
                     {"q", breakdown_json(scorex::total_log_score(q, o))}});
    } else if (complex->parsed()) {
      const scorex::Pmv p = parse_pmv("--p", p_text);
      const scorex::Pmv q = parse_pmv("--q", q_text);
      const scorex::FourPrevisions fp = scorex::four_fundamental_previsions(p, q);
      const scorex::KullbackComplex kc = scorex::complex_from_previsions(fp);
      json out{{"previsions", previsions_json(fp)},
               {"complex", complex_json(kc)},
               {"previsions_from_complex",
                previsions_json(scorex::previsions_from_complex(kc))}};
      if (per_component) {
        const scorex::ComponentComplexes cc =
            scorex::kullback_complex_components(p, q);
        out["components"] = json{
            {"log",
             json{{"previsions",
                   previsions_json(scorex::four_fundamental_previsions(
                       p, q, scorex::ScorePart::Log))},
                  {"complex", complex_json(cc.log_part)}}},
            {"complementary",
             json{{"previsions",
                   previsions_json(scorex::four_fundamental_previsions(
                       p, q, scorex::ScorePart::Complementary))},
                  {"complex", complex_json(cc.complementary_part)}}}};
      }
      emit_json(output, out);
    } else if (gains->parsed()) {
      const scorex::Pmv p = parse_pmv("--p", p_text);
      const scorex::Pmv q = parse_pmv("--q", q_text);
      const scorex::GainSummary s =
          scorex::gain_summary(p, q, scorex::OutcomeIndex(outcome));
      emit_json(output, json{{"ng_p", s.ng_p},
                             {"ng_q", s.ng_q},
                             {"cg_pq", s.cg_pq},
                             {"exp_ng_p_by_q", s.exp_ng_p_by_q},
                             {"exp_ng_q_by_p", s.exp_ng_q_by_p},
                             {"exp_cg_p", s.exp_cg_p},
                             {"exp_cg_q", s.exp_cg_q}});
    } else if (exchange->parsed()) {
      const scorex::Pmv p = parse_pmv("--p", p_text);
      const scorex::Pmv q = parse_pmv("--q", q_text);
      const scorex::VarianceTable vt = scorex::variance_table(p, q);
      const scorex::ExchangeAward award =
          scorex::pareto_awards(p, q, scorex::OutcomeIndex(outcome));
      emit_json(
          output,
          json{{"variances", json{{"v_pp", vt.v_pp},
                                  {"v_pq", vt.v_pq},
                                  {"v_qq", vt.v_qq},
                                  {"v_qp", vt.v_qp},
                                  {"sd_pp", vt.sd_pp},
                                  {"sd_pq", vt.sd_pq},
                                  {"sd_qq", vt.sd_qq},
                                  {"sd_qp", vt.sd_qp}}},
               {"award", json{{"award_to_p", award.award_to_p},
                              {"award_to_q", award.award_to_q},
                              {"sign_for_p", award.sign_for_p},
                              {"sign_for_q", award.sign_for_q},
                              {"degenerate_p", award.degenerate_p},
                              {"degenerate_q", award.degenerate_q}}}});
    } else if (run->parsed()) {
      const scorex::SeriesFormat fmt = format == "csv"
                                           ? scorex::SeriesFormat::Csv
                                           : scorex::SeriesFormat::Jsonl;
      const scorex::EvaluationTrace trace =
          scorex::run_sequential_evaluation(load_series(input, fmt));
      with_output(output, [&](std::ostream& out) {
        scorex::emit_trace_csv(trace, out);
      });
    } else if (survey->parsed()) {
      const std::uint64_t resolved = resolve_seed(seed_opt, seed);
      const scorex::SurveyResult result =
          scorex::survey_cross_prevision_exceedance(n_dims, trials, resolved);
      emit_json(output, json{{"n_dims", result.n_dims},
                             {"trials", result.trials},
                             {"exceed_count", result.exceed_count},
                             {"proportion", result.proportion},
                             {"seed", result.seed}});
    } else if (bregman->parsed()) {
      std::vector<double> deltas;
      std::size_t start = 0;
      while (start <= deltas_text.size()) {
        const std::size_t comma = deltas_text.find(',', start);
        const std::string tok =
            comma == std::string::npos
                ? deltas_text.substr(start)
                : deltas_text.substr(start, comma - start);
        deltas.push_back(std::strtod(tok.c_str(), nullptr));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      std::vector<scorex::BregmanCandidate> candidates;
      if (candidate == "all")
        candidates = {scorex::BregmanCandidate::KlD,
                      scorex::BregmanCandidate::Delta,
                      scorex::BregmanCandidate::CrossH};
      else if (candidate == "kl-d")
        candidates = {scorex::BregmanCandidate::KlD};
      else if (candidate == "delta")
        candidates = {scorex::BregmanCandidate::Delta};
      else
        candidates = {scorex::BregmanCandidate::CrossH};
      json table = json::array();
      for (const auto c : candidates) {
        const scorex::BregmanDiagnostic diag =
            scorex::bregman_limit_gap(c, q_scalar, deltas);
        table.push_back(json{{"candidate", candidate_name(diag.candidate)},
                             {"deltas", diag.deltas},
                             {"gaps", diag.gaps},
                             {"verdict", verdict_name(diag.verdict)}});
      }
      emit_json(output, json{{"q_scalar", q_scalar}, {"diagnostics", table}});
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const scorex::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
