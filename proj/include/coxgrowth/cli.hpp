#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxgrowth/ball.hpp"
#include "coxgrowth/chamber_geometry.hpp"
#include "coxgrowth/classification.hpp"
#include "coxgrowth/coxeter_matrix.hpp"
#include "coxgrowth/report.hpp"
#include "coxgrowth/series.hpp"
#include "coxgrowth/sphere_stats.hpp"

// Command implementations behind tools/coxgrowth. Each command renders its
// whole output into a string; run() writes it once at the end.

namespace coxgrowth::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoError = 2,
  kValidationError = 3,
  kResourceLimit = 4,
  kVerifyFailure = 5,
  kCoefficientDisagreement = 6,
};

struct RunConfig {
  std::string command;
  std::string matrix_path;
  std::optional<unsigned> depth;
  std::size_t cap = kDefaultElementCap;
  std::string format = "json";
  std::string out_path;
  std::vector<std::string> suite;  // empty: everything
  std::vector<Rational> eval;      // empty: 1/(n-1) and 1/(n-2)
  bool hypothesis_gate = true;
};

struct Outcome {
  std::string output;
  int exit_code = kOk;
  std::vector<std::string> summary;  // human-readable, goes to stderr
};

/// 12 for rank <= 3, 10 for rank 4, 8 from rank 5 on.
inline unsigned default_depth(unsigned rank) { return rank <= 3 ? 12 : rank == 4 ? 10 : 8; }

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"L32", "L33", "L34", "L35", "L45", "k-ratio", "P29", "C210", "L211", "L24"};
  return names;
}

inline std::vector<std::string> parse_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::vector<Rational> parse_eval(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : parse_list(text)) out.push_back(parse_rational(item));
  return out;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return kIoError;
    case ErrorCode::ResourceLimit:
    case ErrorCode::DepthExceeded: return kResourceLimit;
    default: return kValidationError;
  }
}

namespace detail {

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void require_json(const RunConfig& cfg) {
  if (cfg.format != "json")
    throw Error(ErrorCode::InvalidArgument, "--format " + cfg.format + " is not available for " + cfg.command);
}

inline unsigned depth_for(const RunConfig& cfg, const CoxeterMatrix& M) {
  return cfg.depth.value_or(default_depth(M.rank()));
}

inline bool is_hypothesis_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::HypothesisViolated:
    case ErrorCode::NotUniform:
    case ErrorCode::RankTooSmall:
    case ErrorCode::DiagramNotComplete:
    case ErrorCode::RequiresMGreaterThan3: return true;
    default: return false;
  }
}

}  // namespace detail

inline Outcome cmd_info(const RunConfig& cfg, const CoxeterMatrix& M) {
  detail::require_json(cfg);
  const auto props = diagram_properties(M);
  const auto label = classify(M, GeneratorSet::all(M.rank()));
  const auto subsets = spherical_subsets(M);

  Json out;
  out["command"] = "info";
  out["rank"] = M.rank();
  out["matrix"] = matrix_to_json(M);
  out["two_spherical"] = props.two_spherical;
  out["complete_diagram"] = props.complete_diagram;
  if (props.uniform_label)
    out["uniform"] = order_to_string(*props.uniform_label);
  else
    out["uniform"] = nullptr;
  out["type"] = label.name();
  out["finite"] = label.finite();
  if (label.finite()) out["order"] = bigint_json(label.order());
  Json by_size = Json::array();
  Json list = Json::array();
  for (const auto& sub : subsets) {
    const std::size_t k = sub.subset.size();
    while (by_size.size() <= k) by_size.push_back(0);
    by_size[k] = by_size[k].get<std::size_t>() + 1;
    list.push_back(subset_json(sub));
  }
  out["spherical_subsets_by_size"] = std::move(by_size);
  out["spherical_subsets"] = std::move(list);
  return {detail::dump(out), kOk, {"rank " + std::to_string(M.rank()) + ", type " + label.name()}};
}

inline Outcome cmd_ball(const RunConfig& cfg, const CoxeterMatrix& M) {
  const Ball ball = Ball::build(M, detail::depth_for(cfg, M), cfg.cap);
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "i,w,desc\n";
    for (ElementId w = 0; w < ball.size(); ++w) {
      std::string desc;
      for (Generator s : ball.descents(w).members()) desc += (desc.empty() ? "" : ";") + std::to_string(s);
      os << ball.length(w) << ',' << ball.element(w).str() << ',' << desc << '\n';
    }
  } else {
    detail::require_json(cfg);
    write_ball_jsonl(os, ball);
  }
  return {os.str(), kOk, {std::to_string(ball.size()) + " elements up to length " + std::to_string(ball.depth())}};
}

inline Outcome cmd_stats(const RunConfig& cfg, const CoxeterMatrix& M) {
  const unsigned N = detail::depth_for(cfg, M);
  const SphereStats st = compute_stats(Ball::build(M, N, cfg.cap));
  std::ostringstream os;
  if (cfg.format == "csv") {
    write_stats_csv(os, st);
  } else {
    detail::require_json(cfg);
    Json out;
    out["command"] = "stats";
    out["matrix"] = matrix_to_json(M);
    out["depth"] = N;
    out["rows"] = stats_json(st);
    os << detail::dump(out);
  }
  return {os.str(), kOk, {"c_" + std::to_string(N) + " = " + std::to_string(st.c.back())}};
}

inline Outcome cmd_verify(const RunConfig& cfg, const CoxeterMatrix& M) {
  const auto& known = suite_names();
  std::vector<std::string> suite = cfg.suite.empty() ? known : cfg.suite;
  for (const auto& name : suite)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw Error(ErrorCode::InvalidArgument, "unknown verifier '" + name + "'");

  const unsigned N = detail::depth_for(cfg, M);
  const Ball ball = Ball::build(M, N, cfg.cap);
  const SphereStats st = compute_stats(ball);
  const auto props = diagram_properties(M);
  const ChamberSystem cs(ball);

  auto run_one = [&](const std::string& name, Gate gate) -> VerificationReport {
    if (name == "L32") return verify_L32(st, gate);
    if (name == "L33") return verify_L33(st, gate);
    if (name == "L34") return verify_L34(st, gate);
    if (name == "L35") return verify_L35(st, gate);
    if (name == "L45") return verify_L45(st, props, gate);
    if (name == "k-ratio") {
      if (!st.m) throw Error(ErrorCode::NotUniform, "k-ratio needs a uniform label m");
      return verify_descent_ratio(st, compute_k(st.n, *st.m), gate);
    }
    if (name == "P29") return verify_P29(cs, gate);
    if (name == "C210") return verify_C210(cs, gate);
    if (name == "L211") return verify_L211(cs, gate);
    return verify_L24_uniqueness(ball, gate, 1'000'000);
  };

  Outcome result;
  Json reports = Json::array();
  std::size_t held = 0, failed = 0, skipped = 0, diagnostic = 0;
  for (const auto& name : suite) {
    auto skip = [&](const char* why, const Error& e) {
      reports.push_back({{"lemma", name}, {"verdict", why}, {"reason", e.what()}});
      result.summary.push_back(name + ": " + why + ": " + e.what());
      ++skipped;
    };
    try {
      const VerificationReport rep = run_one(name, Gate::Enforce);
      reports.push_back(report_json(rep));
      (rep.holds() ? held : failed) += 1;
      result.summary.push_back(name + ": " + (rep.holds() ? "holds" : "FAILS") + " (" + std::to_string(rep.checked) +
                               " checked, " + std::to_string(rep.skipped) + " skipped)");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RangeEmpty) {
        skip("skipped (range)", e);
      } else if (!detail::is_hypothesis_error(e.code())) {
        throw;
      } else if (cfg.hypothesis_gate) {
        skip("skipped (hypothesis)", e);
      } else {
        try {
          const VerificationReport rep = run_one(name, Gate::Diagnostic);
          Json j = report_json(rep);
          j["verdict"] = rep.holds() ? "holds" : "counterexample";
          j["outside_hypotheses"] = e.what();
          reports.push_back(std::move(j));
          ++diagnostic;
          result.summary.push_back(name + " (diagnostic): " +
                                   (rep.holds() ? std::string("no counterexample")
                                                : std::to_string(rep.violations) + " counterexample(s)"));
        } catch (const Error& inner) {
          if (!detail::is_hypothesis_error(inner.code()) && inner.code() != ErrorCode::RangeEmpty) throw;
          skip("skipped (hypothesis)", inner);
        }
      }
    }
  }

  Json out;
  out["command"] = "verify";
  out["matrix"] = matrix_to_json(M);
  out["depth"] = N;
  out["hypothesis_gate"] = cfg.hypothesis_gate;
  out["reports"] = std::move(reports);
  out["summary"] = {{"holds", held}, {"fails", failed}, {"skipped", skipped}, {"diagnostic", diagnostic}};

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "lemma,verdict,checked,skipped,violations\n";
    for (const auto& r : out["reports"])
      os << r["lemma"].get<std::string>() << ',' << r["verdict"].get<std::string>() << ','
         << r.value("checked", std::uint64_t{0}) << ',' << r.value("skipped", std::uint64_t{0}) << ','
         << r.value("violations", std::uint64_t{0}) << '\n';
    result.output = os.str();
  } else {
    detail::require_json(cfg);
    result.output = detail::dump(out);
  }
  result.exit_code = failed > 0 ? kVerifyFailure : kOk;
  return result;
}

inline Outcome cmd_series(const RunConfig& cfg, const CoxeterMatrix& M) {
  detail::require_json(cfg);
  const unsigned N = detail::depth_for(cfg, M);
  const RationalFunction f = rational_growth_series(M);
  const auto coeffs = taylor_coefficients(f, N);
  const SphereStats st = compute_stats(Ball::build(M, N, cfg.cap));
  bool agree = true;
  for (unsigned i = 0; i <= N; ++i) agree = agree && coeffs[i] == BigInt(st.c[i]);

  std::vector<ConvergenceVerdict> verdicts;
  const auto defaults = theorem_verdicts(M, f, st);
  if (cfg.eval.empty()) {
    verdicts = defaults;
  } else {
    for (const auto& t0 : cfg.eval) {
      auto it = std::find_if(defaults.begin(), defaults.end(), [&](const auto& v) { return v.t0 == t0; });
      verdicts.push_back(it != defaults.end() ? *it : finiteness_verdict(f, t0));
    }
  }

  Json out;
  out["command"] = "series";
  out["matrix"] = matrix_to_json(M);
  out["depth"] = N;
  out["series"] = series_json(f, coeffs);
  Json enumerated = Json::array();
  for (auto c : st.c) enumerated.push_back(c);
  out["enumerated"] = std::move(enumerated);
  out["coefficients_agree"] = agree;
  Json vs = Json::array();
  Outcome result;
  for (const auto& v : verdicts) {
    vs.push_back(verdict_json(v));
    result.summary.push_back("p(" + to_string(v.t0) + ") " +
                             (v.finite ? "= " + to_string(*v.value) : std::string("diverges")));
  }
  out["verdicts"] = std::move(vs);
  result.output = detail::dump(out);
  result.exit_code = agree ? kOk : kCoefficientDisagreement;
  if (!agree) result.summary.push_back("closed form disagrees with enumeration");
  return result;
}

/// Loads the matrix, dispatches, writes output to cfg.out_path or `out`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome result;
  try {
    if (cfg.format != "json" && cfg.format != "csv")
      throw Error(ErrorCode::InvalidArgument, "unknown format '" + cfg.format + "'");
    if (cfg.cap < 1) throw Error(ErrorCode::InvalidArgument, "--cap must be at least 1");
    const CoxeterMatrix M = load_matrix(cfg.matrix_path);
    if (cfg.command == "info") result = cmd_info(cfg, M);
    else if (cfg.command == "ball") result = cmd_ball(cfg, M);
    else if (cfg.command == "stats") result = cmd_stats(cfg, M);
    else if (cfg.command == "verify") result = cmd_verify(cfg, M);
    else if (cfg.command == "series") result = cmd_series(cfg, M);
    else throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  if (cfg.out_path.empty()) {
    out << result.output;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file || !(file << result.output)) {
      err << "error (IoError): cannot write " << cfg.out_path << '\n';
      return kIoError;
    }
  }
  for (const auto& line : result.summary) err << line << '\n';
  return result.exit_code;
}

}  // namespace coxgrowth::cli
