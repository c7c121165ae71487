#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "coxgrowth/chamber_geometry.hpp"
#include "coxgrowth/classification.hpp"
#include "coxgrowth/series.hpp"
#include "coxgrowth/sphere_stats.hpp"

// JSON and CSV encodings of the library's results. Objects use ordered_json
// so key order, and therefore output bytes, never depend on hashing.

namespace coxgrowth {

using Json = nlohmann::ordered_json;

/// Always "p/q", including q = 1.
inline std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// A JSON integer when it fits in 64 bits, otherwise its decimal string.
inline Json bigint_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Json polynomial_json(const Polynomial& p) {
  Json out = Json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back(bigint_json(p.coefficient(k)));
  return out;
}

// Lemma reports: {"lemma", "range", "verdict", "failures", "checked", "skipped"}.
// Counting verifiers compare integers, so lhs/rhs are integers when they can be.
inline Json rational_value_json(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return bigint_json(boost::multiprecision::numerator(r));
  return rational_string(r);
}

inline Json report_json(const VerificationReport& rep) {
  Json out;
  out["lemma"] = rep.name;
  if (rep.range)
    out["range"] = Json::array({rep.range->first, rep.range->second});
  else
    out["range"] = nullptr;
  out["verdict"] = rep.holds() ? "holds" : "fails";
  Json failures = Json::array();
  for (const auto& c : rep.checks) {
    if (c.holds) continue;
    Json f;
    f["i"] = c.i;
    f["lhs"] = rational_value_json(c.lhs);
    f["rhs"] = rational_value_json(c.rhs);
    f["relation"] = c.relation;
    if (!c.detail.empty()) f["detail"] = c.detail;
    failures.push_back(std::move(f));
  }
  out["failures"] = std::move(failures);
  out["violations"] = rep.violations;
  out["checked"] = rep.checked;
  out["skipped"] = rep.skipped;
  if (rep.diagnostic) out["diagnostic"] = true;
  return out;
}

inline Json stats_json(const SphereStats& st) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < st.c.size(); ++i) rows.push_back({{"i", i}, {"c", st.c[i]}, {"d", st.d[i]}});
  return rows;
}

inline void write_stats_csv(std::ostream& out, const SphereStats& st) {
  out << "i,c_i,d_i\n";
  for (std::size_t i = 0; i < st.c.size(); ++i) out << i << ',' << st.c[i] << ',' << st.d[i] << '\n';
}

/// {"num", "den", "coeffs"}, ascending degree.
inline Json series_json(const RationalFunction& f, const std::vector<BigInt>& coeffs) {
  Json out;
  out["num"] = polynomial_json(f.num);
  out["den"] = polynomial_json(f.den);
  Json c = Json::array();
  for (const auto& x : coeffs) c.push_back(bigint_json(x));
  out["coeffs"] = std::move(c);
  return out;
}

inline Json quotient_json(const QuotientReport& q) {
  Json out;
  out["mode"] = to_string(q.mode);
  out["t"] = rational_string(q.t0);
  out["bound"] = rational_string(q.bound);
  out["range"] = Json::array({q.i_min, q.i_max});
  out["min_ratio"] = rational_string(q.min_ratio);
  out["max_ratio"] = rational_string(q.max_ratio);
  out["holds"] = q.holds;
  Json ratios = Json::array();
  for (const auto& [i, r] : q.ratios) ratios.push_back({{"i", i}, {"ratio", rational_string(r)}});
  out["ratios"] = std::move(ratios);
  return out;
}

inline Json verdict_json(const ConvergenceVerdict& v) {
  Json out;
  out["t"] = rational_string(v.t0);
  out["verdict"] = v.finite ? "finite" : "infinite";
  if (v.value) out["value"] = rational_string(*v.value);
  if (v.pole) out["pole"] = {{"lo", rational_string(v.pole->lo)}, {"hi", rational_string(v.pole->hi)}};
  out["justification"] = v.justification;
  if (v.corroboration) out["quotient_criterion"] = quotient_json(*v.corroboration);
  return out;
}

inline Json subset_json(const SphericalSubset& sub) {
  Json members = Json::array();
  for (Generator s : sub.subset.members()) members.push_back(s);
  return {{"subset", std::move(members)}, {"type", sub.label.name()}, {"order", bigint_json(sub.label.order())}};
}

}  // namespace coxgrowth
