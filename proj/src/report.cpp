#include "pslab/report.hpp"

#include <boost/version.hpp>

#include <cstdio>
#include <sstream>

namespace pslab {

using nlohmann::json;

json versions_json() {
  return json{{"pslab", kVersion},
              {"compiler", __VERSION__},
              {"boost", BOOST_LIB_VERSION},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

json to_json(const CountReport& r) {
  json j{{"c", r.c.str()},
         {"c_in_theorem_range", r.c.in_theorem_range()},
         {"x", r.x},
         {"variant", to_string(r.variant)},
         {"method", to_string(r.method)},
         {"count", r.count},
         {"z", r.z},
         {"s1", nullptr},
         {"s2", nullptr},
         {"wall_time", r.wall_time}};
  if (r.s1) j["s1"] = *r.s1;
  if (r.s2) j["s2"] = *r.s2;
  return j;
}

json to_json(const ZSplit& s) {
  return json{{"s1", s.s1}, {"s2", s.s2}, {"z", s.z}, {"total", s.total}};
}

json to_json(const SigmaInterval& s) {
  return json{{"lo", s.lo},
              {"hi", s.hi},
              {"width", s.width()},
              {"prime_limit", s.prime_limit},
              {"partial_lo", s.partial.lo},
              {"partial_hi", s.partial.hi},
              {"contains_reference", s.contains(kSigmaReference)}};
}

json to_json(const AsymReport& r) {
  return json{{"x", r.x},
              {"c", r.c.str()},
              {"variant", to_string(r.variant)},
              {"exact_count", r.exact_count},
              {"main_term", r.main_term},
              {"ratio", r.ratio},
              {"scaled_error", r.scaled_error},
              {"in_theorem_range", r.in_theorem_range}};
}

json to_json(const ExponentPair& p) {
  return json{{"kappa", p.kappa.str()},
              {"lambda", p.lambda.str()},
              {"kappa_decimal", p.kappa.to_double()},
              {"lambda_decimal", p.lambda.to_double()}};
}

json to_json(const ScanStats& s) {
  return json{{"H", s.H},
              {"grid_size", s.grid_size},
              {"max_error", s.max_error},
              {"mean_error", s.mean_error},
              {"max_violation", s.max_violation},
              {"max_imag", s.max_imag},
              {"min_majorant", s.min_majorant}};
}

json to_json(const BoundReport& r) {
  return json{{"measured", r.measured}, {"predicted", r.predicted}, {"ratio", r.ratio},
              {"trivial", r.trivial},   {"eps", r.eps},             {"params", r.params}};
}

json to_json(const PrimeSumReport& r) {
  return json{{"H", r.H},         {"s9", r.s9},       {"chebyshev", r.chebyshev},
              {"scale", r.scale}, {"ratio", r.ratio}, {"trivial", r.trivial}};
}

json to_json(const HBCheck& r) {
  return json{{"k", r.k},
              {"n_max", r.n_max},
              {"z_cut", r.z_cut},
              {"max_abs_error", r.max_abs_error},
              {"max_rel_error", r.max_rel_error},
              {"mismatches", r.mismatches}};
}

json to_json(const WindowChoice& w) {
  json conditions = json::array();
  for (const auto& cond : w.check.conditions) {
    conditions.push_back(json{{"name", cond.name}, {"lhs", cond.lhs}, {"rhs", cond.rhs}, {"holds", cond.holds}});
  }
  return json{{"x", w.x},
              {"c", w.c.str()},
              {"d", w.d},
              {"N", w.N},
              {"N1", w.N1},
              {"H1", w.H1},
              {"eps", w.eps},
              {"H", w.H},
              {"h1_within_half_H", w.h1_within_half_H},
              {"P", w.check.P},
              {"P1", w.check.P1},
              {"U", w.check.U},
              {"V", w.check.V},
              {"Z", w.check.Z},
              {"conditions", conditions},
              {"all_hold", w.check.all_hold}};
}

json make_envelope(const std::string& command, const json& config, const json& result, double wall_time) {
  return json{{"schema", kSchemaId},
              {"command", command},
              {"config", config},
              {"versions", versions_json()},
              {"wall_time", wall_time},
              {"result", result}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(columns);
  for (const auto& row : rows) line(row);
  return out.str();
}

CsvTable count_csv(const std::vector<CountReport>& reports) {
  CsvTable t{{"c", "x", "variant", "method", "count", "z", "wall_time"}, {}};
  for (const auto& r : reports) {
    t.rows.push_back({r.c.str(), std::to_string(r.x), to_string(r.variant), to_string(r.method),
                      std::to_string(r.count), format_double(r.z), format_double(r.wall_time)});
  }
  return t;
}

CsvTable asym_csv(const std::vector<AsymReport>& reports) {
  CsvTable t{{"x", "count", "main", "ratio", "scaled_error"}, {}};
  for (const auto& r : reports) {
    t.rows.push_back({std::to_string(r.x), std::to_string(r.exact_count), format_double(r.main_term),
                      format_double(r.ratio), format_double(r.scaled_error)});
  }
  return t;
}

}  // namespace pslab
