#include "pslab/cli.hpp"

#include "pslab/asymptotics.hpp"
#include "pslab/counting.hpp"
#include "pslab/errors.hpp"
#include "pslab/exppair.hpp"
#include "pslab/expsum.hpp"
#include "pslab/hbdecomp.hpp"
#include "pslab/report.hpp"
#include "pslab/sieve.hpp"
#include "pslab/vaaler.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace pslab::cli {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

/// Integer count such as "100000" or "1e6" (integral values only).
std::uint64_t parse_count(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  auto bad = [&] { return std::invalid_argument(what + ": expected a positive integer, got '" + text + "'"); };
  if (t.empty()) throw bad();
  const auto e = t.find_first_of("eE");
  std::string mant = t.substr(0, e);
  if (mant.empty() || !std::all_of(mant.begin(), mant.end(), ::isdigit)) throw bad();
  std::uint64_t v = std::stoull(mant);
  if (e != std::string::npos) {
    const std::string ex = t.substr(e + 1);
    if (ex.empty() || !std::all_of(ex.begin(), ex.end(), ::isdigit)) throw bad();
    const int k = std::stoi(ex);
    if (k > 18) throw bad();
    for (int i = 0; i < k; ++i) {
      if (v > ~std::uint64_t{0} / 10) throw bad();
      v *= 10;
    }
  }
  return v;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_count(item, what));
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument(what + ": bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

struct Common {
  std::string format = "json";
  unsigned workers = 0;
  double eps = 0.01;
  std::string mem_budget = "2147483648";
  std::string segment = "4194304";
  std::uint64_t seed = 1;
  std::string csv_out;
  std::string config;
  bool relaxed = false;

  SieveOptions sieve() const {
    SieveOptions o;
    o.workers = workers;
    o.memory_budget = parse_count(mem_budget, "--mem-budget");
    o.segment_size = parse_count(segment, "--segment");
    return o;
  }
  RangeMode mode() const { return relaxed ? RangeMode::Relaxed : RangeMode::Theorem; }
};

struct Output {
  json result;
  std::optional<CsvTable> csv;
  std::string human;
  int exit_code = kExitOk;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
  sub->add_option("--workers", common.workers, "Worker threads (0 = available parallelism)");
  sub->add_option("--eps", common.eps, "epsilon used in predictor formulas")->check(CLI::PositiveNumber);
  sub->add_option("--mem-budget", common.mem_budget, "Memory budget in bytes for sieve tables");
  sub->add_option("--segment", common.segment, "Sieve segment size (multiple of 64)");
  sub->add_option("--seed", common.seed, "Seed for random coefficient generators");
  sub->add_option("--csv-out", common.csv_out, "Also write the CSV table to this file");
  sub->add_option("--config", common.config, "key = value file; entries override flags");
  sub->add_flag("--relaxed", common.relaxed, "Accept 1 < c <= 2 outside the proven range");
}

json config_echo(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

std::string flatten(const json& j, const std::string& prefix = "") {
  std::ostringstream out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      out << flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out << flatten(j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
  return out.str();
}

// ---- count --------------------------------------------------------------

struct CountArgs {
  std::string c, x, variant = "sqfree", method = "both";
  bool decompose = false;
};

Output do_count(const CountArgs& a, const Common& common) {
  const ExactC c = ExactC::parse(a.c, common.mode());
  const std::uint64_t x = parse_count(a.x, "--x");
  const Variant variant = parse_variant(a.variant);
  std::vector<Method> methods;
  if (a.method == "both") {
    methods = {Method::Direct, Method::Interval};
  } else {
    methods = {parse_method(a.method)};
  }
  const SieveOptions opts = common.sieve();

  const SieveTable table = sieve_for_count(c, x, opts);
  std::optional<ZSplit> split;
  if (a.decompose) split = decompose_by_z(c, x, table, common.workers);
  std::vector<CountReport> reports;
  for (Method m : methods) {
    CountReport r = m == Method::Direct ? count_direct(c, x, variant, table, common.workers)
                                        : count_interval(c, x, variant, table, common.workers);
    if (split) {
      r.s1 = split->s1;
      r.s2 = split->s2;
    }
    reports.push_back(r);
  }
  const bool agree = std::all_of(reports.begin(), reports.end(),
                                 [&](const CountReport& r) { return r.count == reports.front().count; });
  Output out;
  json list = json::array();
  std::ostringstream human;
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    human << to_string(r.method) << ": " << r.count << '\n';
  }
  out.result = json{{"reports", list}, {"agree", agree}};
  if (split) out.result["decomposition"] = to_json(*split);
  if (!c.in_theorem_range()) out.result["note"] = "c outside proven range 1 < c < 3849/3334";
  out.csv = count_csv(reports);
  out.human = human.str() + (agree ? "methods agree\n" : "METHODS DISAGREE\n");
  if (!agree) out.exit_code = kExitFailure;
  return out;
}

// ---- asym ---------------------------------------------------------------

struct AsymArgs {
  std::string c, x_grid = "1e4,1e5,1e6", variant = "sqfree", sigma_limit = "1000000";
};

Output do_asym(const AsymArgs& a, const Common& common) {
  const ExactC c = ExactC::parse(a.c, common.mode());
  const auto grid = parse_count_list(a.x_grid, "--x-grid");
  const Variant variant = parse_variant(a.variant);
  const std::uint64_t sigma_limit = parse_count(a.sigma_limit, "--sigma-limit");
  for (auto x : grid) {
    if (x < 3) throw std::invalid_argument("--x-grid: every x must be >= 3");
  }
  const SieveOptions opts = common.sieve();

  std::optional<SigmaInterval> sigma;
  if (variant == Variant::Consecutive) sigma = sigma_constant(sigma_limit, opts);
  const std::uint64_t xmax = *std::max_element(grid.begin(), grid.end());
  const SieveTable table = sieve_for_count(c, xmax, opts);
  std::vector<AsymReport> rows;
  for (auto x : grid) {
    const CountReport count = count_direct(c, x, variant, table, common.workers);
    rows.push_back(asym_report(count, main_term_for(variant, c, static_cast<double>(x), sigma ? &*sigma : nullptr)));
  }
  Output out;
  json list = json::array();
  for (const auto& r : rows) list.push_back(to_json(r));
  out.result = json{{"rows", list}};
  if (sigma) out.result["sigma"] = to_json(*sigma);
  out.csv = asym_csv(rows);
  out.human = out.csv->str();
  return out;
}

// ---- sigma --------------------------------------------------------------

Output do_sigma(const std::string& limit_text, const Common& common) {
  const std::uint64_t limit = parse_count(limit_text, "--prime-limit");
  if (limit < 3) throw std::invalid_argument("--prime-limit must be >= 3");
  const SigmaInterval s = sigma_constant(limit, common.sieve());
  Output out;
  out.result = to_json(s);
  out.csv = CsvTable{{"prime_limit", "lo", "hi", "width"},
                     {{std::to_string(limit), format_double(s.lo), format_double(s.hi), format_double(s.width())}}};
  std::ostringstream h;
  h.precision(17);
  h << "sigma in [" << s.lo << ", " << s.hi << "] (width " << s.width() << ")\n";
  out.human = h.str();
  return out;
}

// ---- exppair ------------------------------------------------------------

struct PairArgs {
  std::string word;
  bool search = false;
  std::size_t max_len = 12;
  std::string objective = "kappa+lambda";
};

Output do_exppair(const PairArgs& a) {
  if (a.word.empty() == !a.search) throw std::invalid_argument("exppair: give exactly one of --word or --search");
  Output out;
  std::ostringstream h;
  h.precision(12);
  if (!a.search) {
    const PairWord w = PairWord::parse(a.word);
    const ExponentPair p = eval_word(w);
    const auto [e1, e2] = bilinear_exponents(p);
    out.result = json{{"word", w.compact()},
                      {"expanded", w.symbols()},
                      {"pair", p.str()},
                      {"kappa", p.kappa.str()},
                      {"lambda", p.lambda.str()},
                      {"kappa_decimal", p.kappa.to_double()},
                      {"lambda_decimal", p.lambda.to_double()},
                      {"in_region", p.in_region()},
                      {"bilinear_exponents", {e1.str(), e2.str()}}};
    out.csv = CsvTable{{"word", "kappa", "lambda", "kappa_decimal", "lambda_decimal"},
                       {{w.compact(), p.kappa.str(), p.lambda.str(), format_double(p.kappa.to_double()),
                         format_double(p.lambda.to_double())}}};
    h << p.str() << "  ~ (" << p.kappa.to_double() << ", " << p.lambda.to_double() << ")\n";
  } else {
    if (a.max_len < 1 || a.max_len > 32) throw std::invalid_argument("--max-len must lie in [1, 32]");
    const PairSearchResult r = search_pairs(a.max_len, parse_objective(a.objective));
    out.result = json{{"word", r.word.compact()},
                      {"pair", r.pair.str()},
                      {"kappa", r.pair.kappa.str()},
                      {"lambda", r.pair.lambda.str()},
                      {"objective", a.objective},
                      {"objective_value", r.objective.str()},
                      {"objective_decimal", r.objective.to_double()},
                      {"words_examined", r.words_examined}};
    out.csv = CsvTable{{"word", "kappa", "lambda", "objective"},
                       {{r.word.compact(), r.pair.kappa.str(), r.pair.lambda.str(), r.objective.str()}}};
    h << r.word.compact() << " -> " << r.pair.str() << ", " << a.objective << " = " << r.objective.str() << " ~ "
      << r.objective.to_double() << " (" << r.words_examined << " words)\n";
  }
  out.human = h.str();
  return out;
}

// ---- vaaler -------------------------------------------------------------

Output do_vaaler(const std::string& H_text, const std::string& grid_text) {
  const auto Hs = parse_count_list(H_text, "--H");
  const std::uint64_t grid = parse_count(grid_text, "--grid");
  if (grid < 10) throw std::invalid_argument("--grid must be >= 10");
  for (auto H : Hs) {
    if (H < 1 || H > 1'000'000) throw std::invalid_argument("--H must lie in [1, 1e6]");
  }
  Output out;
  CsvTable t{{"H", "grid", "max_error", "mean_error", "max_violation", "max_imag", "min_majorant"}, {}};
  json list = json::array();
  for (auto H : Hs) {
    const ScanStats s = max_error_scan(build_vaaler(static_cast<std::uint32_t>(H)), grid);
    list.push_back(to_json(s));
    t.rows.push_back({std::to_string(H), std::to_string(grid), format_double(s.max_error),
                      format_double(s.mean_error), format_double(s.max_violation), format_double(s.max_imag),
                      format_double(s.min_majorant)});
  }
  out.result = json{{"scans", list}};
  out.human = t.str();
  out.csv = std::move(t);
  return out;
}

// ---- expsum -------------------------------------------------------------

struct TripleArgs {
  std::string F = "10,100,1000", H = "8,16,32", N = "8,16,32", M = "8,16,32";
  std::string alpha = "1/2", beta = "1", gamma = "1";
};

Output do_triple(const TripleArgs& a, const Common& common) {
  const auto Fs = parse_double_list(a.F, "--F");
  const auto Hs = parse_count_list(a.H, "--H");
  const auto Ns = parse_count_list(a.N, "--N");
  const auto Ms = parse_count_list(a.M, "--M");
  TripleParams base;
  base.alpha = Rational::parse(a.alpha);
  base.beta = Rational::parse(a.beta);
  base.gamma = Rational::parse(a.gamma);
  base.eps = common.eps;
  Output out;
  CsvTable t{{"F", "H", "N", "M", "alpha", "beta", "gamma", "eps", "measured", "predicted", "ratio"}, {}};
  json list = json::array();
  double worst = 0.0;
  for (double F : Fs)
    for (auto H : Hs)
      for (auto N : Ns)
        for (auto M : Ms) {
          TripleParams p = base;
          p.F = F;
          p.H = H;
          p.N = N;
          p.M = M;
          const BoundReport r = triple_sum(p, common.workers);
          worst = std::max(worst, r.ratio);
          list.push_back(to_json(r));
          t.rows.push_back({format_double(F), std::to_string(H), std::to_string(N), std::to_string(M),
                            p.alpha.str(), p.beta.str(), p.gamma.str(), format_double(p.eps),
                            format_double(r.measured), format_double(r.predicted), format_double(r.ratio)});
        }
  out.result = json{{"rows", list}, {"fitted_constant", worst}};
  out.human = t.str() + "fitted constant (max ratio): " + format_double(worst) + "\n";
  out.csv = std::move(t);
  return out;
}

struct BilinearArgs {
  std::string F = "1024,4096", M = "8,16", M1 = "4,8", M2 = "4,8";
  std::string alpha = "1/2", alpha1 = "1/3", alpha2 = "1/3";
  std::string pair_word = "BA5BA2BA2B";
  std::string a = "ones", b = "ones";
};

Output do_bilinear(const BilinearArgs& a, const Common& common) {
  const auto Fs = parse_double_list(a.F, "--F");
  const auto Ms = parse_count_list(a.M, "--M");
  const auto M1s = parse_count_list(a.M1, "--M1");
  const auto M2s = parse_count_list(a.M2, "--M2");
  BilinearParams base;
  base.alpha = Rational::parse(a.alpha);
  base.alpha1 = Rational::parse(a.alpha1);
  base.alpha2 = Rational::parse(a.alpha2);
  base.a_kind = parse_coefficients(a.a);
  base.b_kind = parse_coefficients(a.b);
  base.seed = common.seed;
  const ExponentPair pair = eval_word(PairWord::parse(a.pair_word));
  for (double F : Fs)
    for (auto M1 : M1s)
      for (auto M2 : M2s)
        if (F < static_cast<double>(M1 * M2))
          throw std::invalid_argument("--F: hypothesis F >= M1 M2 violated at F=" + format_double(F));
  Output out;
  CsvTable t{{"F", "M", "M1", "M2", "a", "b", "kappa", "lambda", "measured", "predicted", "ratio"}, {}};
  json list = json::array();
  double worst = 0.0;
  for (double F : Fs)
    for (auto M : Ms)
      for (auto M1 : M1s)
        for (auto M2 : M2s) {
          BilinearParams p = base;
          p.F = F;
          p.M = M;
          p.M1 = M1;
          p.M2 = M2;
          const BoundReport r = bilinear_sum(p, pair, common.workers);
          worst = std::max(worst, r.ratio);
          list.push_back(to_json(r));
          t.rows.push_back({format_double(F), std::to_string(M), std::to_string(M1), std::to_string(M2), a.a, a.b,
                            pair.kappa.str(), pair.lambda.str(), format_double(r.measured),
                            format_double(r.predicted), format_double(r.ratio)});
        }
  const auto [e1, e2] = bilinear_exponents(pair);
  out.result = json{{"rows", list},
                    {"fitted_constant", worst},
                    {"pair", pair.str()},
                    {"exponents", {e1.str(), e2.str()}}};
  out.human = t.str() + "fitted constant (max ratio): " + format_double(worst) + "\n";
  out.csv = std::move(t);
  return out;
}

struct PrimeArgs {
  std::string c = "21/20", x = "1e6", d = "1", N = "100000", N1;
  std::string h;
};

Output do_prime(const PrimeArgs& a, const Common& common) {
  const ExactC c = ExactC::parse(a.c, common.mode());
  const std::uint64_t x = parse_count(a.x, "--x");
  const std::uint64_t d = parse_count(a.d, "--d");
  const std::uint64_t N = parse_count(a.N, "--N");
  const std::uint64_t N1 = a.N1.empty() ? 2 * N : parse_count(a.N1, "--N1");
  if (d < 1) throw std::invalid_argument("--d must be >= 1");
  if (N < 1 || N1 <= N || N1 > 2 * N) throw std::invalid_argument("need N < N1 <= 2N");
  Output out;
  if (!a.h.empty()) {
    const std::int64_t h = std::stoll(a.h);
    const auto lam = von_mangoldt_range(N + 1, N1, common.sieve());
    CompensatedSum cheb;
    for (double v : lam) cheb.add(v);
    const Complex s = prime_expsum(c, d, h, N, N1, lam);
    out.result = json{{"c", c.str()},   {"d", d},         {"h", h},
                      {"N", N},         {"N1", N1},       {"re", s.real()},
                      {"im", s.imag()}, {"abs", std::abs(s)}, {"chebyshev", cheb.value()},
                      {"relative", std::abs(s) / cheb.value()}};
    out.csv = CsvTable{{"c", "d", "h", "N", "N1", "abs", "chebyshev", "relative"},
                       {{c.str(), std::to_string(d), std::to_string(h), std::to_string(N), std::to_string(N1),
                         format_double(std::abs(s)), format_double(cheb.value()),
                         format_double(std::abs(s) / cheb.value())}}};
  } else {
    const PrimeSumReport r = prime_expsum_total(c, static_cast<double>(x), d, N, N1, common.eps, common.workers);
    out.result = to_json(r);
    out.result["c"] = c.str();
    out.result["x"] = x;
    out.result["d"] = d;
    out.result["N"] = N;
    out.result["N1"] = N1;
    out.result["eps"] = common.eps;
    out.csv = CsvTable{{"c", "x", "d", "N", "N1", "eps", "H", "s9", "scale", "ratio"},
                       {{c.str(), std::to_string(x), std::to_string(d), std::to_string(N), std::to_string(N1),
                         format_double(common.eps), std::to_string(r.H), format_double(r.s9),
                         format_double(r.scale), format_double(r.ratio)}}};
  }
  out.human = flatten(out.result);
  return out;
}

// ---- hb-check / hb-window -----------------------------------------------

Output do_hb_check(const std::string& k_text, const std::string& n_max_text, double tol, const Common& common) {
  const auto ks = parse_count_list(k_text, "--k");
  const std::uint64_t n_max = parse_count(n_max_text, "--n-max");
  for (auto k : ks) {
    if (k < 1 || k > 5) throw std::invalid_argument("--k must lie in [1, 5]");
  }
  if (n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
  Output out;
  json list = json::array();
  CsvTable t{{"k", "n_max", "z_cut", "max_abs_error", "max_rel_error", "mismatches"}, {}};
  bool ok = true;
  for (auto k : ks) {
    const HBCheck r = hb_check(static_cast<unsigned>(k), n_max, tol, common.workers);
    ok = ok && r.mismatches == 0;
    list.push_back(to_json(r));
    t.rows.push_back({std::to_string(k), std::to_string(n_max), std::to_string(r.z_cut),
                      format_double(r.max_abs_error), format_double(r.max_rel_error), std::to_string(r.mismatches)});
  }
  out.result = json{{"checks", list}, {"tolerance", tol}, {"identity_holds", ok}};
  out.human = t.str() + (ok ? "identity holds\n" : "IDENTITY MISMATCH\n");
  out.csv = std::move(t);
  if (!ok) out.exit_code = kExitFailure;
  return out;
}

struct WindowArgs {
  std::string x = "1e6", c = "21/20", d = "1", N, N1, H1 = "1";
  std::size_t scan = 1;
};

Output do_hb_window(const WindowArgs& a, const Common& common) {
  const ExactC c = ExactC::parse(a.c, common.mode());
  const double x0 = static_cast<double>(parse_count(a.x, "--x"));
  const std::uint64_t d = parse_count(a.d, "--d");
  const double H1 = static_cast<double>(parse_count(a.H1, "--H1"));
  if (a.scan < 1 || a.scan > 12) throw std::invalid_argument("--scan must lie in [1, 12]");
  Output out;
  json list = json::array();
  std::ostringstream h;
  CsvTable t{{"x", "N", "U", "V", "Z", "condition", "lhs", "rhs", "holds"}, {}};
  double x = x0;
  for (std::size_t i = 0; i < a.scan; ++i, x *= 10.0) {
    const double N = a.N.empty() ? x : static_cast<double>(parse_count(a.N, "--N"));
    const double N1 = a.N1.empty() ? 0.0 : static_cast<double>(parse_count(a.N1, "--N1"));
    const WindowChoice w = window_from_choices(x, c, d, N, H1, common.eps, N1);
    list.push_back(to_json(w));
    for (const auto& cond : w.check.conditions) {
      t.rows.push_back({format_double(x), format_double(N), format_double(w.check.U), format_double(w.check.V),
                        format_double(w.check.Z), cond.name, format_double(cond.lhs), format_double(cond.rhs),
                        cond.holds ? "true" : "false"});
      h << "x=" << format_double(x) << "  " << cond.name << ": " << (cond.holds ? "holds" : "fails") << " ("
        << format_double(cond.lhs) << " vs " << format_double(cond.rhs) << ")\n";
    }
  }
  out.result = json{{"windows", list}};
  out.human = h.str();
  out.csv = std::move(t);
  return out;
}

// ---- sieve-dump ---------------------------------------------------------

struct DumpArgs {
  std::string lo = "1", hi, out, read;
};

Output do_sieve_dump(const DumpArgs& a, const Common& common) {
  SieveTable table;
  if (!a.read.empty()) {
    std::ifstream in(a.read, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + a.read + "'");
    table = SieveTable::read(in);
  } else {
    if (a.hi.empty() || a.out.empty()) throw std::invalid_argument("sieve-dump: need --hi and --out (or --read)");
    const std::uint64_t lo = parse_count(a.lo, "--lo");
    const std::uint64_t hi = parse_count(a.hi, "--hi");
    if (lo < 1 || hi < lo) throw std::invalid_argument("sieve-dump: need 1 <= lo <= hi");
    table = sieve_range(lo, hi, common.sieve());
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write '" + a.out + "'");
    table.write(os);
  }
  std::uint64_t sqfree = 0;
  for (auto m : table.mobius_values()) sqfree += m != 0;
  Output out;
  const auto primes = table.primes().size();
  out.result = json{{"lo", table.lo()}, {"hi", table.hi()}, {"primes", primes}, {"squarefree", sqfree},
                    {"file", a.read.empty() ? a.out : a.read}};
  out.csv = CsvTable{{"lo", "hi", "primes", "squarefree"},
                     {{std::to_string(table.lo()), std::to_string(table.hi()), std::to_string(primes),
                       std::to_string(sqfree)}}};
  out.human = flatten(out.result);
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty() || key.find_first_of(" \t") != std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::vector<std::string> expand_arguments(std::vector<std::string> args) {
  auto push_pair = [](std::vector<std::string>& dst, const std::string& key, const std::string& value) {
    if (value == "true") {
      dst.push_back("--" + key);
    } else if (value != "false") {
      dst.push_back("--" + key);
      dst.push_back(value);
    }
  };
  std::vector<std::string> expanded;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--params" && i + 1 < args.size()) {
      for (const auto& item : split(args[++i], ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--params: expected key=value, got '" + item + "'");
        push_pair(expanded, trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
      }
      continue;
    }
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    expanded.push_back(args[i]);
  }
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file '" + config_path + "'");
    for (const auto& [key, value] : parse_config(in)) push_pair(expanded, key, value);
  }
  return expanded;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pslab: exact counts and diagnostics for primes [n^c] with square-free n", "pslab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  CountArgs count_args;
  AsymArgs asym_args;
  std::string prime_limit = "1000000";
  PairArgs pair_args;
  std::string vaaler_H = "64", vaaler_grid = "100000";
  bool vaaler_csv = false;
  TripleArgs triple_args;
  BilinearArgs bilinear_args;
  PrimeArgs prime_args;
  std::string hb_k = "3", hb_nmax = "5000";
  double hb_tol = 1e-9;
  WindowArgs window_args;
  DumpArgs dump_args;

  auto* count = app.add_subcommand("count", "Exact count of n <= x with [n^c] prime");
  count->add_option("--c", count_args.c, "Exponent as a/b")->required();
  count->add_option("--x", count_args.x, "Upper limit for n")->required();
  count->add_option("--variant", count_args.variant, "all|sqfree|consec")
      ->check(CLI::IsMember({"all", "sqfree", "consec"}));
  count->add_option("--method", count_args.method, "direct|interval|both")
      ->check(CLI::IsMember({"direct", "interval", "both"}));
  count->add_flag("--decompose", count_args.decompose, "Also split S_c(x) at d <= log^2 x");
  add_common(count, common);

  auto* asym = app.add_subcommand("asym", "Exact counts against main terms over an x grid");
  asym->add_option("--c", asym_args.c, "Exponent as a/b")->required();
  asym->add_option("--x-grid", asym_args.x_grid, "Comma-separated x values");
  asym->add_option("--variant", asym_args.variant, "all|sqfree|consec")
      ->check(CLI::IsMember({"all", "sqfree", "consec"}));
  asym->add_option("--sigma-limit", asym_args.sigma_limit, "Prime limit for the sigma enclosure (consec)");
  add_common(asym, common);

  auto* sigma = app.add_subcommand("sigma", "Certified enclosure of prod_p (1 - 2/p^2)");
  sigma->add_option("--prime-limit", prime_limit, "Largest prime in the partial product");
  add_common(sigma, common);

  auto* exppair = app.add_subcommand("exppair", "Exponent-pair words and search");
  exppair->add_option("--word", pair_args.word, "Word such as BA5BA2BA2B");
  exppair->add_flag("--search", pair_args.search, "Enumerate words and report the minimizer");
  exppair->add_option("--max-len", pair_args.max_len, "Longest word in the search");
  exppair->add_option("--objective", pair_args.objective, "kappa+lambda|kappa|lambda");
  add_common(exppair, common);

  auto* vaaler = app.add_subcommand("vaaler", "Scan the trigonometric approximation of psi");
  vaaler->add_option("--H", vaaler_H, "Truncation H (comma list allowed)");
  vaaler->add_option("--grid", vaaler_grid, "Number of sample points");
  vaaler->add_flag("--csv", vaaler_csv, "Shorthand for --format csv");
  add_common(vaaler, common);

  auto* expsum = app.add_subcommand("expsum", "Exponential sums with bound predictions");
  expsum->require_subcommand(1);
  auto* triple = expsum->add_subcommand("triple", "Triple sum with absolute inner sums");
  triple->add_option("--F", triple_args.F, "Comma list of F values");
  triple->add_option("--H", triple_args.H, "Comma list of H");
  triple->add_option("--N", triple_args.N, "Comma list of N");
  triple->add_option("--M", triple_args.M, "Comma list of M");
  triple->add_option("--alpha", triple_args.alpha, "Exponent on m (rational)");
  triple->add_option("--beta", triple_args.beta, "Exponent on h (rational)");
  triple->add_option("--gamma", triple_args.gamma, "Exponent on n (rational)");
  add_common(triple, common);
  auto* bilinear = expsum->add_subcommand("bilinear", "Bilinear sum with exponent-pair bound");
  bilinear->add_option("--F", bilinear_args.F, "Comma list of F values (F >= M1 M2)");
  bilinear->add_option("--M", bilinear_args.M, "Comma list of M");
  bilinear->add_option("--M1", bilinear_args.M1, "Comma list of M1");
  bilinear->add_option("--M2", bilinear_args.M2, "Comma list of M2");
  bilinear->add_option("--alpha", bilinear_args.alpha, "Exponent on m (rational, < 1)");
  bilinear->add_option("--alpha1", bilinear_args.alpha1, "Exponent on m1 (rational)");
  bilinear->add_option("--alpha2", bilinear_args.alpha2, "Exponent on m2 (rational)");
  bilinear->add_option("--pair-word", bilinear_args.pair_word, "Exponent pair as an A/B word");
  bilinear->add_option("--a", bilinear_args.a, "ones|zeros|mobius|random");
  bilinear->add_option("--b", bilinear_args.b, "ones|zeros|mobius|random");
  add_common(bilinear, common);
  auto* prime = expsum->add_subcommand("prime", "Lambda-weighted sums over N < n <= N1");
  prime->add_option("--c", prime_args.c, "Exponent as a/b");
  prime->add_option("--x", prime_args.x, "x entering H = x^(eps-1) N d^2");
  prime->add_option("--d", prime_args.d, "Modulus d");
  prime->add_option("--N", prime_args.N, "Lower end N");
  prime->add_option("--N1", prime_args.N1, "Upper end N1 (default 2N)");
  prime->add_option("--freq", prime_args.h, "Single frequency h; omit to sum |.| over 1 <= h <= H");
  add_common(prime, common);

  auto* hbcheck = app.add_subcommand("hb-check", "Compare the Heath-Brown identity with Lambda(n)");
  hbcheck->add_option("--k", hb_k, "Identity order (comma list allowed)");
  hbcheck->add_option("--n-max", hb_nmax, "Largest n");
  hbcheck->add_option("--tolerance", hb_tol, "Relative tolerance");
  add_common(hbcheck, common);

  auto* hbwindow = app.add_subcommand("hb-window", "Evaluate the decomposition hypotheses at the chosen U, V, Z");
  hbwindow->add_option("--x", window_args.x, "x");
  hbwindow->add_option("--c", window_args.c, "Exponent as a/b");
  hbwindow->add_option("--d", window_args.d, "Modulus d");
  hbwindow->add_option("--N", window_args.N, "Dyadic N (default x)");
  hbwindow->add_option("--N1", window_args.N1, "P1 (default 2N)");
  hbwindow->add_option("--H1", window_args.H1, "Dyadic H1");
  hbwindow->add_option("--scan", window_args.scan, "Also evaluate at x*10, x*100, ... (count)");
  add_common(hbwindow, common);

  auto* dump = app.add_subcommand("sieve-dump", "Write or inspect a binary sieve table");
  dump->add_option("--lo", dump_args.lo, "Lower end");
  dump->add_option("--hi", dump_args.hi, "Upper end");
  dump->add_option("--out", dump_args.out, "Output file");
  dump->add_option("--read", dump_args.read, "Read and summarize an existing dump");
  add_common(dump, common);

  try {
    args = expand_arguments(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (vaaler_csv) common.format = "csv";

  const CLI::App* chosen = app.get_subcommands().front();
  std::string command = chosen->get_name();
  if (command == "expsum") {
    chosen = chosen->get_subcommands().front();
    command += " " + chosen->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  Output result;
  try {
    if (command == "count") {
      result = do_count(count_args, common);
    } else if (command == "asym") {
      result = do_asym(asym_args, common);
    } else if (command == "sigma") {
      result = do_sigma(prime_limit, common);
    } else if (command == "exppair") {
      result = do_exppair(pair_args);
    } else if (command == "vaaler") {
      result = do_vaaler(vaaler_H, vaaler_grid);
    } else if (command == "expsum triple") {
      result = do_triple(triple_args, common);
    } else if (command == "expsum bilinear") {
      result = do_bilinear(bilinear_args, common);
    } else if (command == "expsum prime") {
      result = do_prime(prime_args, common);
    } else if (command == "hb-check") {
      result = do_hb_check(hb_k, hb_nmax, hb_tol, common);
    } else if (command == "hb-window") {
      result = do_hb_window(window_args, common);
    } else if (command == "sieve-dump") {
      result = do_sieve_dump(dump_args, common);
    }
  } catch (const ResourceError& e) {
    err << "resource budget exceeded: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!common.csv_out.empty() && result.csv) {
    std::ofstream csv(common.csv_out);
    if (!csv) {
      err << "error: cannot write '" << common.csv_out << "'\n";
      return kExitFailure;
    }
    csv << result.csv->str();
  }
  if (common.format == "csv") {
    out << (result.csv ? result.csv->str() : flatten(result.result));
  } else if (common.format == "human") {
    out << result.human;
  } else {
    out << make_envelope(command, config_echo(chosen), result.result, wall).dump(2) << '\n';
  }
  return result.exit_code;
}

}  // namespace pslab::cli
