#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

#include "meandric/errors.hpp"
#include "meandric/golden.hpp"
#include "meandric/irreducible.hpp"
#include "meandric/meander.hpp"
#include "meandric/pipeline.hpp"
#include "svg.hpp"

namespace meandric::tools {
namespace {

struct Config {
  std::string command;
  int n = -1;
  int r = -1;
  int max_r = -1;
  int loops = -1;
  std::string alpha;
  std::string beta;
  std::string cache_dir = "cache";
  std::string output;
  std::string format = "text";
  std::string workers = "1";
  bool use_genfun = false;
  bool emit_pairs = false;
  bool override_guards = false;

  int worker_count() const {
    if (workers == "auto") return 0;
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(workers, &used);
      if (used != workers.size()) value = 0;
    } catch (const std::exception&) {
      value = 0;
    }
    if (value < 1) {
      throw DomainError("--workers must be a positive integer or 'auto'");
    }
    return value;
  }

  TableOptions table_options() const {
    TableOptions options;
    options.cache_dir = std::filesystem::path(cache_dir);
    options.workers = worker_count();
    options.override_guard = override_guards;
    return options;
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

template <typename Values>
void write_list(std::ostream& out, const Values& values, const char* sep) {
  bool first = true;
  for (const auto& v : values) {
    if (!first) out << sep;
    out << v;
    first = false;
  }
}

int cmd_enumerate(const Config& cfg, std::ostream& out) {
  require(cfg.n >= 1, "enumerate needs --n >= 1");
  const int n = cfg.n;
  std::map<int, mpz_class> counts;
  bool complete = true;
  if (!cfg.use_genfun) {
    if (n > kMaxBruteMeanderN && !cfg.override_guards) {
      throw SizeLimitError("n=" + std::to_string(n) +
                           " exceeds the brute-force limit " +
                           std::to_string(kMaxBruteMeanderN) +
                           "; pass --use-genfun or --override-guards");
    }
    for (const auto& [k, c] :
         brute_meander_counts(n, cfg.worker_count(), cfg.override_guards)) {
      counts[k] = mpz_class(std::to_string(c));
    }
  } else {
    const int r_max = cfg.max_r >= 0 ? cfg.max_r : std::min(n - 1, kMaxTableR);
    const auto table = build_irreducible_table(r_max, cfg.table_options());
    const auto result =
        run_pipeline(table, r_max, std::max(default_nx(r_max), n));
    for (int r = 0; r <= std::min(r_max, n - 1); ++r) {
      counts[n - r] = result.f_series.at(r)[n - 1];
    }
    complete = r_max >= n - 1;
  }
  if (cfg.loops >= 0) {
    require(cfg.loops >= 1 && cfg.loops <= n,
            "--loops must lie in 1..n");
    const auto it = counts.find(cfg.loops);
    if (it == counts.end()) {
      throw CoverageError("k=" + std::to_string(cfg.loops) +
                          " needs r=" + std::to_string(n - cfg.loops) +
                          ", beyond --max-r");
    }
    const auto value = it->second;
    counts = {{cfg.loops, value}};
    complete = false;
  }

  std::vector<mpz_class> poly(n + 1, 0);
  for (const auto& [k, c] : counts) poly[k] = c;

  if (cfg.format == "csv") {
    out << "n,k,count\n";
    for (const auto& [k, c] : counts) out << n << ',' << k << ',' << c << '\n';
  } else if (cfg.format == "json") {
    out << "{\"n\": " << n << ", \"counts\": [";
    bool first = true;
    for (const auto& [k, c] : counts) {
      out << (first ? "" : ", ") << "{\"k\": " << k << ", \"count\": " << c
          << '}';
      first = false;
    }
    out << ']';
    if (complete) {
      out << ", \"polynomial\": [";
      write_list(out, poly, ", ");
      out << ']';
    }
    out << "}\n";
  } else {
    out << "n=" << n << '\n';
    for (const auto& [k, c] : counts) out << "k=" << k << ": " << c << '\n';
    if (complete) {
      out << "M_" << n << "(x) coefficients (x^0..x^" << n << "): [";
      write_list(out, poly, ", ");
      out << "]\n";
    }
  }
  return kExitOk;
}

int cmd_irreducible(const Config& cfg, std::ostream& out) {
  require(cfg.n >= 1, "irreducible needs --n >= 1");
  IrreducibleOptions options;
  options.r_limit = cfg.r;
  options.workers = cfg.worker_count();
  options.override_guard = cfg.override_guards;
  if (cfg.emit_pairs) {
    write_pairs(out, enumerate_irreducible(cfg.n, options));
    return kExitOk;
  }
  const auto counts = count_irreducible(cfg.n, options);
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  if (cfg.format == "csv") {
    write_counts_csv(out, counts);
  } else if (cfg.format == "json") {
    out << "{\"n\": " << cfg.n << ", \"r_limit\": " << cfg.r
        << ", \"total\": " << total << ", \"counts\": [";
    bool first = true;
    for (const auto& [key, c] : counts) {
      out << (first ? "" : ", ") << "{\"r\": " << key.r << ", \"a\": " << key.a
          << ", \"b\": " << key.b << ", \"count\": " << c << '}';
      first = false;
    }
    out << "]}\n";
  } else {
    out << "n=" << cfg.n << " irreducible systems: " << total << '\n';
    for (const auto& [key, c] : counts) {
      out << "  r=" << key.r << " a=" << key.a << " b=" << key.b << ": " << c
          << '\n';
    }
    // Compatibility is necessary, not sufficient; show where it is not met.
    const int r_top = cfg.r >= 0 ? std::min(cfg.r, cfg.n - 1) : cfg.n - 1;
    std::vector<std::string> empty;
    for (int r = 0; r <= r_top; ++r) {
      const int cap = std::max(2 * r - 2, 1);
      for (int a = 0; a <= cap; ++a)
        for (int b = 0; b <= cap; ++b) {
          if (is_compatible(cfg.n, r, a, b) && !counts.count({cfg.n, r, a, b})) {
            empty.push_back("(" + std::to_string(r) + "," + std::to_string(a) +
                            "," + std::to_string(b) + ")");
          }
        }
    }
    out << "compatible but empty (r,a,b): ";
    if (empty.empty()) out << "none";
    write_list(out, empty, " ");
    out << '\n';
  }
  return kExitOk;
}

int cmd_genfun(const Config& cfg, std::ostream& out) {
  const int r_max = cfg.max_r >= 0 ? cfg.max_r : cfg.r;
  require(r_max >= 0, "genfun needs --max-r >= 0");
  const auto result = run_pipeline(r_max, 0, cfg.table_options());
  if (cfg.format == "json") {
    write_result_json(out, result);
  } else if (cfg.format == "csv") {
    out << "series,r,index,value\n";
    for (const auto& [r, poly] : result.polys) {
      for (std::size_t d = 0; d < poly.coeffs().size(); ++d) {
        out << "P," << r << ',' << d << ',' << poly.coeffs()[d] << '\n';
      }
    }
    for (const auto& [r, values] : result.f_series) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << "F," << r << ',' << i + 1 << ',' << values[i] << '\n';
      }
    }
  } else {
    for (const auto& [r, poly] : result.polys) {
      out << "P_" << r << "(w) = " << poly.to_string() << "\n  coeffs: [";
      write_list(out, poly.coeffs(), ", ");
      out << "]\n";
    }
    for (const auto& [r, values] : result.f_series) {
      out << "F_" << r << " (t^1..t^" << values.size() << "): ";
      write_list(out, values, ", ");
      out << '\n';
    }
    write_report(out, result.diagnostics);
  }
  return kExitOk;
}

int cmd_asympt(const Config& cfg, std::ostream& out) {
  const int r_max = cfg.max_r >= 0 ? cfg.max_r : cfg.r;
  require(r_max >= 1, "asympt needs --max-r >= 1");
  const auto result = run_pipeline(r_max, 0, cfg.table_options());
  if (cfg.format == "csv") out << "r,constant,value\n";
  if (cfg.format == "json") out << '[';
  bool first = true;
  for (const auto& [r, c] : result.asympt) {
    const std::string exact = c.defined ? c.exact.get_str() : "undefined";
    if (cfg.format == "csv") {
      out << r << ',' << exact << ',' << std::setprecision(12) << c.value
          << '\n';
    } else if (cfg.format == "json") {
      out << (first ? "" : ", ") << "{\"r\": " << r << ", \"constant\": \""
          << exact << "\", \"value\": " << std::setprecision(12) << c.value
          << '}';
    } else {
      out << "r=" << r << ": M_n^(n-r) ~ (" << exact
          << ")/sqrt(pi) 4^n n^(" << 2 * r - 3 << "/2)";
      if (c.defined) {
        out << ", multiplier " << std::setprecision(12) << c.value;
      }
      out << '\n';
    }
    first = false;
  }
  if (cfg.format == "json") out << "]\n";
  return kExitOk;
}

void append(CheckReport& into, const CheckReport& from) {
  into.checks.insert(into.checks.end(), from.checks.begin(), from.checks.end());
  into.notes.insert(into.notes.end(), from.notes.begin(), from.notes.end());
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  CheckReport report;
  const auto options = cfg.table_options();
  auto guarded = [&](const std::string& stage, auto&& body) {
    try {
      body();
    } catch (const CacheIntegrityError& e) {
      report.add("cache integrity (" + stage + ")", false, e.what());
    } catch (const StructureViolation& e) {
      report.add(stage, false, e.what());
    }
  };

  guarded("brute force", [&] {
    append(report, verify_against_brute(5, cfg.worker_count()));
  });
  guarded("Lando-Zvonkin", [&] {
    append(report, lando_zvonkin_check(6, options));
  });
  guarded("golden", [&] {
    const auto result = run_pipeline(3, 0, options);
    for (int r = 1; r <= 3; ++r) {
      const auto& want = golden::polynomials().at(r);
      const IntPolynomial expected(
          std::vector<mpz_class>(want.begin(), want.end()));
      const auto& got = result.polys.at(r);
      report.add("golden P_" + std::to_string(r), got == expected,
                 got.to_string());
      const auto& c = result.asympt.at(r);
      const mpq_class expected_c(golden::constants().at(r));
      report.add("golden c_" + std::to_string(r),
                 c.defined && c.exact == expected_c,
                 c.defined ? c.exact.get_str() : "undefined");
    }
  });

  write_report(out, report);
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const auto& c) { return !c.passed; });
  out << "verify: " << (failed == 0 ? "PASS" : "FAIL") << " ("
      << report.checks.size() - failed << '/' << report.checks.size()
      << " checks)\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int infer_size(const std::string& alpha, const std::string& beta) {
  int best = 0;
  int current = 0;
  for (char c : alpha + " " + beta) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current = std::min(current * 10 + (c - '0'), 1 << 20);
    } else {
      best = std::max(best, current);
      current = 0;
    }
  }
  return std::max(best, current);
}

int cmd_render(const Config& cfg, std::ostream& out, std::ostream& note) {
  const int n = cfg.n >= 1 ? cfg.n : infer_size(cfg.alpha, cfg.beta);
  require(n >= 1, "render cannot infer n from the cycles; pass --n");
  const auto alpha = parse_cycles(cfg.alpha, n);
  const auto beta = parse_cycles(cfg.beta, n);
  out << render_svg(alpha, beta);
  if (!cfg.output.empty()) {
    note << "wrote " << cfg.output << " (n=" << n
         << ", loops=" << loop_count_algebraic(alpha, beta) << ")\n";
  }
  return kExitOk;
}

int dispatch(const Config& cfg, std::ostream& out, std::ostream& console) {
  if (cfg.command == "enumerate") return cmd_enumerate(cfg, out);
  if (cfg.command == "irreducible") return cmd_irreducible(cfg, out);
  if (cfg.command == "genfun") return cmd_genfun(cfg, out);
  if (cfg.command == "asympt") return cmd_asympt(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  return cmd_render(cfg, out, console);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Config cfg;
  CLI::App app{"Meandric systems: enumeration, generating functions, checks",
               "meandric"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", cfg.n, "Number of points per side (2n crossings)");
  app.add_option("--r", cfg.r, "Defect r = n - loops (limit for irreducible)");
  app.add_option("--max-r", cfg.max_r, "Largest r for generating functions");
  app.add_option("--loops", cfg.loops, "Report only this loop count");
  app.add_option("--alpha", cfg.alpha, "Upper partition in cycle notation");
  app.add_option("--beta", cfg.beta, "Lower partition in cycle notation");
  app.add_option("--cache-dir", cfg.cache_dir, "Irreducible count cache")
      ->envname("MEANDER_CACHE_DIR")
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads or 'auto'")
      ->capture_default_str();
  app.add_flag("--use-genfun", cfg.use_genfun,
               "enumerate: read counts off the generating functions");
  app.add_flag("--emit-pairs", cfg.emit_pairs,
               "irreducible: list the pairs instead of counts");
  app.add_flag("--override-guards", cfg.override_guards,
               "Allow sizes past the default resource guards");

  const std::pair<const char*, const char*> commands[] = {
      {"enumerate", "Meandric systems on 2n points by loop count"},
      {"irreducible", "Irreducible systems on n points by (r, a, b)"},
      {"genfun", "Polynomials P_r and series F_r up to --max-r"},
      {"asympt", "Asymptotic constants c_r up to --max-r"},
      {"verify", "Brute-force, Lando-Zvonkin and golden-value checks"},
      {"render", "SVG drawing of the system (--alpha, --beta)"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough()->callback(
        [&cfg, name = std::string(name)] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ofstream file;
    std::ostream* target = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + cfg.output);
      target = &file;
    }
    const int code = dispatch(cfg, *target, out);
    if (file.is_open()) {
      file.close();
      if (!file) throw std::runtime_error("failed writing " + cfg.output);
    }
    return code;
  } catch (const SizeLimitError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitGuard;
  } catch (const CoverageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // DomainError, ParseError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace meandric::tools
