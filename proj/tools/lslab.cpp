// lslab: exact and asymptotic computations for Jacobi-, Legendre- and
// Chebyshev-Stirling numbers from the command line.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lslab/clt.hpp"
#include "lslab/edgeworth.hpp"
#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/export.hpp"
#include "lslab/laplace.hpp"
#include "lslab/poly_engine.hpp"
#include "lslab/verify.hpp"

namespace {

enum ExitCode { kPass = 0, kInvariant = 1, kUsage = 2, kResource = 3, kCache = 4 };

struct RunConfig {
  std::string family = "legendre";
  std::string gamma;
  std::size_t n = 0;
  std::size_t j = 0;
  std::size_t n_max = 30;
  long precision_bits = lslab::kDefaultPrecisionBits;
  std::string format = "csv";
  std::string cache_dir;
  unsigned threads = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

lslab::GammaParam gamma_for(const RunConfig& config, lslab::Family family) {
  switch (family) {
    case lslab::Family::legendre:
      if (!config.gamma.empty()) throw UsageError("--gamma is only valid with --family jacobi");
      return lslab::GammaParam::legendre();
    case lslab::Family::chebyshev:
      if (!config.gamma.empty()) throw UsageError("--gamma is only valid with --family jacobi");
      return lslab::GammaParam::chebyshev();
    case lslab::Family::jacobi:
      if (config.gamma.empty()) throw UsageError("--family jacobi requires --gamma");
      return lslab::GammaParam(lslab::parse_rational(config.gamma));
  }
  throw UsageError("unknown family");
}

std::filesystem::path cache_dir_for(const RunConfig& config) {
  if (!config.cache_dir.empty()) return config.cache_dir;
  if (const char* env = std::getenv("LSLAB_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "lslab";
  return ".lslab-cache";
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long value = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw UsageError("bad entry '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

lslab::Real parse_point(const std::string& text, long bits) {
  if (text == "omega") return lslab::omega(bits);
  return lslab::Real(lslab::parse_rational(text), bits);
}

int cmd_compute(const RunConfig& config) {
  const lslab::Family family = lslab::parse_family(config.family);
  const lslab::GammaParam gamma = gamma_for(config, family);
  std::cout << lslab::to_decimal(lslab::js_recurrence(config.n, config.j, gamma)) << "\n";
  return kPass;
}

int cmd_table(const RunConfig& config, bool print_table) {
  const lslab::Family family = lslab::parse_family(config.family);
  const lslab::GammaParam gamma = gamma_for(config, family);
  const lslab::Format format = lslab::parse_format(config.format);
  lslab::CacheLookup lookup = lslab::load_or_build(cache_dir_for(config), family, gamma, config.n_max);
  if (print_table)
    std::cout << lslab::triangle_text(lookup.triangle, format);
  else
    std::cout << lslab::cache_status_name(lookup.status) << " " << lookup.file.string() << "\n";
  if (lookup.status == lslab::CacheStatus::rebuilt_after_corruption) {
    std::cerr << "lslab: cache damaged and rebuilt: " << lookup.problem << "\n";
    return kCache;
  }
  return kPass;
}

int cmd_verify(const RunConfig& config, const std::string& suite, bool n_given, bool j_given) {
  lslab::VerifyConfig vc;
  if (n_given) vc.n = config.n;
  if (j_given) vc.j = config.j;
  vc.n_max = config.n_max;
  vc.precision_bits = config.precision_bits;
  vc.threads = config.threads;
  std::size_t failed = 0;
  std::size_t total = 0;
  lslab::run_suite(suite, vc, [&](const lslab::CheckResult& r) {
    ++total;
    if (!r.passed) ++failed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << (r.passed ? "  [" : ": ") << r.detail << (r.passed ? "]" : "");
    std::cout << std::endl;
  });
  std::cout << (total - failed) << "/" << total << " checks passed (precision_bits=" << vc.precision_bits << ")\n";
  return failed == 0 ? kPass : kInvariant;
}

int cmd_roots(const RunConfig& config) {
  lslab::RootCertificate cert = lslab::certify_roots(config.n);
  if (lslab::parse_format(config.format) == lslab::Format::json) {
    std::cout << lslab::certificate_json(cert) << "\n";
    return kPass;
  }
  std::vector<lslab::Real> roots = lslab::refine_roots(cert, config.precision_bits, config.threads);
  std::cout << "# precision_bits=" << config.precision_bits << "\n";
  std::cout << "index,lo,hi,root\n";
  const int digits = lslab::decimal_digits(config.precision_bits);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& iv = cert.isolating_intervals[i];
    std::cout << i << "," << lslab::to_fraction_string(iv.lo) << "," << lslab::to_fraction_string(iv.hi) << ","
              << lslab::format_sci(roots[i], digits) << "\n";
  }
  return kPass;
}

int cmd_clt(const RunConfig& config, const std::string& report, const std::string& n_list) {
  const long bits = config.precision_bits;
  if (report == "ratio") {
    lslab::RatioReport r = lslab::ratio_check(config.n, config.j, bits, true);
    std::cout << lslab::ratio_report_json(r) << "\n";
  } else if (report == "density") {
    std::cout << lslab::density_csv(config.n, bits);
  } else if (report == "cdf") {
    auto rows = lslab::cdf_table(config.n, lslab::Rational(-4), lslab::Rational(4), lslab::Rational(1, 10), bits);
    std::cout << lslab::cdf_csv(rows, bits);
  } else if (report == "moments") {
    std::cout << lslab::moment_residuals_csv(lslab::moment_residuals(parse_index_list(n_list), bits), bits);
  } else {
    throw UsageError("unknown report '" + report + "'");
  }
  return kPass;
}

int cmd_edgeworth(const RunConfig& config) {
  const std::vector<lslab::BigInt> row = lslab::modified_ls_row(config.n);
  const lslab::BigInt total = lslab::derivatives_at_one(row).value;
  std::vector<lslab::Rational> dist;
  for (const auto& entry : row) {
    lslab::Rational p(entry, total);
    p.canonicalize();
    dist.push_back(p);
  }
  lslab::CumulantProfile profile = lslab::cumulants_from_factorial_moments(row, 6, config.precision_bits);
  std::cout << lslab::expansion_csv(lslab::expansion_table(dist, profile), config.precision_bits);
  return kPass;
}

int cmd_asymptotics(const RunConfig& config, std::size_t nu, const std::string& z, const std::string& n_list) {
  lslab::Real point = parse_point(z, config.precision_bits);
  lslab::SaddleReport report =
      lslab::saddle_convergence_check(nu, point, parse_index_list(n_list), config.precision_bits);
  std::cout << "# nu=" << nu << " z=" << lslab::format_sci(point, 20)
            << " b=" << lslab::format_sci(report.coefficients.b, 20)
            << " b_nu=" << lslab::format_sci(report.coefficients.b_nu, 20) << "\n";
  std::cout << lslab::saddle_csv(report);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic Jacobi-, Legendre- and Chebyshev-Stirling computations"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  app.add_option("--family", config.family, "jacobi, legendre or chebyshev")
      ->check(CLI::IsMember({"jacobi", "legendre", "chebyshev"}));
  app.add_option("--gamma", config.gamma, "rational parameter p/q (jacobi only)");
  auto* n_opt = app.add_option("--n", config.n, "row index");
  auto* j_opt = app.add_option("--j", config.j, "column index");
  app.add_option("--n-max", config.n_max, "largest row of a table or scan");
  app.add_option("--precision-bits", config.precision_bits, "working precision in bits")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", config.cache_dir, "triangle cache directory (default $LSLAB_CACHE_DIR)");
  app.add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1u, 1024u));

  auto* compute = app.add_subcommand("compute", "print one exact triangle entry");
  auto* table = app.add_subcommand("table", "print a triangle as CSV or JSON lines");
  auto* cache = app.add_subcommand("cache", "build or refresh the cached triangle file");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "identities, roots, eisenstein, clt, edgeworth or all")
      ->required()
      ->check(CLI::IsMember(lslab::suite_names()));

  auto* roots = app.add_subcommand("roots", "root certificate of M_n (json) or refined roots (csv)");

  std::string report = "ratio";
  std::string n_list = "100,200,400";
  auto* clt = app.add_subcommand("clt", "ratio report and central limit tables");
  clt->add_option("--report", report, "ratio, density, cdf or moments")
      ->check(CLI::IsMember({"ratio", "density", "cdf", "moments"}));
  clt->add_option("--n-list", n_list, "comma-separated rows for the moments report");

  auto* edgeworth = app.add_subcommand("edgeworth", "Edgeworth expansion table for row n");

  std::size_t nu = 0;
  std::string z = "omega";
  std::string saddle_list = "50,100,200,400";
  auto* asymptotics = app.add_subcommand("asymptotics", "saddle-point convergence report");
  asymptotics->add_option("--nu", nu, "shift nu >= 0");
  asymptotics->add_option("--z", z, "positive point: omega or a rational");
  asymptotics->add_option("--n-list", saddle_list, "comma-separated rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*compute) return cmd_compute(config);
    if (*table) return cmd_table(config, true);
    if (*cache) return cmd_table(config, false);
    if (*verify) return cmd_verify(config, suite, n_opt->count() > 0, j_opt->count() > 0);
    if (*roots) return cmd_roots(config);
    if (*clt) return cmd_clt(config, report, n_list);
    if (*edgeworth) return cmd_edgeworth(config);
    if (*asymptotics) return cmd_asymptotics(config, nu, z, saddle_list);
  } catch (const UsageError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kUsage;
  } catch (const lslab::DomainError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kUsage;
  } catch (const lslab::DegenerateVarianceError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kUsage;
  } catch (const lslab::ResourceLimitError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kResource;
  } catch (const lslab::PrecisionError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kResource;
  } catch (const lslab::CacheError& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kCache;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kCache;
  } catch (const std::exception& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}
