#include "lslab/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lslab/errors.hpp"

namespace lslab {

using json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw DomainError("unknown format '" + name + "' (expected csv or json)");
}

std::string triangle_csv(const StirlingTriangle& triangle) {
  std::string out = "n,j,value\n";
  for (std::size_t n = 0; n <= triangle.max_n(); ++n) {
    const auto& row = triangle.row(n);
    for (std::size_t j = 0; j <= n; ++j)
      out += std::to_string(n) + "," + std::to_string(j) + "," + to_decimal(row[j]) + "\n";
  }
  return out;
}

namespace {

std::string entry_line(std::size_t n, std::size_t j, const Rational& value) {
  json line = {{"n", n}, {"j", j}, {"value", to_decimal(value)}};
  return line.dump() + "\n";
}

}  // namespace

std::string triangle_jsonl(const StirlingTriangle& triangle) {
  std::string out;
  for (std::size_t n = 0; n <= triangle.max_n(); ++n) {
    const auto& row = triangle.row(n);
    for (std::size_t j = 0; j <= n; ++j) out += entry_line(n, j, row[j]);
  }
  return out;
}

std::string triangle_text(const StirlingTriangle& triangle, Format format) {
  return format == Format::csv ? triangle_csv(triangle) : triangle_jsonl(triangle);
}

std::string certificate_json(const RootCertificate& cert) {
  json intervals = json::array();
  for (const auto& iv : cert.isolating_intervals)
    intervals.push_back({to_fraction_string(iv.lo), to_fraction_string(iv.hi)});
  json out = {{"n", cert.n}, {"intervals", intervals}, {"sign_at_quarter", cert.sign_at_quarter}};
  return out.dump();
}

int decimal_digits(long bits) { return static_cast<int>(bits * 0.30103) - 2; }

std::string ratio_report_json(const RatioReport& report, int digits) {
  json out = {{"n", report.n},
              {"j", report.j},
              {"ratio", format_fixed(report.ratio, digits)},
              {"precision_bits", report.precision_bits},
              {"exact", to_decimal(report.exact)},
              {"approximation", format_sci(report.approximation, digits)},
              {"cross_checked", report.cross_checked}};
  return out.dump();
}

namespace {

std::string precision_comment(long bits) { return "# precision_bits=" + std::to_string(bits) + "\n"; }

std::string sci(const Real& x) { return format_sci(x, 17); }

}  // namespace

std::string saddle_csv(const SaddleReport& report) {
  std::string out = precision_comment(report.precision_bits);
  out += "n,Q,Q-b,n(Q-b),n(Q-b)-b_nu,tail_bound\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n) + "," + sci(row.q) + "," + sci(row.q_minus_b) + "," + sci(row.scaled) + "," +
           sci(row.second_order) + "," + sci(row.tail_bound) + "\n";
  }
  return out;
}

std::string expansion_csv(const std::vector<ExpansionRow>& rows, long precision_bits) {
  std::string out = precision_comment(precision_bits);
  out += "j,x,exact,k2,k3,error_k2,error_k3\n";
  for (const auto& row : rows) {
    out += std::to_string(row.j) + "," + sci(row.x) + "," + sci(row.exact) + "," + sci(row.order2) + "," +
           sci(row.order3) + "," + sci(row.error2) + "," + sci(row.error3) + "\n";
  }
  return out;
}

std::string cdf_csv(const std::vector<KsRow>& rows, long precision_bits) {
  std::string out = precision_comment(precision_bits);
  out += "y,cdf,normal_cdf,difference\n";
  for (const auto& row : rows)
    out += format_fixed(row.y, 4) + "," + sci(row.cdf) + "," + sci(row.normal) + "," + sci(row.difference) + "\n";
  return out;
}

std::string moment_residuals_csv(const MomentResidualReport& report, long precision_bits) {
  std::string out = precision_comment(precision_bits);
  out += "n,mean,variance,mean_minus_a,variance_minus_b\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n) + "," + sci(Real(row.exact.mean, precision_bits)) + "," +
           sci(Real(row.exact.variance, precision_bits)) + "," + sci(row.mean_residual) + "," +
           sci(row.variance_residual) + "\n";
  }
  return out;
}

std::string density_csv(std::size_t n, long precision_bits) {
  const CltConstants c = constants(n, precision_bits);
  const std::vector<Real> scaled = local_limit_scaled(n, precision_bits);
  const Real root_b = sqrt(c.b_n);
  std::string out = precision_comment(precision_bits);
  out += "j,x,scaled,phi,difference\n";
  for (std::size_t j = 0; j < scaled.size(); ++j) {
    Real x = (Real(static_cast<long>(j), precision_bits) - c.a_n) / root_b;
    Real phi = standard_normal_density(x);
    out += std::to_string(j) + "," + sci(x) + "," + sci(scaled[j]) + "," + sci(phi) + "," +
           sci(abs(scaled[j] - phi)) + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string cache_file_name(Family family, const GammaParam& gamma) {
  if (family != Family::jacobi) return family_name(family) + ".jsonl";
  const Rational& g = gamma.value();
  return "jacobi_" + g.get_num().get_str() + "_" + g.get_den().get_str() + ".jsonl";
}

namespace {

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

}  // namespace

void write_triangle_cache(const std::filesystem::path& file, Family family, const StirlingTriangle& triangle) {
  const std::string body = triangle_jsonl(triangle);
  json header = {{"schema", kCacheSchema},
                 {"family", family_name(family)},
                 {"gamma", to_fraction_string(triangle.gamma().value())},
                 {"n_max", triangle.max_n()},
                 {"hash", hex64(fnv1a64(body))}};
  std::filesystem::path temporary = file;
  temporary += ".tmp";
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + temporary.string());
    out << header.dump() << "\n" << body;
    if (!out) throw CacheError("short write on cache file " + temporary.string());
  }
  std::filesystem::rename(temporary, file);
}

std::optional<StirlingTriangle> read_triangle_cache(const std::filesystem::path& file, Family family,
                                                    const GammaParam& gamma) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header_line;
  if (!std::getline(in, header_line)) throw CacheError("cache file " + file.string() + " is empty");
  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::exception& e) {
    throw CacheError("unreadable cache header in " + file.string() + ": " + e.what());
  }
  if (!header.is_object() || header.value("schema", -1) != kCacheSchema) return std::nullopt;
  if (header.value("family", std::string()) != family_name(family)) return std::nullopt;
  if (header.value("gamma", std::string()) != to_fraction_string(gamma.value())) return std::nullopt;

  std::stringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  if (header.value("hash", std::string()) != hex64(fnv1a64(body)))
    throw CacheError("hash mismatch in " + file.string());

  std::vector<std::vector<Rational>> rows;
  std::istringstream lines(body);
  std::string line;
  try {
    const std::size_t n_max = header.at("n_max").get<std::size_t>();
    rows.resize(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) rows[n].resize(n + 1);
    std::size_t count = 0;
    while (std::getline(lines, line)) {
      json entry = json::parse(line);
      const auto n = entry.at("n").get<std::size_t>();
      const auto j = entry.at("j").get<std::size_t>();
      if (n > n_max || j > n) throw CacheError("entry outside the triangle");
      rows[n][j] = parse_rational(entry.at("value").get<std::string>());
      ++count;
    }
    if (count != (n_max + 1) * (n_max + 2) / 2) throw CacheError("entry count does not match n_max");
    return StirlingTriangle::from_rows(gamma, std::move(rows));
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError("damaged cache file " + file.string() + ": " + e.what());
  }
}

std::string cache_status_name(CacheStatus status) {
  switch (status) {
    case CacheStatus::hit:
      return "hit";
    case CacheStatus::written:
      return "written";
    case CacheStatus::rebuilt_after_corruption:
      return "rebuilt";
  }
  return "?";
}

namespace {

StirlingTriangle leading_rows(const StirlingTriangle& full, std::size_t n_max) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) rows.push_back(full.row(n));
  return StirlingTriangle::from_rows(full.gamma(), std::move(rows));
}

}  // namespace

CacheLookup load_or_build(const std::filesystem::path& dir, Family family, const GammaParam& gamma,
                          std::size_t n_max, std::size_t row_cap) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path file = dir / cache_file_name(family, gamma);
  std::string problem;
  try {
    if (auto stored = read_triangle_cache(file, family, gamma); stored && stored->max_n() >= n_max) {
      StirlingTriangle triangle = stored->max_n() == n_max ? std::move(*stored) : leading_rows(*stored, n_max);
      return {std::move(triangle), CacheStatus::hit, file, {}};
    }
  } catch (const CacheError& e) {
    problem = e.what();
  }
  StirlingTriangle triangle = StirlingTriangle::build(gamma, n_max, row_cap);
  write_triangle_cache(file, family, triangle);
  CacheStatus status = problem.empty() ? CacheStatus::written : CacheStatus::rebuilt_after_corruption;
  return {std::move(triangle), status, file, problem};
}

}  // namespace lslab
