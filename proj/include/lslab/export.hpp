#pragma once

// Text serializations of triangles, certificates and numeric reports, and the
// on-disk JSON-lines triangle cache. Exact values are always written as
// decimal (or "p/q") strings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lslab/clt.hpp"
#include "lslab/edgeworth.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/laplace.hpp"
#include "lslab/poly_engine.hpp"

namespace lslab {

enum class Format { csv, json };
Format parse_format(const std::string& name);

// "n,j,value" with rows 0 <= j <= n, or one {"n","j","value"} object per line.
std::string triangle_csv(const StirlingTriangle& triangle);
std::string triangle_jsonl(const StirlingTriangle& triangle);
std::string triangle_text(const StirlingTriangle& triangle, Format format);

// {"n":..., "intervals":[["p/q","p/q"],...], "sign_at_quarter":+-1}
std::string certificate_json(const RootCertificate& cert);
// {"n":..., "j":..., "ratio":"...", "precision_bits":...} plus the exact value
// and the approximation.
std::string ratio_report_json(const RatioReport& report, int digits = 20);

// Number of decimal digits that a value carried at `bits` can justify.
int decimal_digits(long bits);

std::string saddle_csv(const SaddleReport& report);
std::string expansion_csv(const std::vector<ExpansionRow>& rows, long precision_bits);
std::string cdf_csv(const std::vector<KsRow>& rows, long precision_bits);
std::string moment_residuals_csv(const MomentResidualReport& report, long precision_bits);
// j, x, scaled value, phi(x), |difference| for the local limit comparison.
std::string density_csv(std::size_t n, long precision_bits);

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

inline constexpr int kCacheSchema = 1;

// Cache file name for one family / gamma, e.g. "legendre.jsonl" or
// "jacobi_7_3.jsonl" for gamma = 7/3.
std::string cache_file_name(Family family, const GammaParam& gamma);

// Header {"schema":1,"family":...,"gamma":"p/q","n_max":...,"hash":"<hex>"}
// followed by one JSON line per entry; the hash covers every byte after the
// header line.
void write_triangle_cache(const std::filesystem::path& file, Family family, const StirlingTriangle& triangle);

// Returns nullopt when the file is absent or belongs to another schema,
// family or gamma. Throws CacheError when the contents are damaged (hash
// mismatch, malformed lines, entries that break the recurrence).
std::optional<StirlingTriangle> read_triangle_cache(const std::filesystem::path& file, Family family,
                                                    const GammaParam& gamma);

enum class CacheStatus { hit, written, rebuilt_after_corruption };
std::string cache_status_name(CacheStatus status);

struct CacheLookup {
  StirlingTriangle triangle;
  CacheStatus status;
  std::filesystem::path file;
  std::string problem;  // set when the stored file was damaged
};

// Serves rows 0..n_max from the cache directory, building and (re)writing the
// file when it is missing, too short or damaged.
CacheLookup load_or_build(const std::filesystem::path& dir, Family family, const GammaParam& gamma,
                          std::size_t n_max, std::size_t row_cap = kDefaultRowCap);

}  // namespace lslab
