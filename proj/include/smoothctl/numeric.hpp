#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace smoothctl {

using Vec = Eigen::VectorXd;

/// Strict lexicographic order on equal-length vectors.
bool lex_less(const Vec& a, const Vec& b);

/// True when every coordinate differs by at most tol.
bool approx_equal(const Vec& a, const Vec& b, double tol);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Inverse of format_double; throws ConfigError on garbage.
double parse_double(const std::string& s);

/// Splits one CSV line on commas (no quoting; numeric payloads only).
std::vector<std::string> split_csv_line(const std::string& line);

/// FNV-1a over a byte string, rendered as 16 hex digits. Stable across runs.
std::string fnv1a_hex(const std::string& bytes);

/// Deterministic uniform double in [0,1) from a 64-bit generator draw.
/// Pinned bit-for-bit (unlike std::uniform_real_distribution).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  /// splitmix64 step; decoupled from any library distribution internals.
  std::uint64_t next_u64();

  double next_unit();                       // [0, 1)
  double next(double lo, double hi);        // [lo, hi)
  Vec next_in_box(const Vec& lo, const Vec& hi);

 private:
  std::uint64_t state_;
};

}  // namespace smoothctl
