#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace knotflow {

inline constexpr const char* kVersion = "0.3.0";

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so parallel schedules cannot perturb replay.
struct Rng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  std::uint64_t next();
  double uniform();                     // [0,1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);      // inclusive bounds
};

Rng make_rng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
             std::uint64_t c = 0);

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull);
std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 1469598103934665603ull);
std::string hex64(std::uint64_t v);

// Canonical double formatting for reproducible files.
std::string format_double(double v);

// Runs fn(i) for i in [0,n); jobs<=1 stays on the calling thread. Results
// must be written to index i of a pre-sized buffer by the caller's fn.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// Write-then-rename so readers never observe partial files.
void atomic_write_file(const std::string& path, const std::string& content);

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };
bool log_enabled(LogLevel level);  // controlled by KNOTFLOW_LOG
void log_line(LogLevel level, const std::string& msg);

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b);
};

}  // namespace knotflow
