#include "knotflow/util.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace knotflow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::next() {
  // stateless w.r.t. history: value depends on (seed, stream, counter) only
  std::uint64_t v = splitmix64(seed ^ splitmix64(stream ^ splitmix64(counter)));
  ++counter;
  return v;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Rng make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  Rng r;
  r.seed = splitmix64(seed);
  r.stream = splitmix64(a ^ splitmix64(b ^ splitmix64(c ^ 0xa5a5a5a5a5a5a5a5ull)));
  r.counter = 0;
  return r;
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& s, std::uint64_t h) {
  return fnv1a64(s.data(), s.size(), h);
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write: " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

int env_log_level() {
  const char* v = std::getenv("KNOTFLOW_LOG");
  if (!v) return static_cast<int>(LogLevel::Warn);
  std::string s(v);
  if (s == "error") return 0;
  if (s == "warn") return 1;
  if (s == "info") return 2;
  if (s == "debug") return 3;
  return static_cast<int>(LogLevel::Warn);
}

}  // namespace

bool log_enabled(LogLevel level) {
  static const int limit = env_log_level();
  return static_cast<int>(level) <= limit;
}

void log_line(LogLevel level, const std::string& msg) {
  if (!log_enabled(level)) return;
  static std::mutex mu;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lk(mu);
  std::fprintf(stderr, "[knotflow:%s] %s\n", names[static_cast<int>(level)], msg.c_str());
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(Rational a, Rational b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }

bool operator<(const Rational& a, const Rational& b) {
  return a.num * b.den < b.num * a.den;
}

}  // namespace knotflow
