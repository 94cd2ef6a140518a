#include "qbd/counting.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qbd/error.hpp"

namespace qbd {

namespace {

mpz_class factorial(long k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

mpz_class power3(long k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, static_cast<unsigned long>(k));
  return out;
}

mpz_class evaluate(long m, long ell) {
  if (m == 0 && ell == 1) return 1;
  if (m < 1 || ell < 1 || m - ell + 1 < 0) return 0;
  const mpz_class num = factorial(3 * ell) * power3(m) * factorial(2 * m + ell - 1);
  const mpz_class den =
      power3(ell) * factorial(ell) * factorial(2 * ell - 1) * factorial(m - ell + 1) * factorial(m + 2 * ell);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw Error(ErrorKind::NonIntegralProduct, "count formula is not integral");
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

struct CountCache {
  std::shared_mutex mutex;
  std::map<std::pair<long, long>, mpz_class> table;
};

CountCache& cache() {
  static CountCache c;
  return c;
}

}  // namespace

mpz_class count_simple(long m, long two_ell) {
  if (two_ell <= 0 || two_ell % 2 != 0) return 0;
  const std::pair<long, long> key{m, two_ell / 2};
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.table.find(key);
    if (it != c.table.end()) return it->second;
  }
  mpz_class value = evaluate(m, two_ell / 2);
  std::unique_lock lock(c.mutex);
  return c.table.emplace(key, std::move(value)).first->second;
}

mpz_class pointed_count_simple(long n, long p) {
  const mpz_class c = count_simple(n, p);
  if (c == 0) return 0;
  return c * (n + p / 2 + 1);
}

double log_count_simple(long m, long two_ell) {
  if (two_ell <= 0 || two_ell % 2 != 0) return -std::numeric_limits<double>::infinity();
  const long ell = two_ell / 2;
  if (m == 0 && ell == 1) return 0.0;
  if (m < 1 || m - ell + 1 < 0) return -std::numeric_limits<double>::infinity();
  auto lf = [](long k) { return std::lgammal(static_cast<long double>(k) + 1); };
  const long double ln3 = std::log(3.0L);
  const long double v = lf(3 * ell) - ell * ln3 - lf(ell) - lf(2 * ell - 1) + m * ln3 + lf(2 * m + ell - 1) -
                        lf(m - ell + 1) - lf(m + 2 * ell);
  return static_cast<double>(v);
}

double log_count_asymptotic(long m, long ell) {
  const double md = static_cast<double>(m), ld = static_cast<double>(ell);
  return std::log(std::sqrt(3.0) / (2 * M_PI)) + md * std::log(12.0) + ld * std::log(4.5) - 2.5 * std::log(md) +
         0.5 * std::log(ld) - 9 * ld * ld / (4 * md);
}

mpq_class restriction_probability(long area_r, long per_r, long p_in, long p_left, long n_prime, long p_prime,
                                  long p_n) {
  if (2 * p_prime < p_n) throw Error(ErrorKind::PreconditionViolated, "p' below p_n / 2");
  const mpz_class den = pointed_count_simple(n_prime, p_prime);
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "no map of size (n', p')");
  if (!(3 * (p_prime - p_left) > p_n)) return 0;
  mpq_class out(count_simple(n_prime - area_r, p_prime - per_r + 2 * p_in), den);
  out.canonicalize();
  return out;
}

double ratio_bound_check(const RestrictionShape& r, long n, long p_n, long n_prime, long p_prime) {
  const double a = log_count_simple(n - r.area, p_n - r.perimeter + 2 * r.p_in);
  const double b = log_count_simple(n, p_n);
  const double c = log_count_simple(n_prime - r.area, p_prime - r.perimeter + 2 * r.p_in);
  const double d = log_count_simple(n_prime, p_prime);
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw Error(ErrorKind::ZeroDenominator, "a count in the ratio vanishes");
  const double first = a - std::log(static_cast<double>(n + p_n / 2 + 1)) - b;
  const double second = std::log(static_cast<double>(n_prime + p_prime / 2 + 1)) + d - c;
  return std::exp(first + second);
}

double gw_generating_function(long ell, long r, double x) {
  if (ell < r) throw Error(ErrorKind::DomainError, "need ell >= r");
  if (!(x >= 0 && x <= 1)) throw Error(ErrorKind::DomainError, "x must lie in [0, 1]");
  if (x == 1) return 1.0;
  const double g = static_cast<double>(ell - r);
  const double a = (-1 + std::sqrt(1 + 8 / (1 - x))) / 2;
  return 1 - 2 / ((g + a) * (g + 1 + a));
}

double gw_derivative_at_one(long ell, long r) {
  // D(h) = 1 - c sqrt(h) + d h + ...: eliminate successive powers of sqrt(h)
  constexpr int levels = 5;
  std::vector<double> d(levels);
  double h = 1e-4;
  for (int k = 0; k < levels; ++k, h /= 4) d[k] = (1.0 - gw_generating_function(ell, r, 1 - h)) / h;
  double factor = 2;  // 4^(1/2)
  for (int level = 1; level < levels; ++level, factor *= 2)
    for (int k = levels - 1; k >= level; --k) d[k] = (factor * d[k] - d[k - 1]) / (factor - 1);
  return d[levels - 1];
}

FirstPassageSummary gw_first_passage_simulation(long gap, long replicates, Rng& rng, long max_vertices) {
  if (gap < 0 || replicates < 1) throw Error(ErrorKind::PreconditionViolated, "need gap >= 0 and replicates >= 1");
  std::geometric_distribution<long> offspring(0.5);
  std::uniform_int_distribution<int> step(-1, 1);
  FirstPassageSummary s;
  double sum = 0, sq = 0;
  long zero = 0;
  std::vector<long> stack;
  for (long rep = 0; rep < replicates; ++rep) {
    stack.assign(1, gap);
    long explored = 0, hits = 0;
    bool discarded = false;
    while (!stack.empty()) {
      const long label = stack.back();
      stack.pop_back();
      if (++explored > max_vertices) {
        discarded = true;
        break;
      }
      if (label == 0) {
        ++hits;
        continue;
      }
      const long k = offspring(rng.engine());
      for (long c = 0; c < k; ++c) stack.push_back(label + step(rng.engine()));
    }
    if (discarded) {
      ++s.discarded;
      continue;
    }
    ++s.replicates;
    sum += static_cast<double>(hits);
    sq += static_cast<double>(hits) * static_cast<double>(hits);
    if (hits == 0) ++zero;
  }
  s.discard_rate = static_cast<double>(s.discarded) / static_cast<double>(replicates);
  if (s.replicates > 0) {
    const double n = static_cast<double>(s.replicates);
    s.mean = sum / n;
    const double var = s.replicates > 1 ? (sq - n * s.mean * s.mean) / (n - 1) : 0.0;
    s.standard_error = std::sqrt(std::max(0.0, var) / n);
    s.frac_zero = static_cast<double>(zero) / n;
  }
  return s;
}

}  // namespace qbd
