#pragma once

#include <gmpxx.h>

#include "qbd/rng.hpp"

namespace qbd {

/// Number of rooted quadrangulations with a simple boundary, m inner faces
/// and perimeter two_ell. 1 for (0, 2), 0 outside the domain of the formula.
/// Memoized; safe to call concurrently.
mpz_class count_simple(long m, long two_ell);

/// (n + p/2 + 1) * count_simple(n, p).
mpz_class pointed_count_simple(long n, long p);

/// Natural log of count_simple through log-gamma; -inf when the count is 0.
double log_count_simple(long m, long two_ell);

/// Leading-order asymptotic of log count_simple(m, 2 ell), m, ell >= 1.
double log_count_asymptotic(long m, long ell);

/// Probability that the restriction of a uniform pointed simple-boundary map
/// of size (n', p') is a given restriction map with area area_r, perimeter
/// per_r, inner perimeter p_in and p_left, for the sequence value p_n.
/// Throws PreconditionViolated if 2 p' < p_n, ZeroDenominator if there is no
/// map of size (n', p').
mpq_class restriction_probability(long area_r, long per_r, long p_in, long p_left, long n_prime, long p_prime,
                                  long p_n);

struct RestrictionShape {
  long area = 0;
  long perimeter = 0;
  long p_in = 0;
};

/// Ratio of the restriction probabilities at (n, p_n) and (n', p'), without
/// the indicator, evaluated in log space. Throws ZeroDenominator when a count
/// vanishes.
double ratio_bound_check(const RestrictionShape& r, long n, long p_n, long n_prime, long p_prime);

/// f(x) = 1 - 2 / ((g + a(x)) (g + 1 + a(x))), g = ell - r,
/// a(x) = (-1 + sqrt(1 + 8 / (1 - x))) / 2; f(1) = 1. Throws DomainError for
/// x outside [0, 1] or ell < r.
double gw_generating_function(long ell, long r, double x);

/// Left derivative of f at 1 from difference quotients at steps 1e-4..1e-7
/// with Richardson extrapolation.
double gw_derivative_at_one(long ell, long r);

struct FirstPassageSummary {
  double mean = 0;
  double standard_error = 0;
  long replicates = 0;       // kept replicates
  long discarded = 0;
  double discard_rate = 0;
  double frac_zero = 0;      // fraction of kept replicates with no first passage
};

/// Critical geometric Galton-Watson trees with i.i.d. uniform {-1, 0, 1}
/// label increments, root label `gap` above the target; counts the first
/// vertices at the target label. Trees exploring more than `max_vertices`
/// vertices are discarded.
FirstPassageSummary gw_first_passage_simulation(long gap, long replicates, Rng& rng,
                                                long max_vertices = 10'000'000);

}  // namespace qbd
