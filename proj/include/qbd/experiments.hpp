#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbd/counting.hpp"
#include "qbd/oracle.hpp"
#include "qbd/restriction.hpp"

namespace qbd {

/// One replicate of the restriction experiment on the core of a pointed
/// quadrangulation of area n and perimeter 3 p_n.
struct RestrictionRecord {
  long n = 0;
  double alpha = 0;
  double eps = 0;
  double delta = 0;
  std::uint64_t seed = 0;  // seed of the replicate stream
  bool ok = false;         // false: the core or the restriction is the cemetery point
  int r = 0;
  int p_right = 0;
  int p_in = 0;
  int p_left = 0;
  int area_restriction = 0;
  bool good = false;
  long S = 0;
  long S_ge = 0;
  long S_eq = 0;
  int M_low = 0;
  int M_high = 0;
  bool bounds_ok = false;
  BoundsCheck bounds;
  double seconds = 0;
};

RestrictionRecord restriction_replicate(long n, double alpha, double eps, double delta, std::uint64_t seed);

/// Replicate k uses the stream derived from (seed, k).
std::vector<RestrictionRecord> restriction_experiment(long n, double alpha, double eps, double delta,
                                                      long replicates, std::uint64_t seed);

struct ReglueRecord {
  std::uint64_t seed = 0;
  bool applicable = false;        // the restriction exists
  bool reconstructs = false;      // original complement restores the map
  bool restriction_kept = false;  // restricting the reglued map gives back r
  bool complete = false;          // the complement is the one-edge map
  bool endpoint_inside = false;   // complete, and v- or v+ is at distance < r from rho
  std::string filler;             // "strip" or "sampled"
  int filler_perimeter = 0;
};

/// Restricts the core of a sample, reglues the original complement and a
/// random filler, and restricts the result again.
ReglueRecord reglue_trial(long n, double alpha, double eps, std::uint64_t seed);

/// Uniform pointed map with a simple boundary, by rejection.
PointedBoundaryQuad sample_simple_pointed(int n, int p, Rng& rng);

struct TvRecord {
  long n = 0;
  int p_n = 0;
  double eps = 0;
  long samples = 0;
  TvEstimate tv;
  std::size_t distinct_simple = 0;
  std::size_t distinct_core = 0;
  double cemetery_simple = 0;
  double cemetery_core = 0;
};

/// Total variation between the restriction of a uniform pointed
/// simple-boundary map of size (n, p_n) and the restriction of the core of a
/// pointed map of size (n, 3 p_n).
TvRecord tv_experiment(long n, double alpha, double eps, long samples, int resamples, std::uint64_t seed);

struct ValidationSummary {
  long samples = 0;
  long failures = 0;
  std::vector<std::string> messages;  // first failures
};

/// Invariant suite over sampled treed bridges of area m and perimeter p.
ValidationSummary validate_samples(int m, int p, long replicates, std::uint64_t seed);

}  // namespace qbd
