#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbd/encoder.hpp"

namespace qbd {

/// Number of labeled treed bridges with p/2 trees and m edges:
/// C(p, p/2) * #forests(p/2, m) * 3^m.
mpz_class treed_bridge_universe_size(int p, int m);

std::vector<DiscreteBridge> all_bridges(int p);
std::vector<std::vector<PlaneTree>> all_plane_forests(int f, int m);

/// Calls `visit` on every labeled treed bridge with p/2 trees and m edges, in
/// a deterministic order: bridges lexicographically (down before up), forests
/// by step word, labelings as base-3 counters. Throws UniverseTooLarge above
/// `limit` objects.
void for_each_treed_bridge(int p, int m, const std::function<void(const LabeledTreedBridge&)>& visit,
                           std::uint64_t limit = 10'000'000);

/// Sorted codes with multiplicities. For `pointed` tables the codes are
/// pointed codes with multiplicity 1; otherwise rooted codes whose
/// multiplicity is the number of pointings (the vertex count).
struct UniverseTable {
  int n = 0;
  int p = 0;
  bool simple = false;
  bool pointed = false;
  std::vector<std::string> codes;
  std::vector<std::uint64_t> multiplicities;

  std::size_t size() const { return codes.size(); }
  std::uint64_t total_multiplicity() const;
  /// Index of `code`, or nullopt.
  std::optional<std::size_t> find(const std::string& code) const;
};

UniverseTable enumerate_boundary_quads(int n, int p, bool simple_only, bool pointed = false,
                                       std::uint64_t limit = 10'000'000);

/// Same as enumerate_boundary_quads, but reads/writes a text cache file under
/// `cache_dir` keyed by (n, p, simple, pointed, format version).
UniverseTable cached_universe(const std::filesystem::path& cache_dir, int n, int p, bool simple_only,
                              bool pointed = false);

void write_universe(std::ostream& out, const UniverseTable& table);
UniverseTable read_universe(std::istream& in);

struct ChiSquareResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
};

/// Pearson goodness of fit of `samples` against the multiplicity-weighted
/// uniform law on the table. Throws UnknownCode for samples outside it.
ChiSquareResult chi_square_uniformity(const std::vector<std::string>& samples, const UniverseTable& universe);

/// Chi-square test of observed category counts against expected probabilities.
ChiSquareResult chi_square_counts(const std::vector<std::uint64_t>& counts, const std::vector<double>& probabilities);

/// Plug-in total variation distance between the empirical laws of two samples.
double empirical_tv(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct TvEstimate {
  double estimate = 0;
  double lower = 0;
  double upper = 0;
};

/// Plug-in estimate with a percentile bootstrap interval.
TvEstimate empirical_tv_bootstrap(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                  int resamples, double level, std::uint64_t seed);

}  // namespace qbd
