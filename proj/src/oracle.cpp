#include "qbd/oracle.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "qbd/bijection.hpp"
#include "qbd/error.hpp"
#include "qbd/rng.hpp"

namespace qbd {

mpz_class treed_bridge_universe_size(int p, int m) {
  if (p < 2 || p % 2 != 0 || m < 0) return 0;
  mpz_class bridges, three;
  mpz_bin_uiui(bridges.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(p / 2));
  mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(m));
  return bridges * count_plane_forests(p / 2, m) * three;
}

std::vector<DiscreteBridge> all_bridges(int p) {
  std::vector<DiscreteBridge> out;
  if (p < 2 || p % 2 != 0) throw Error(ErrorKind::InvalidPerimeter, "perimeter must be even and >= 2");
  std::vector<int> steps(p, 1);
  std::fill(steps.begin(), steps.begin() + p / 2, -1);
  do {
    DiscreteBridge b;
    b.labels.assign(p + 1, 0);
    for (int i = 0; i < p; ++i) b.labels[i + 1] = b.labels[i] + steps[i];
    out.push_back(std::move(b));
  } while (std::next_permutation(steps.begin(), steps.end()));
  return out;
}

std::vector<std::vector<PlaneTree>> all_plane_forests(int f, int m) {
  std::vector<std::vector<PlaneTree>> out;
  const int n = 2 * m + f;
  std::vector<int> word;
  word.reserve(n);
  // depth-first over step words whose partial sums stay above -f until the end
  std::function<void(int, int)> extend = [&](int ups_left, int level) {
    const int remaining = n - static_cast<int>(word.size());
    if (remaining == 0) {
      out.push_back(forest_from_word(word, f));
      return;
    }
    const int downs_left = remaining - ups_left;
    if (downs_left > 0 && (level - 1 > -f || remaining == 1)) {
      word.push_back(-1);
      extend(ups_left, level - 1);
      word.pop_back();
    }
    if (ups_left > 0) {
      word.push_back(1);
      extend(ups_left - 1, level + 1);
      word.pop_back();
    }
  };
  if (f >= 1 && m >= 0) extend(m, 0);
  return out;
}

void for_each_treed_bridge(int p, int m, const std::function<void(const LabeledTreedBridge&)>& visit,
                           std::uint64_t limit) {
  const mpz_class size = treed_bridge_universe_size(p, m);
  if (size > mpz_class(std::to_string(limit)))
    throw Error(ErrorKind::UniverseTooLarge, "universe of " + size.get_str() + " objects");
  const auto bridges = all_bridges(p);
  const auto forests = all_plane_forests(p / 2, m);
  for (const auto& bridge : bridges) {
    LabeledTreedBridge ltb;
    ltb.bridge = bridge;
    ltb.tree_positions = downsteps(bridge);
    ltb.edge_count = m;
    for (const auto& forest : forests) {
      ltb.trees.clear();
      for (std::size_t k = 0; k < forest.size(); ++k) {
        LabeledTree t;
        t.shape = forest[k];
        t.labels.assign(t.shape.size(), bridge.labels[ltb.tree_positions[k]]);
        ltb.trees.push_back(std::move(t));
      }
      // edge e of the forest (in order) gets increment digit[e] - 1
      std::vector<std::pair<int, int>> edges;
      for (std::size_t k = 0; k < forest.size(); ++k)
        for (int v = 1; v < forest[k].size(); ++v) edges.push_back({static_cast<int>(k), v});
      std::vector<int> digits(edges.size(), 0);
      while (true) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
          auto& t = ltb.trees[edges[e].first];
          const int v = edges[e].second;
          t.labels[v] = t.labels[t.shape.parent[v]] + digits[e] - 1;
        }
        visit(ltb);
        std::size_t e = 0;
        while (e < digits.size() && digits[e] == 2) digits[e++] = 0;
        if (e == digits.size()) break;
        ++digits[e];
      }
    }
  }
}

std::uint64_t UniverseTable::total_multiplicity() const {
  std::uint64_t s = 0;
  for (auto m : multiplicities) s += m;
  return s;
}

std::optional<std::size_t> UniverseTable::find(const std::string& code) const {
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes.begin());
}

UniverseTable enumerate_boundary_quads(int n, int p, bool simple_only, bool pointed, std::uint64_t limit) {
  UniverseTable table;
  table.n = n;
  table.p = p;
  table.simple = simple_only;
  table.pointed = pointed;
  std::map<std::string, std::uint64_t> counts;
  for_each_treed_bridge(
      p, n,
      [&](const LabeledTreedBridge& ltb) {
        const auto b = build_quadrangulation(ltb);
        if (simple_only && !boundary_walk(b.quad).simple) return;
        const std::string code = pointed ? canonical_code(b.quad.map) : rooted_code(b.quad.map);
        ++counts[code];
      },
      limit);
  for (auto& [code, count] : counts) {
    table.codes.push_back(code);
    table.multiplicities.push_back(count);
  }
  return table;
}

namespace {

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorKind::ParseError, "odd hex length");
  auto value = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorKind::ParseError, "bad hex digit");
  };
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<char>(value(hex[i]) * 16 + value(hex[i + 1])));
  return out;
}

}  // namespace

void write_universe(std::ostream& out, const UniverseTable& table) {
  out << "UNIVERSE v1 " << table.n << ' ' << table.p << ' ' << table.simple << ' ' << table.pointed << ' '
      << table.size() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) out << to_hex(table.codes[i]) << ' ' << table.multiplicities[i] << '\n';
}

UniverseTable read_universe(std::istream& in) {
  UniverseTable table;
  std::string magic, version;
  std::size_t count = 0;
  in >> magic >> version >> table.n >> table.p >> table.simple >> table.pointed >> count;
  if (!in || magic != "UNIVERSE" || version != "v1") throw Error(ErrorKind::ParseError, "bad universe header");
  for (std::size_t i = 0; i < count; ++i) {
    std::string hex;
    std::uint64_t mult = 0;
    if (!(in >> hex >> mult)) throw Error(ErrorKind::ParseError, "truncated universe table");
    table.codes.push_back(from_hex(hex));
    table.multiplicities.push_back(mult);
  }
  return table;
}

UniverseTable cached_universe(const std::filesystem::path& cache_dir, int n, int p, bool simple_only, bool pointed) {
  std::ostringstream name;
  name << "universe_n" << n << "_p" << p << "_s" << simple_only << "_pt" << pointed << "_v1.txt";
  const auto path = cache_dir / name.str();
  if (std::ifstream in(path); in) return read_universe(in);
  auto table = enumerate_boundary_quads(n, p, simple_only, pointed);
  std::filesystem::create_directories(cache_dir);
  std::ofstream out(path);
  write_universe(out, table);
  return table;
}

ChiSquareResult chi_square_counts(const std::vector<std::uint64_t>& counts, const std::vector<double>& probabilities) {
  if (counts.size() != probabilities.size() || counts.empty())
    throw Error(ErrorKind::PreconditionViolated, "counts and probabilities must match");
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0) throw Error(ErrorKind::EmptySample, "no observations");
  ChiSquareResult r;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = total * probabilities[i];
    if (expected <= 0) continue;
    const double d = static_cast<double>(counts[i]) - expected;
    r.statistic += d * d / expected;
    ++r.degrees_of_freedom;
  }
  --r.degrees_of_freedom;
  if (r.degrees_of_freedom < 1) {
    r.p_value = 1;
    return r;
  }
  boost::math::chi_squared dist(r.degrees_of_freedom);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

ChiSquareResult chi_square_uniformity(const std::vector<std::string>& samples, const UniverseTable& universe) {
  std::vector<std::uint64_t> counts(universe.size(), 0);
  for (const auto& s : samples) {
    auto idx = universe.find(s);
    if (!idx) throw Error(ErrorKind::UnknownCode, "sample outside the universe");
    ++counts[*idx];
  }
  const double total = static_cast<double>(universe.total_multiplicity());
  std::vector<double> probs;
  for (auto m : universe.multiplicities) probs.push_back(static_cast<double>(m) / total);
  return chi_square_counts(counts, probs);
}

namespace {

double tv_from_counts(const std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>>& counts,
                      double na, double nb) {
  double s = 0;
  for (const auto& [code, c] : counts) s += std::abs(static_cast<double>(c.first) / na - static_cast<double>(c.second) / nb);
  return s / 2;
}

}  // namespace

double empirical_tv(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySample, "empirical_tv needs two nonempty samples");
  std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& x : a) ++counts[x].first;
  for (const auto& x : b) ++counts[x].second;
  return tv_from_counts(counts, static_cast<double>(a.size()), static_cast<double>(b.size()));
}

TvEstimate empirical_tv_bootstrap(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                  int resamples, double level, std::uint64_t seed) {
  TvEstimate out;
  out.estimate = empirical_tv(a, b);
  if (resamples < 1) {
    out.lower = out.upper = out.estimate;
    return out;
  }
  // work on integer category ids to keep resampling cheap
  std::unordered_map<std::string, int> ids;
  auto encode = [&](const std::vector<std::string>& xs) {
    std::vector<int> v;
    v.reserve(xs.size());
    for (const auto& x : xs) v.push_back(ids.emplace(x, static_cast<int>(ids.size())).first->second);
    return v;
  };
  const auto ia = encode(a);
  const auto ib = encode(b);
  Rng rng(seed);
  std::vector<double> stats;
  std::vector<std::uint64_t> ca(ids.size()), cb(ids.size());
  for (int r = 0; r < resamples; ++r) {
    std::fill(ca.begin(), ca.end(), 0);
    std::fill(cb.begin(), cb.end(), 0);
    for (std::size_t i = 0; i < ia.size(); ++i) ++ca[ia[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ia.size()) - 1))]];
    for (std::size_t i = 0; i < ib.size(); ++i) ++cb[ib[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ib.size()) - 1))]];
    double s = 0;
    for (std::size_t k = 0; k < ids.size(); ++k)
      s += std::abs(static_cast<double>(ca[k]) / ia.size() - static_cast<double>(cb[k]) / ib.size());
    stats.push_back(s / 2);
  }
  std::sort(stats.begin(), stats.end());
  const double tail = (1 - level) / 2;
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::clamp(q * (stats.size() - 1), 0.0, static_cast<double>(stats.size() - 1)));
    return stats[idx];
  };
  out.lower = quantile(tail);
  out.upper = quantile(1 - tail);
  return out;
}

}  // namespace qbd
