#include "qbd/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "qbd/error.hpp"
#include "qbd/parallel.hpp"
#include "qbd/params.hpp"

namespace qbd {

namespace {

std::string pointed_code(const PointedBoundaryQuad& q) {
  const VertexId point[1] = {q.rho};
  return canonical_code(q.map, point);
}

struct CoreSample {
  BijectionResult b;
  CoreResult core;
};

CoreSample sample_core(long n, int p_n, Rng& rng) {
  CoreSample s{build_quadrangulation(sample_treed_bridge(3 * p_n, static_cast<int>(n), rng)), std::nullopt};
  s.core = core(s.b.quad);
  return s;
}

// The core exists and is long enough for the restriction operator.
bool restrictable(const CoreResult& c, int p_n) { return c && 2 * c->quad.perimeter >= p_n; }

}  // namespace

RestrictionRecord restriction_replicate(long n, double alpha, double eps, double delta, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RestrictionRecord rec;
  rec.n = n;
  rec.alpha = alpha;
  rec.eps = eps;
  rec.delta = delta;
  rec.seed = seed;
  Rng rng(seed);
  const RestrictionParams params{n, perimeter_sequence(n, alpha), eps};
  const auto s = sample_core(n, params.p_n, rng);
  if (restrictable(s.core, params.p_n)) {
    const auto o = restrict_map(s.core->quad, params);
    if (o) {
      rec.ok = true;
      rec.r = o->r;
      rec.p_right = o->p_right;
      rec.p_in = o->p_in;
      rec.p_left = o->p_left;
      rec.area_restriction = o->map.area;
      rec.good = is_good(o, params, delta);
      const auto certs = certificate_sets(s.b, s.core, o, params);
      rec.S = static_cast<long>(certs.S.size());
      rec.S_ge = static_cast<long>(certs.S_ge.size());
      rec.S_eq = static_cast<long>(certs.S_eq.size());
      rec.M_low = certs.M_low;
      rec.M_high = certs.M_high;
      rec.bounds = check_bounds(s.b, s.core, o, certs);
      rec.bounds_ok = rec.bounds.all();
    }
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<RestrictionRecord> restriction_experiment(long n, double alpha, double eps, double delta,
                                                      long replicates, std::uint64_t seed) {
  if (replicates < 1) throw Error(ErrorKind::ConfigError, "replicates must be at least 1");
  const Rng base(seed);
  return parallel_map(static_cast<std::size_t>(replicates), [&](std::size_t k) {
    return restriction_replicate(n, alpha, eps, delta, base.split(k).seed());
  });
}

PointedBoundaryQuad sample_simple_pointed(int n, int p, Rng& rng) {
  if (count_simple(n, p) == 0) throw Error(ErrorKind::PreconditionViolated, "no simple-boundary map of this size");
  for (long attempt = 0; attempt < 100'000'000; ++attempt) {
    auto b = build_quadrangulation(sample_treed_bridge(p, n, rng));
    if (boundary_walk(b.quad).simple) return std::move(b.quad);
  }
  throw Error(ErrorKind::PreconditionViolated, "rejection sampler did not accept");
}

ReglueRecord reglue_trial(long n, double alpha, double eps, std::uint64_t seed) {
  ReglueRecord rec;
  rec.seed = seed;
  Rng rng(seed);
  const RestrictionParams params{n, perimeter_sequence(n, alpha), eps};
  const auto s = sample_core(n, params.p_n, rng);
  if (!restrictable(s.core, params.p_n)) return rec;
  const auto o = restrict_map(s.core->quad, params);
  if (!o) return rec;
  rec.applicable = true;
  rec.complete = o->complete;
  if (o->complete) {
    const auto d = graph_distances(o->map.map, o->map.rho);
    rec.endpoint_inside = std::min(d[o->v_minus], d[o->v_plus]) < o->r;
  }

  const auto back = complement_reglue(*o, complement_as_filler(*o));
  rec.reconstructs = pointed_code(back) == pointed_code(s.core->quad);

  const int needed_outer = std::max({1, params.upper_index() + 1 - o->i_minus,
                                     (params.p_n + 1) / 2 - o->p_right - o->p_left});
  PlaneMap filler;
  const int kind = static_cast<int>(rng.uniform_int(0, 2));
  if (kind == 0 && o->p_in == 1 && needed_outer == 1) {
    rec.filler = "edge";
    filler = PlaneMap::edge_map();
  } else {
    const int min_perimeter = o->p_in + needed_outer;
    const int perimeter = min_perimeter + (min_perimeter % 2) + 2 * static_cast<int>(rng.uniform_int(0, 2));
    if (kind == 1 && perimeter <= 10) {
      rec.filler = "sampled";
      const int ell = perimeter / 2;
      const int area = ell - 1 + static_cast<int>(rng.uniform_int(0, 3));
      const auto f = sample_simple_pointed(area, perimeter, rng);
      HalfEdge root = f.map.root();
      const auto steps = rng.uniform_int(0, perimeter - 1);
      for (std::int64_t k = 0; k < steps; ++k) root = f.map.next_in_face(root);
      filler = f.map.with_root(root);
    } else {
      rec.filler = "strip";
      const int k = (perimeter - 2) / 2;
      filler = ladder_strip(k, static_cast<int>(rng.uniform_int(0, perimeter - 1)));
    }
  }
  rec.filler_perimeter =
      filler.half_edge_count() == 2 ? 2 : filler.face_degree(filler.face(filler.root()));
  const auto glued = complement_reglue(*o, filler);
  if (2 * glued.perimeter < params.p_n) return rec;
  const auto again = restrict_map(glued, params);
  rec.restriction_kept = again && again->code() == o->code();
  return rec;
}

TvRecord tv_experiment(long n, double alpha, double eps, long samples, int resamples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::ConfigError, "samples must be at least 1");
  TvRecord rec;
  rec.n = n;
  rec.p_n = perimeter_sequence(n, alpha);
  rec.eps = eps;
  rec.samples = samples;
  const RestrictionParams params{n, rec.p_n, eps};
  const Rng base(seed);
  const auto simple = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t k) {
    Rng rng = base.split(2 * k);
    return outcome_code(restrict_map(sample_simple_pointed(static_cast<int>(n), rec.p_n, rng), params));
  });
  const auto cored = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t k) {
    Rng rng = base.split(2 * k + 1);
    const auto s = sample_core(n, rec.p_n, rng);
    if (!restrictable(s.core, rec.p_n)) return cemetery_code();
    return outcome_code(restrict_map(s.core->quad, params));
  });
  auto summarize = [](const std::vector<std::string>& codes, std::size_t& distinct, double& cemetery) {
    std::vector<std::string> sorted = codes;
    std::sort(sorted.begin(), sorted.end());
    distinct = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    cemetery = static_cast<double>(std::count(codes.begin(), codes.end(), cemetery_code())) /
               static_cast<double>(codes.size());
  };
  summarize(simple, rec.distinct_simple, rec.cemetery_simple);
  summarize(cored, rec.distinct_core, rec.cemetery_core);
  rec.tv = empirical_tv_bootstrap(simple, cored, resamples, 0.95, Rng::derive_seed(seed, 0xb007));
  return rec;
}

ValidationSummary validate_samples(int m, int p, long replicates, std::uint64_t seed) {
  if (replicates < 1) throw Error(ErrorKind::ConfigError, "replicates must be at least 1");
  const Rng base(seed);
  const auto results = parallel_map(static_cast<std::size_t>(replicates), [&](std::size_t k) -> std::string {
    Rng rng = base.split(k);
    std::ostringstream why;
    try {
      const auto ltb = sample_treed_bridge(p, m, rng);
      const auto report = validate(ltb);
      if (!report.ok) why << "invalid treed bridge;";
      if (ltb_to_text(ltb_from_text(ltb_to_text(ltb))) != ltb_to_text(ltb)) why << "text round trip;";
      const auto b = build_quadrangulation(ltb);
      const auto& q = b.quad;
      if (q.map.euler_characteristic() != 2) why << "euler;";
      for (FaceId f = 0; f < q.map.face_count(); ++f) {
        const int want = f == q.external_face ? p : 4;
        if (q.map.face_degree(f) != want) {
          why << "face degree;";
          break;
        }
      }
      if (q.area != m || q.perimeter != p) why << "size;";
      if (!verify_label_distance(b)) why << "label distance;";
      if (rooted_code(from_text(to_text(q.map))) != rooted_code(q.map)) why << "map round trip;";
      const auto d = decompose(q);
      int area = 0, perimeter = 0;
      for (const auto& c : d.components) {
        area += c.quad.area;
        perimeter += c.quad.perimeter;
        if (!boundary_walk(c.quad).simple) why << "component boundary;";
      }
      if (area != m || perimeter != p) why << "decomposition sizes;";
      const auto c = core(d);
      if (c && (c->quad.rho == kNone || c->quad.area > q.area)) why << "core;";
    } catch (const std::exception& e) {
      why << "exception: " << e.what() << ";";
    }
    return why.str();
  });
  ValidationSummary s;
  s.samples = replicates;
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (results[k].empty()) continue;
    ++s.failures;
    if (s.messages.size() < 10) s.messages.push_back("replicate " + std::to_string(k) + ": " + results[k]);
  }
  return s;
}

}  // namespace qbd
