#include "solclust/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "solclust/error.hpp"

namespace solclust {

FeatureMatrix FeatureMatrix::column(std::span<const double> values) {
  FeatureMatrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
  return m;
}

FeatureMatrix FeatureMatrix::from_rows(std::span<const std::vector<double>> rows) {
  if (rows.empty()) return {};
  FeatureMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DomainError("FeatureMatrix: ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

FeatureMatrix FeatureMatrix::subset(std::span<const std::size_t> indices) const {
  FeatureMatrix m(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), m.row(r).begin());
  }
  return m;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

struct Run {
  std::vector<int> labels;
  std::vector<std::vector<double>> centers;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

std::vector<std::vector<double>> kmeanspp(const FeatureMatrix& x, std::size_t k,
                                          std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t first = pick(rng);
  centers.emplace_back(x.row(first).begin(), x.row(first).end());

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(x.row(i), centers[0]);
  while (centers.size() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double r = u(rng);
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > r && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.emplace_back(x.row(chosen).begin(), x.row(chosen).end());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(x.row(i), centers.back()));
  }
  return centers;
}

int nearest(std::span<const double> p, const std::vector<std::vector<double>>& centers,
            double* dist = nullptr) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = sq_dist(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

// Moves the point farthest from its center into each empty cluster.
void repair_empty(const FeatureMatrix& x, std::vector<int>& labels,
                  std::vector<std::vector<double>>& centers) {
  const std::size_t k = centers.size();
  std::vector<std::size_t> sizes(k, 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto li = static_cast<std::size_t>(labels[i]);
      if (sizes[li] < 2) continue;
      const double d = sq_dist(x.row(i), centers[li]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    --sizes[static_cast<std::size_t>(labels[far])];
    labels[far] = static_cast<int>(c);
    ++sizes[c];
    centers[c].assign(x.row(far).begin(), x.row(far).end());
  }
}

void update_means(const FeatureMatrix& x, const std::vector<int>& labels,
                  std::vector<std::vector<double>>& centers) {
  const std::size_t d = x.cols();
  std::vector<std::size_t> counts(centers.size(), 0);
  for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& c = centers[static_cast<std::size_t>(labels[i])];
    const auto p = x.row(i);
    for (std::size_t j = 0; j < d; ++j) c[j] += p[j];
    ++counts[static_cast<std::size_t>(labels[i])];
  }
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (double& v : centers[c]) v /= static_cast<double>(counts[c]);
  }
}

double inertia_of(const FeatureMatrix& x, const std::vector<int>& labels,
                  const std::vector<std::vector<double>>& centers) {
  double s = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s += sq_dist(x.row(i), centers[static_cast<std::size_t>(labels[i])]);
  }
  return s;
}

double data_spread(const FeatureMatrix& x) {
  const std::size_t n = x.rows(), d = x.cols();
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) total += (x(i, j) - mean) * (x(i, j) - mean);
  }
  const double spread = std::sqrt(total / static_cast<double>(n * std::max<std::size_t>(d, 1)));
  return spread > 0.0 ? spread : 1.0;
}

Run lloyd(const FeatureMatrix& x, std::size_t k, std::uint64_t seed, double tol_abs, int max_iter) {
  std::mt19937_64 rng(seed);
  Run run;
  run.centers = kmeanspp(x, k, rng);
  const std::size_t n = x.rows();
  std::vector<int> labels(n, -1);

  for (int iter = 1; iter <= max_iter; ++iter) {
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = nearest(x.row(i), run.centers);
    repair_empty(x, next, run.centers);
    const bool unchanged = next == labels;
    labels = std::move(next);

    auto previous = run.centers;
    update_means(x, labels, run.centers);
    run.iterations = iter;
    run.history.push_back(inertia_of(x, labels, run.centers));

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      shift = std::max(shift, std::sqrt(sq_dist(previous[c], run.centers[c])));
    }
    if (unchanged || shift <= tol_abs) break;
  }
  run.labels = std::move(labels);
  run.inertia = run.history.back();
  return run;
}

}  // namespace

ClusterAssignment kmeans(const FeatureMatrix& points, std::size_t k, const KMeansOptions& options) {
  const std::size_t n = points.rows();
  if (k < 1 || k > n) {
    throw DomainError("kmeans: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (options.restarts < 1 || options.max_iter < 1) {
    throw DomainError("kmeans: restarts and max_iter must be >= 1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : points.row(i)) {
      if (!std::isfinite(v)) throw DomainError("kmeans: non-finite feature at row " + std::to_string(i));
    }
  }

  const double tol_abs = options.tol * data_spread(points);
  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<Run> runs(restarts);

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, restarts));
  if (threads <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) {
      runs[r] = lloyd(points, k, options.seed + r, tol_abs, options.max_iter);
    }
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < restarts; r += threads) {
          runs[r] = lloyd(points, k, options.seed + r, tol_abs, options.max_iter);
        }
      });
    }
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  Run& win = runs[best];
  ClusterAssignment out;
  out.k = k;
  out.labels = std::move(win.labels);
  out.centers = std::move(win.centers);
  out.inertia = win.inertia;
  out.seed = options.seed;
  out.iterations = win.iterations;
  out.cost_history = std::move(win.history);
  return out;
}

ClusterAssignment kmedoids(const DistanceMatrix& dist, std::size_t k, const KMedoidsOptions& options) {
  const std::size_t n = dist.size();
  if (k < 1 || k > n) {
    throw DomainError("kmedoids: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();

  // BUILD
  std::vector<std::size_t> medoids;
  std::vector<bool> is_medoid(n, false);
  std::vector<double> near(n, inf);
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_cost = inf;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) cost += std::min(near[i], dist(i, c));
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
    for (std::size_t i = 0; i < n; ++i) near[i] = std::min(near[i], dist(i, best));
  }

  auto total_cost = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double m = inf;
      for (std::size_t md : medoids) m = std::min(m, dist(i, md));
      s += m;
    }
    return s;
  };

  ClusterAssignment out;
  double cost = total_cost();
  out.cost_history.push_back(cost);

  // SWAP
  std::vector<std::size_t> nearest_slot(n);
  std::vector<double> d1(n), d2(n);
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      d1[i] = d2[i] = inf;
      for (std::size_t s = 0; s < k; ++s) {
        const double d = dist(i, medoids[s]);
        if (d < d1[i]) {
          d2[i] = d1[i];
          d1[i] = d;
          nearest_slot[i] = s;
        } else if (d < d2[i]) {
          d2[i] = d;
        }
      }
    }
    double best_delta = 0.0;
    std::size_t best_slot = k, best_o = n;
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t o = 0; o < n; ++o) {
        if (is_medoid[o]) continue;
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double dio = dist(i, o);
          const double now = nearest_slot[i] == s ? std::min(d2[i], dio) : std::min(d1[i], dio);
          delta += now - d1[i];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_slot = s;
          best_o = o;
        }
      }
    }
    if (best_o == n) break;
    const std::size_t old = medoids[best_slot];
    medoids[best_slot] = best_o;
    const double next_cost = total_cost();
    if (!(next_cost < cost)) {  // rounding-level improvement only
      medoids[best_slot] = old;
      break;
    }
    is_medoid[old] = false;
    is_medoid[best_o] = true;
    cost = next_cost;
    out.cost_history.push_back(cost);
  }

  std::sort(medoids.begin(), medoids.end());
  out.k = k;
  out.medoids = medoids;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = inf;
    for (std::size_t s = 0; s < k; ++s) {
      if (dist(i, medoids[s]) < best) {
        best = dist(i, medoids[s]);
        out.labels[i] = static_cast<int>(s);
      }
    }
  }
  // A medoid always labels itself, even when tied with a lower-index medoid.
  for (std::size_t s = 0; s < k; ++s) out.labels[medoids[s]] = static_cast<int>(s);
  out.inertia = total_cost();
  out.seed = options.seed;
  out.iterations = iter;
  return out;
}

}  // namespace solclust
