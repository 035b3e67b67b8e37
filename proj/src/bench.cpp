#include "copreg/bench.hpp"

#include <chrono>
#include <cmath>
#include <span>

#include "copreg/errors.hpp"
#include "copreg/fitted_model.hpp"
#include "copreg/gamma_beta.hpp"
#include "copreg/nadaraya_watson.hpp"
#include "copreg/rng.hpp"

namespace copreg {

namespace {

// Seconds per invocation; repeats until the accumulated time passes a
// floor so sub-millisecond calls are still resolvable.
template <class Fn>
double time_call(Fn&& fn) {
  using clock = std::chrono::steady_clock;
  constexpr double kFloor = 0.05;
  int reps = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const double elapsed =
        std::chrono::duration<double>(clock::now() - t0).count();
    if (elapsed >= kFloor || reps >= (1 << 20))
      return elapsed / static_cast<double>(reps);
    const double per = elapsed / static_cast<double>(reps);
    reps = per > 0.0 ? static_cast<int>(kFloor / per) + 1 : reps * 4;
  }
}

}  // namespace

std::vector<BenchRow> scaling_bench(const std::vector<int>& n_grid,
                                    const std::vector<int>& m_grid,
                                    const std::vector<std::string>& methods,
                                    std::uint64_t seed) {
  if (n_grid.empty() || m_grid.empty() || methods.empty())
    throw InvalidInput("bench grids and methods must not be empty");
  const GammaBetaSpec spec = GammaBetaSpec::standard();
  std::vector<BenchRow> rows;

  for (int n : n_grid) {
    const BivariateSample data =
        spec.sample(static_cast<std::size_t>(n), derive_seed(seed, 0));
    const FittedModel cb = FittedModel::fit(data, FitMethod::checkerboard,
                                            0.45, TiePolicy::random, seed);
    const NWModel nw = NWModel::fit(data);

    Rng qrng(derive_seed(seed, 1));
    int m_max = 0;
    for (int m : m_grid) m_max = std::max(m_max, m);
    std::vector<double> queries(static_cast<std::size_t>(m_max));
    for (auto& q : queries) q = spec.draw_covariate(qrng);

    for (int m : m_grid) {
      const std::span<const double> xs(queries.data(),
                                       static_cast<std::size_t>(m));
      for (const std::string& method : methods) {
        double seconds = 0.0;
        if (method == "cbe") {
          seconds = time_call([&] {
            volatile double sink = 0.0;
            const auto out = cb.mean_batch_serial(xs);
            if (!out.empty()) sink = out.back();
            (void)sink;
          });
        } else if (method == "nwe") {
          seconds = time_call([&] {
            volatile double sink = 0.0;
            const auto out = nw.mean_batch_serial(xs);
            if (!out.empty()) sink = out.back();
            (void)sink;
          });
        } else {
          throw InvalidInput("bench method must be 'cbe' or 'nwe'");
        }
        rows.push_back(BenchRow{n, m, method, seconds});
      }
    }
  }
  return rows;
}

double loglog_slope(const std::vector<BenchRow>& rows, int n,
                    const std::string& method) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    if (r.n != n || r.method != method || r.m <= 0) continue;
    const double lx = std::log(static_cast<double>(r.m));
    const double ly = std::log(r.seconds);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2)
    throw InvalidInput("slope needs at least two bench rows with m > 0");
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace copreg
