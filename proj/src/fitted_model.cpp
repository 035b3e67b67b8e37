#include "copreg/fitted_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copreg/errors.hpp"

namespace copreg {

FitMethod fit_method_from_string(std::string_view s) {
  if (s == "checkerboard") return FitMethod::checkerboard;
  if (s == "bernstein") return FitMethod::bernstein;
  throw InvalidInput("unknown method '" + std::string(s) +
                     "' (expected 'checkerboard' or 'bernstein')");
}

std::string_view to_string(FitMethod m) {
  return m == FitMethod::checkerboard ? "checkerboard" : "bernstein";
}

FittedModel FittedModel::fit(const BivariateSample& sample, FitMethod method,
                             double s_exponent, TiePolicy ties,
                             std::uint64_t seed) {
  sample.validate();
  if (sample.size() < 4)
    throw DegenerateSample("fit needs at least 4 observations");
  const PseudoSample pseudo = rank_transform(sample, ties, seed);
  const Resolution res = Resolution::choose(sample.size(), s_exponent);

  Payload payload =
      method == FitMethod::checkerboard
          ? Payload(CheckerboardModel::from_pseudo(pseudo, res.N))
          : Payload(BernsteinModel::from_pseudo(pseudo, res.N));

  std::vector<double> xs = sample.x;
  std::vector<double> ys = sample.y;
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  return FittedModel(method, res, std::move(payload), std::move(xs),
                     std::move(ys));
}

FittedModel::FittedModel(FitMethod method, Resolution res, Payload payload,
                         std::vector<double> x_sorted,
                         std::vector<double> y_sorted)
    : method_(method),
      res_(res),
      payload_(std::move(payload)),
      x_sorted_(std::move(x_sorted)),
      y_sorted_(std::move(y_sorted)) {
  if (x_sorted_.size() != y_sorted_.size() || x_sorted_.size() < 2)
    throw InvalidInput("fitted model needs matching sorted columns, n >= 2");
  if (!std::is_sorted(x_sorted_.begin(), x_sorted_.end()) ||
      !std::is_sorted(y_sorted_.begin(), y_sorted_.end()))
    throw InvalidInput("fitted model columns must be sorted ascending");
  if (res_.N > static_cast<int>(x_sorted_.size()))
    throw InvalidInput("resolution exceeds the sample size");
}

namespace {

std::size_t count_le(const std::vector<double>& sorted, double v) {
  return static_cast<std::size_t>(
      std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

// Cell of the ECDF value count/n in exact integer arithmetic: the
// composed estimator feeds rationals i/n into the kernel, and resolving
// ceil(i*N/n) in floating point can land on the wrong side of a cell
// boundary. The kernel is piecewise constant in x, so the x-side uses
// this exact form (the y-side is continuous, rounding is harmless).
int exact_cell(std::size_t count, std::size_t n, int N) {
  if (count == 0) return 1;
  const auto a = static_cast<unsigned long long>(count) *
                 static_cast<unsigned long long>(N);
  return static_cast<int>((a + n - 1) / n);
}

}  // namespace

double FittedModel::ecdf_x(double x) const {
  return static_cast<double>(count_le(x_sorted_, x)) /
         static_cast<double>(x_sorted_.size());
}
double FittedModel::ecdf_y(double y) const {
  return static_cast<double>(count_le(y_sorted_, y)) /
         static_cast<double>(y_sorted_.size());
}

double FittedModel::kernel_at(double u, double w) const {
  return std::visit([&](const auto& p) { return p.kernel(u, w); }, payload_);
}

double FittedModel::cdf(double x, double y) const {
  const double k = conditional_kernel(count_le(x_sorted_, x))(ecdf_y(y));
  return std::clamp(k, 0.0, 1.0);
}

std::function<double(double)> FittedModel::conditional_kernel(
    std::size_t x_count) const {
  const std::size_t n = x_sorted_.size();
  if (method_ == FitMethod::checkerboard) {
    const auto* cb = &std::get<CheckerboardModel>(payload_);
    // Constant in x on each cell; pin an interior representative of the
    // exact cell of the rational x_count/n.
    const int i0 = exact_cell(x_count, n, res_.N);
    const double xrep = (static_cast<double>(i0) - 0.5) / res_.N;
    return [cb, xrep](double w) { return cb->kernel(xrep, w); };
  }
  const auto* bm = &std::get<BernsteinModel>(payload_);
  auto coeffs = std::make_shared<std::vector<double>>(
      bm->conditional_coefficients(static_cast<double>(x_count) /
                                   static_cast<double>(n)));
  return [bm, coeffs](double w) {
    return bm->kernel_from_coefficients(*coeffs, w);
  };
}

// ---------------------------------------------------------------------------
// Mean regression.
//
// r(x) = sum_{i=0}^{n-1} (Y+^(i+1) - Y+^(i)) (1 - K_i)
//      - sum_{i=1}^{n}   (Y-^(i) - Y-^(i+1)) K_i,      K_i = K(u, [0, i/n]),
// with Y+^(0) = 0, Y-^(n+1) = 0, K_0 = 0, K_n = 1. The boundary terms
// make the sums the exact integral of the step CDF, so r(x) is the mean
// of the discrete law on the order statistics.
// ---------------------------------------------------------------------------

double FittedModel::mean_for_cell(int i0) const {
  const auto& cb = std::get<CheckerboardModel>(payload_);
  const double xrep = (static_cast<double>(i0) - 0.5) / res_.N;
  const std::size_t n = y_sorted_.size();
  const double nd = static_cast<double>(n);

  double rp = 0.0, rm = 0.0;
  double yp_prev = 0.0;                                    // Y+^(0)
  double ym_prev = std::max(0.0, -y_sorted_[0]);           // Y-^(1)
  double k_prev = 0.0;                                     // K_0
  for (std::size_t i = 1; i <= n; ++i) {
    const double k =
        (i == n) ? 1.0 : cb.kernel(xrep, static_cast<double>(i) / nd);
    const double yp = std::max(0.0, y_sorted_[i - 1]);
    rp += (yp - yp_prev) * (1.0 - k_prev);
    const double ym_next = (i == n) ? 0.0 : std::max(0.0, -y_sorted_[i]);
    rm += (ym_prev - ym_next) * k;
    yp_prev = yp;
    ym_prev = ym_next;
    k_prev = k;
  }
  return rp - rm;
}

FittedModel::BernsteinMeanCoeffs FittedModel::bernstein_mean_coeffs() const {
  const auto& bm = std::get<BernsteinModel>(payload_);
  const int N = bm.degree();
  const std::size_t n = y_sorted_.size();
  const double nd = static_cast<double>(n);

  // Fold both sums into d_i = dplus_i + dminus_i against K(u, i/n):
  // r(u) = Y+^(n) - sum_{i=1}^n d_i K(u, i/n), then expand K through the
  // Bernstein basis in w to get V, and contract with the row differences.
  std::vector<double> V(static_cast<std::size_t>(N) + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double yp = std::max(0.0, y_sorted_[i - 1]);
    const double yp_next = (i == n) ? yp : std::max(0.0, y_sorted_[i]);
    const double ym = std::max(0.0, -y_sorted_[i - 1]);
    const double ym_next = (i == n) ? 0.0 : std::max(0.0, -y_sorted_[i]);
    const double d = (i == n ? 0.0 : yp_next - yp) + (ym - ym_next);
    if (d == 0.0) continue;
    const std::vector<double> pw =
        bernstein_basis(N, static_cast<double>(i) / nd);
    for (std::size_t b = 0; b <= static_cast<std::size_t>(N); ++b)
      V[b] += d * pw[b];
  }

  BernsteinMeanCoeffs out;
  out.dplus_total = std::max(0.0, y_sorted_.back());
  out.w.assign(static_cast<std::size_t>(N), 0.0);
  for (int a = 1; a <= N; ++a) {
    double acc = 0.0;
    for (int b = 1; b <= N; ++b)
      acc += (bm.grid(a, b) - bm.grid(a - 1, b)) * V[static_cast<std::size_t>(b)];
    out.w[static_cast<std::size_t>(a - 1)] = static_cast<double>(N) * acc;
  }
  return out;
}

double FittedModel::bernstein_mean_eval(const BernsteinMeanCoeffs& c,
                                        double u) const {
  const int N = res_.N;
  const std::vector<double> px = bernstein_basis(N - 1, u);
  double acc = 0.0;
  for (std::size_t a = 0; a < static_cast<std::size_t>(N); ++a)
    acc += px[a] * c.w[a];
  return c.dplus_total - acc;
}

double FittedModel::mean(double x) const {
  if (method_ == FitMethod::checkerboard)
    return mean_for_cell(
        exact_cell(count_le(x_sorted_, x), x_sorted_.size(), res_.N));
  return bernstein_mean_eval(bernstein_mean_coeffs(), ecdf_x(x));
}

template <bool Parallel>
std::vector<double> FittedModel::mean_batch_impl(
    std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  const auto count = static_cast<std::ptrdiff_t>(xs.size());

  if (method_ == FitMethod::checkerboard) {
    const int N = res_.N;
    std::vector<double> table(static_cast<std::size_t>(N));
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (int i0 = 1; i0 <= N; ++i0)
        table[static_cast<std::size_t>(i0 - 1)] = mean_for_cell(i0);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t q = 0; q < count; ++q)
        out[static_cast<std::size_t>(q)] =
            table[static_cast<std::size_t>(
                exact_cell(count_le(x_sorted_, xs[static_cast<std::size_t>(q)]),
                           x_sorted_.size(), N) -
                1)];
    } else {
      for (int i0 = 1; i0 <= N; ++i0)
        table[static_cast<std::size_t>(i0 - 1)] = mean_for_cell(i0);
      for (std::ptrdiff_t q = 0; q < count; ++q)
        out[static_cast<std::size_t>(q)] =
            table[static_cast<std::size_t>(
                exact_cell(count_le(x_sorted_, xs[static_cast<std::size_t>(q)]),
                           x_sorted_.size(), N) -
                1)];
    }
    return out;
  }

  const BernsteinMeanCoeffs coeffs = bernstein_mean_coeffs();
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < count; ++q)
      out[static_cast<std::size_t>(q)] = bernstein_mean_eval(
          coeffs, ecdf_x(xs[static_cast<std::size_t>(q)]));
  } else {
    for (std::ptrdiff_t q = 0; q < count; ++q)
      out[static_cast<std::size_t>(q)] = bernstein_mean_eval(
          coeffs, ecdf_x(xs[static_cast<std::size_t>(q)]));
  }
  return out;
}

std::vector<double> FittedModel::mean_batch(std::span<const double> xs) const {
  return mean_batch_impl<true>(xs);
}

std::vector<double> FittedModel::mean_batch_serial(
    std::span<const double> xs) const {
  return mean_batch_impl<false>(xs);
}

// ---------------------------------------------------------------------------
// Quantiles: the estimated CDF jumps only at order statistics, so the
// sup/inf over the reals land on  lower = Y^(min{i: K_i >= tau}) and
// upper = Y^(min{i: K_i > tau}); both searches are binary in i.
// ---------------------------------------------------------------------------

QuantileInterval FittedModel::quantile(double x, double tau) const {
  if (!(tau > 0.0 && tau < 1.0))
    throw OutOfDomain("quantile level must lie in (0,1)");
  const std::size_t n = y_sorted_.size();
  const double nd = static_cast<double>(n);
  const auto kfn = conditional_kernel(count_le(x_sorted_, x));

  auto first_index = [&](auto pred) {
    std::size_t lo = 1, hi = n;  // K_n = 1 satisfies both predicates
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (pred(kfn(static_cast<double>(mid) / nd)))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };
  const std::size_t i_lo = first_index([&](double k) { return k >= tau; });
  const std::size_t i_hi = first_index([&](double k) { return k > tau; });

  QuantileInterval q;
  q.tau = tau;
  q.lower = y_sorted_[i_lo - 1];
  q.upper = y_sorted_[i_hi - 1];
  q.clamped_lower = std::clamp(q.lower, y_sorted_.front(), y_sorted_.back());
  q.clamped_upper = std::clamp(q.upper, y_sorted_.front(), y_sorted_.back());
  return q;
}

// ---------------------------------------------------------------------------
// Expectiles: root of
//   g(t) = alpha*int_t^inf (1 - Khat) - (1-alpha)*int_-inf^t Khat
//        = alpha*(Y^(n) - t) - alpha*S_total + (2 alpha - 1) * S(t)
// with S(t) = int_{Y^(1)}^t Khat; g is strictly decreasing with
// g(Y^(1)) >= 0 >= g(Y^(n)), and Khat has no mass outside the sample
// range, so the truncation is exact.
// ---------------------------------------------------------------------------

double FittedModel::expectile(double x, double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw OutOfDomain("expectile level must lie in (0,1)");
  const std::size_t n = y_sorted_.size();
  const double nd = static_cast<double>(n);
  const double lo0 = y_sorted_.front(), hi0 = y_sorted_.back();
  const double range = hi0 - lo0;
  if (range == 0.0) return lo0;

  const auto kfn = conditional_kernel(count_le(x_sorted_, x));
  std::vector<double> kvals(n, 1.0);  // kvals[i-1] = K_i, K_n = 1
  for (std::size_t i = 1; i < n; ++i)
    kvals[i - 1] = kfn(static_cast<double>(i) / nd);
  std::vector<double> prefix(n, 0.0);  // integral of Khat up to Y^(k+1)
  for (std::size_t k = 1; k < n; ++k)
    prefix[k] = prefix[k - 1] + kvals[k - 1] * (y_sorted_[k] - y_sorted_[k - 1]);
  const double s_total = prefix[n - 1];

  auto g = [&](double t) {
    const auto it =
        std::upper_bound(y_sorted_.begin(), y_sorted_.end(), t);
    const std::size_t k = (it == y_sorted_.begin())
                              ? 0
                              : static_cast<std::size_t>(it - y_sorted_.begin()) - 1;
    const double s = prefix[k] + kvals[k] * (t - y_sorted_[k]);
    return alpha * (hi0 - t) - alpha * s_total + (2.0 * alpha - 1.0) * s;
  };

  double lo = lo0, hi = hi0;
  const double tol = 1e-10 * range;
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double FittedModel::variance(double x) const {
  const std::size_t n = y_sorted_.size();
  if (y_sorted_.front() == y_sorted_.back()) return 0.0;  // point mass
  const double nd = static_cast<double>(n);
  const auto kfn = conditional_kernel(count_le(x_sorted_, x));

  double k_prev = 0.0;
  double mean_acc = 0.0;
  std::vector<double> probs(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double k = (i == n) ? 1.0 : kfn(static_cast<double>(i) / nd);
    const double p = std::max(0.0, k - k_prev);
    probs[i - 1] = p;
    mean_acc += p * y_sorted_[i - 1];
    k_prev = k;
  }
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y_sorted_[i] - mean_acc;
    var += probs[i] * d * d;
  }
  return var;
}

// ---------------------------------------------------------------------------
// Serialization: versioned JSON blob.
// ---------------------------------------------------------------------------

nlohmann::ordered_json FittedModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "copreg-model";
  j["version"] = 1;
  j["method"] = std::string(to_string(method_));
  j["n"] = sample_size();
  j["s_exponent"] = res_.s_exponent;
  j["N"] = res_.N;
  if (method_ == FitMethod::checkerboard) {
    const auto& cb = std::get<CheckerboardModel>(payload_);
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(res_.N) * res_.N);
    for (int i = 1; i <= res_.N; ++i)
      for (int jj = 1; jj <= res_.N; ++jj) m.push_back(cb.mass(i, jj));
    j["masses"] = m;
  } else {
    const auto& bm = std::get<BernsteinModel>(payload_);
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(res_.N + 1) * (res_.N + 1));
    for (int i = 0; i <= res_.N; ++i)
      for (int jj = 0; jj <= res_.N; ++jj) g.push_back(bm.grid(i, jj));
    j["grid"] = g;
  }
  j["x_sorted"] = x_sorted_;
  j["y_sorted"] = y_sorted_;
  if (regularity_.bounded_response) {
    j["regularity"]["bounded_response"] = true;
    if (regularity_.bound) j["regularity"]["bound"] = *regularity_.bound;
  }
  return j;
}

FittedModel FittedModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "copreg-model")
    throw InvalidInput("not a copreg model file (missing magic header)");
  if (j.value("version", 0) != 1)
    throw InvalidInput("unsupported model format version");
  const FitMethod method =
      fit_method_from_string(j.at("method").get<std::string>());
  const int N = j.at("N").get<int>();
  const double s = j.at("s_exponent").get<double>();
  auto xs = j.at("x_sorted").get<std::vector<double>>();
  auto ys = j.at("y_sorted").get<std::vector<double>>();

  Payload payload =
      method == FitMethod::checkerboard
          ? Payload(CheckerboardModel(
                N, j.at("masses").get<std::vector<double>>()))
          : Payload(BernsteinModel(N, j.at("grid").get<std::vector<double>>()));
  FittedModel model(method, Resolution{s, N}, std::move(payload),
                    std::move(xs), std::move(ys));
  if (j.contains("regularity")) {
    RegularityNote note;
    note.bounded_response = j["regularity"].value("bounded_response", false);
    if (j["regularity"].contains("bound"))
      note.bound = j["regularity"]["bound"].get<double>();
    model.set_regularity(note);
  }
  return model;
}

}  // namespace copreg
