#include "prodnorm/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <thread>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/rng.hpp"

namespace prodnorm::sampling {
namespace {

using Drawer = std::function<double(Rng&)>;

std::vector<double> generate(const Drawer& draw, std::uint64_t seed, std::size_t count, unsigned threads) {
  std::vector<double> out(count);
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  auto run_chunk = [&](std::size_t c) {
    Rng rng(seed, c);
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(count, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) out[i] = draw(rng);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

Drawer drawer_for(const DistParams& p, Representation rep) {
  const int n = p.n;
  const double sn = p.s_n();
  const double rho = p.rho;
  const double root = std::sqrt(1.0 - rho * rho);
  switch (rep) {
    case Representation::R1_bilinear:
      return [=](Rng& g) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          const double x = g.normal();
          const double w = g.normal();
          acc += root * x * w + rho * x * x;
        }
        return sn * acc;
      };
    case Representation::R2_chisq_normal:
      return [=](Rng& g) {
        const double s = g.chi_square(n);
        const double t = g.normal();
        return rho * sn * s + sn * root * std::sqrt(s) * t;
      };
    case Representation::R4_gamma_difference:
      return [=](Rng& g) {
        const double v = g.chi_square(n);
        const double v2 = g.chi_square(n);
        return 0.5 * sn * ((1.0 + rho) * v - (1.0 - rho) * v2);
      };
    case Representation::R5_uniform_logs:
      if (n % 2 != 0) throw DomainError("sample: R5 requires even n");
      return [=](Rng& g) {
        double a = 0.0;
        double b = 0.0;
        for (int j = 0; j < n / 2; ++j) a += std::log(g.uniform());
        for (int j = 0; j < n / 2; ++j) b += std::log(g.uniform());
        return -sn * (1.0 + rho) * a + sn * (1.0 - rho) * b;
      };
    case Representation::second_chaos: {
      const ChaosForm f = second_chaos_form(p);
      return [f](Rng& g) {
        double acc = f.shift;
        for (double lam : f.eigenvalues) {
          const double z = g.normal();
          acc += lam * (z * z - 1.0);
        }
        return acc;
      };
    }
  }
  throw DomainError("sample: unknown representation");
}

}  // namespace

std::string to_string(Representation r) {
  switch (r) {
    case Representation::R1_bilinear:
      return "R1_bilinear";
    case Representation::R2_chisq_normal:
      return "R2_chisq_normal";
    case Representation::R4_gamma_difference:
      return "R4_gamma_difference";
    case Representation::R5_uniform_logs:
      return "R5_uniform_logs";
    case Representation::second_chaos:
      return "second_chaos";
  }
  return "unknown";
}

Representation representation_from_string(const std::string& s) {
  for (auto r : {Representation::R1_bilinear, Representation::R2_chisq_normal, Representation::R4_gamma_difference,
                 Representation::R5_uniform_logs, Representation::second_chaos}) {
    if (s == to_string(r)) return r;
  }
  if (s == "r1" || s == "R1") return Representation::R1_bilinear;
  if (s == "r2" || s == "R2") return Representation::R2_chisq_normal;
  if (s == "r4" || s == "R4") return Representation::R4_gamma_difference;
  if (s == "r5" || s == "R5") return Representation::R5_uniform_logs;
  if (s == "chaos") return Representation::second_chaos;
  throw DomainError("unknown representation '" + s + "'");
}

SampleBatch sample(const DistParams& p, Representation rep, std::uint64_t seed, std::size_t count, unsigned threads) {
  p.validate();
  if (count < 1) throw DomainError("sample: count must be >= 1");
  SampleBatch b;
  b.params = p;
  b.rep = rep;
  b.seed = seed;
  b.values = generate(drawer_for(p, rep), seed, count, threads);
  return b;
}

ChaosForm second_chaos_form(const DistParams& p) {
  p.validate();
  ChaosForm f;
  f.shift = p.rho * p.s();
  f.eigenvalues.assign(2 * p.n, 0.0);
  for (int j = 0; j < p.n; ++j) {
    f.eigenvalues[j] = 0.5 * p.s_n() * (1.0 + p.rho);
    f.eigenvalues[p.n + j] = 0.5 * p.s_n() * (p.rho - 1.0);
  }
  return f;
}

std::vector<double> sample_quadratic_form(double shift, const std::vector<double>& eigenvalues, std::uint64_t seed,
                                          std::size_t count, unsigned threads) {
  auto draw = [&](Rng& g) {
    double acc = shift;
    for (double lam : eigenvalues) {
      const double z = g.normal();
      acc += lam * (z * z - 1.0);
    }
    return acc;
  };
  return generate(draw, seed, count, threads);
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p(double d, double ne) {
  const double rn = std::sqrt(ne);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace

KsResult ks_statistic(const DistParams& reference, std::vector<double> values) {
  if (values.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(values.begin(), values.end());
  const std::vector<double> f = dist::cdf_many(reference, values);
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - f[i], f[i] - i / n));
  }
  return {d, ks_p(d, n)};
}

KsResult ks_statistic(const SampleBatch& batch) { return ks_statistic(batch.params, batch.values); }

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return {d, ks_p(d, na * nb / (na + nb))};
}

std::vector<double> k_statistics(const std::vector<double>& values) {
  const std::size_t count = values.size();
  if (count < 4) throw DomainError("k_statistics: need at least 4 values");
  long double mean = 0.0L;
  for (double v : values) mean += v;
  mean /= static_cast<long double>(count);
  // Power sums of centred data: the k_r, r >= 2, are shift invariant.
  long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L, s4 = 0.0L;
  for (double v : values) {
    const long double d = v - mean;
    const long double d2 = d * d;
    s1 += d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  const long double n = static_cast<long double>(count);
  std::vector<double> k(5, 0.0);
  k[1] = static_cast<double>(mean + s1 / n);
  k[2] = static_cast<double>((n * s2 - s1 * s1) / (n * (n - 1)));
  k[3] = static_cast<double>((2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2)));
  k[4] = static_cast<double>((-6 * s1 * s1 * s1 * s1 + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 -
                              4 * n * (n + 1) * s1 * s3 + n * n * (n + 1) * s4) /
                             (n * (n - 1) * (n - 2) * (n - 3)));
  return k;
}

std::vector<double> k_statistic_stderr(const std::vector<double>& kappa, std::size_t count) {
  if (kappa.size() < 9) throw DomainError("k_statistic_stderr: needs cumulants up to order 8");
  const double n = static_cast<double>(count);
  const auto& k = kappa;
  std::vector<double> se(5, 0.0);
  se[1] = std::sqrt(k[2] / n);
  se[2] = std::sqrt(k[4] / n + 2.0 * k[2] * k[2] / (n - 1.0));
  se[3] = std::sqrt((k[6] + 9.0 * k[4] * k[2] + 9.0 * k[3] * k[3] + 6.0 * k[2] * k[2] * k[2]) / n);
  se[4] = std::sqrt((k[8] + 16.0 * k[6] * k[2] + 48.0 * k[5] * k[3] + 34.0 * k[4] * k[4] +
                     72.0 * k[4] * k[2] * k[2] + 144.0 * k[3] * k[3] * k[2] + 24.0 * std::pow(k[2], 4)) /
                    n);
  return se;
}

void write_csv(std::ostream& os, const std::vector<double>& values) {
  char buf[40];
  os << "value\r\n";
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g\r\n", v);
    os << buf;
  }
}

namespace {

void put_le64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw DomainError("read_binary: truncated input");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_binary(std::ostream& os, const std::vector<double>& values) {
  put_le64(os, values.size());
  for (double v : values) put_le64(os, std::bit_cast<std::uint64_t>(v));
}

std::vector<double> read_binary(std::istream& is) {
  const std::uint64_t count = get_le64(is);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(std::bit_cast<double>(get_le64(is)));
  return out;
}

}  // namespace prodnorm::sampling
