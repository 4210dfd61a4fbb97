#include "fractbem/mc_oracle.hpp"

#include <cmath>

namespace fractbem {

namespace {

struct LC {
  Similarity map;
  double ratio, diam, meas;
  Vec2 bary, bc;
  double br;
};

LC from_cell(const Cell& c) {
  return {c.map, c.ratio, c.diameter, c.measure, c.barycenter, c.ball_center, c.ball_radius};
}

LC light_child(const AttractorModel& model, const LC& p, int m0) {
  const Similarity& s = model.ifs.maps[m0];
  LC c;
  c.map = p.map.compose(s);
  c.ratio = p.ratio * s.rho;
  c.diam = p.diam * s.rho;
  c.meas = p.meas * (model.ifs.dim == 2 ? s.rho * s.rho : s.rho);
  c.bary = c.map(model.barycenter);
  c.bc = c.map(model.ball_center);
  c.br = c.map.rho * model.ball_radius;
  return c;
}

McResult reduce(long n, long double sum_re, long double sum_im, long double sumsq) {
  McResult r;
  r.samples = n;
  const double mre = static_cast<double>(sum_re / n);
  const double mim = static_cast<double>(sum_im / n);
  r.value = {mre, mim};
  const long double var = std::max(0.0L, sumsq / n - (sum_re / n) * (sum_re / n) -
                                             (sum_im / n) * (sum_im / n));
  r.stderr_est = static_cast<double>(std::sqrt(var / n));
  return r;
}

}  // namespace

McResult mc_cell_integral(const AttractorModel& model, const Cell& cell,
                          const std::function<cplx(Vec2)>& f, long samples,
                          std::uint64_t seed, double quant_rel) {
  const ChaosSampler sampler(model, seed, 1, quant_rel);
  long double sre = 0.0L, sim = 0.0L, ssq = 0.0L;
  for (long i = 0; i < samples; ++i) {
    const cplx v = cell.measure * f(sampler.sample_in_cell(cell, static_cast<std::uint64_t>(i)));
    sre += v.real();
    sim += v.imag();
    ssq += v.real() * v.real() + v.imag() * v.imag();
  }
  return reduce(samples, sre, sim, ssq);
}

McResult mc_cell_integral(const AttractorModel& model, const Cell& cell,
                          const std::function<double(Vec2)>& f, long samples,
                          std::uint64_t seed, double quant_rel) {
  return mc_cell_integral(
      model, cell, std::function<cplx(Vec2)>([&f](Vec2 x) { return cplx(f(x), 0.0); }), samples,
      seed, quant_rel);
}

McResult mc_pair_smooth(const AttractorModel& model, const Cell& a, const Cell& b,
                        const std::function<cplx(double)>& kernel_of_r, long samples,
                        std::uint64_t seed, double quant_rel) {
  const ChaosSampler sx(model, seed, 2, quant_rel);
  const ChaosSampler sy(model, seed, 3, quant_rel);
  const double w = a.measure * b.measure;
  long double sre = 0.0L, sim = 0.0L, ssq = 0.0L;
  for (long i = 0; i < samples; ++i) {
    const Vec2 x = sx.sample_in_cell(a, static_cast<std::uint64_t>(i));
    const Vec2 y = sy.sample_in_cell(b, static_cast<std::uint64_t>(i));
    const cplx v = w * kernel_of_r(dist(x, y));
    sre += v.real();
    sim += v.imag();
    ssq += v.real() * v.real() + v.imag() * v.imag();
  }
  return reduce(samples, sre, sim, ssq);
}

McResult mc_pair_singular(const AttractorModel& model, const Cell& a, const Cell& b,
                          const SingularKernel& kernel, long samples, std::uint64_t seed,
                          double quant_rel) {
  const bool is_log = std::holds_alternative<LogKernel>(kernel);
  const double t = is_log ? 0.0 : std::get<PowerKernel>(kernel).exponent;
  const double coeff = is_log ? std::get<LogKernel>(kernel).coeff : std::get<PowerKernel>(kernel).coeff;
  auto keval = [&](double r) { return is_log ? coeff * std::log(r) : (t == 1.0 ? coeff / r : coeff * std::pow(r, -t)); };
  auto kmag = [&](double r) {
    return is_log ? std::abs(std::log(r)) + 1.0 : (t == 1.0 ? 1.0 / r : std::pow(r, -t));
  };

  const CounterRng rng{seed, 4};
  const double quant_abs = quant_rel * model.h0;
  const int M = model.ifs.map_count();
  const LC a0 = from_cell(a), b0 = from_cell(b);

  long double sre = 0.0L, ssq = 0.0L;
  std::vector<LC> ka(M), kb(M);
  std::vector<double> w(M * M);
  for (long i = 0; i < samples; ++i) {
    LC A = a0, B = b0;
    bool same = a.index == b.index;
    double invp = 1.0;
    for (int level = 0; same || std::max(A.diam, B.diam) > quant_abs; ++level) {
      for (int m = 0; m < M; ++m) {
        ka[m] = light_child(model, A, m);
        kb[m] = light_child(model, B, m);
      }
      double wsum = 0.0;
      for (int m = 0; m < M; ++m)
        for (int mp = 0; mp < M; ++mp) {
          const LC& ca = ka[m];
          const LC& cb = kb[mp];
          const double dd = std::max(dist(ca.bary, cb.bary), 0.25 * (ca.diam + cb.diam));
          wsum += w[m * M + mp] = ca.meas * cb.meas * kmag(dd);
        }
      const double u = rng.uniform(static_cast<std::uint64_t>(i) * 0x9e3779b1ull + level) * wsum;
      double acc = 0.0;
      int pick = M * M - 1;
      for (int j = 0; j < M * M; ++j) {
        acc += w[j];
        if (u < acc) {
          pick = j;
          break;
        }
      }
      A = ka[pick / M];
      B = kb[pick % M];
      same = same && (pick / M == pick % M);
      invp *= wsum / w[pick];
      if (level > 200) break;  // cannot happen for contractions; safety only
    }
    const double r = std::max(dist(A.bary, B.bary), 0.05 * (A.diam + B.diam));
    const double v = A.meas * B.meas * keval(r) * invp;
    sre += v;
    ssq += static_cast<long double>(v) * v;
  }
  return reduce(samples, sre, 0.0L, ssq);
}

McResult mc_pair_helmholtz(const AttractorModel& model, const Cell& a, const Cell& b,
                           double k, long samples, std::uint64_t seed, double quant_rel) {
  const int n = model.ifs.dim;
  const SingularKernel sing = (n == 2)
                                  ? SingularKernel(PowerKernel{1.0, 1.0 / (4.0 * std::numbers::pi)})
                                  : SingularKernel(LogKernel{-1.0 / (2.0 * std::numbers::pi)});
  const McResult rs = mc_pair_singular(model, a, b, sing, samples, seed, quant_rel);
  const McResult rm = mc_pair_smooth(
      model, a, b, [n, k](double r) { return kernel_remainder(n, k, r); }, samples, seed + 1,
      quant_rel);
  McResult out;
  out.samples = samples;
  out.value = rs.value + rm.value;
  out.stderr_est = std::hypot(rs.stderr_est, rm.stderr_est);
  return out;
}

}  // namespace fractbem
