#include "fractbem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fractbem {

namespace {

// Allocation-free cell view used inside the pair recursion.
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
  c.diam = c.ratio * model.h0;
  c.meas = std::pow(c.ratio, model.ifs.dim) * model.measure;
  c.bary = c.map(model.barycenter);
  c.bc = c.map(model.ball_center);
  c.br = c.map.rho * model.ball_radius;
  return c;
}

double ball_gap(const LC& a, const LC& b) { return dist(a.bc, b.bc) - a.br - b.br; }

bool separated(const LC& a, const LC& b, double eta) {
  return ball_gap(a, b) >= eta * std::max(a.diam, b.diam);
}

struct SingDesc {
  bool is_log = false;
  double t = 1.0;
  double c = 1.0;
  double eval(double r) const { return is_log ? c * std::log(r) : c * std::pow(r, -t); }
  double mag(double r) const {  // magnitude scale used for pruning decisions
    return is_log ? std::abs(c) * (std::abs(std::log(r)) + 1.0) : std::abs(c) * std::pow(r, -t);
  }
};

SingDesc make_desc(const SingularKernel& k) {
  if (std::holds_alternative<PowerKernel>(k)) {
    const auto& p = std::get<PowerKernel>(k);
    return {false, p.exponent, p.coeff};
  }
  return {true, 0.0, std::get<LogKernel>(k).coeff};
}

struct Stats {
  double err = 0.0;
  long evals = 0;
  int max_depth = 0;
};

// barycenters and measures of the sub-mesh of `cell` at diameter <= size
void collect_nodes(const AttractorModel& model, const LC& cell, double size,
                   std::vector<Vec2>& pts, std::vector<double>& wts) {
  if (cell.diam <= size) {
    pts.push_back(cell.bary);
    wts.push_back(cell.meas);
    return;
  }
  for (int m = 0; m < model.ifs.map_count(); ++m)
    collect_nodes(model, light_child(model, cell, m), size, pts, wts);
}

// tensor barycenter rule for the singular kernel on a separated pair
double tensor_sing(const AttractorModel& model, const LC& a, const LC& b, const SingDesc& k,
                   double size_a, double size_b, Stats& st) {
  const double d0 = dist(a.bary, b.bary);
  if (size_a >= a.diam && size_b >= b.diam) {
    ++st.evals;
    const double v = a.meas * b.meas * k.eval(d0);
    const double rel = std::min(1.0, (k.is_log ? 0.2 : (k.t + 1.0) * (k.t + 2.0) / 12.0) *
                                         (a.diam * a.diam + b.diam * b.diam) / (d0 * d0));
    st.err += rel * std::abs(v);
    return v;
  }
  thread_local std::vector<Vec2> pa, pb;
  thread_local std::vector<double> wa, wb;
  pa.clear(); wa.clear(); pb.clear(); wb.clear();
  collect_nodes(model, a, size_a, pa, wa);
  collect_nodes(model, b, size_b, pb, wb);
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < pb.size(); ++j) row += wb[j] * k.eval(dist(pa[i], pb[j]));
    sum += wa[i] * row;
  }
  st.evals += static_cast<long>(pa.size() * pb.size());
  const double gap = std::max(ball_gap(a, b), 0.25 * (size_a + size_b));
  const double rel = std::min(1.0, (k.is_log ? 0.2 : (k.t + 1.0) * (k.t + 2.0) / 12.0) *
                                       (size_a * size_a + size_b * size_b) / (gap * gap));
  st.err += rel * std::abs(sum);
  return sum;
}

double leaf_size(const LC& cell, double gap, const QuadParams& q) {
  double s = q.kappa * gap;
  if (q.h_q > 0.0) s = std::max(s, q.h_q);
  return s;
}

double sing_pair(const AttractorModel& model, const LC& a, const LC& b, const SingDesc& k,
                 const QuadParams& q, int depth, double floor_abs, Stats& st);

// Coincident pair (both factors the same cell). The diagonal telescopes under
// self-similarity: every child self-integral is the parent integral scaled by
// rho^{2n-t} (power kernel) or rho^{2n} with an additive log term, so the
// off-diagonal children sum determines everything. Homogeneous IFSs get the
// exact closure; otherwise the recursion is summed level by level to the depth
// cap and the known tail is recorded as the truncation estimate.
double sing_self(const AttractorModel& model, const LC& cell, const SingDesc& k,
                 const QuadParams& q, int depth, double floor_abs, Stats& st) {
  st.max_depth = std::max(st.max_depth, depth);
  const int M = model.ifs.map_count();
  const int n = model.ifs.dim;
  const bool closure = model.ifs.homogeneous() && !q.force_recursive_coincident;

  std::vector<LC> kids;
  kids.reserve(M);
  for (int m = 0; m < M; ++m) kids.push_back(light_child(model, cell, m));

  double off = 0.0;
  for (int m = 0; m < M; ++m)
    for (int mp = 0; mp < M; ++mp) {
      if (m == mp) continue;
      off += sing_pair(model, kids[m], kids[mp], k, q, depth + 1, floor_abs, st);
    }

  if (!k.is_log) {
    const double sigma = model.ifs.ratio_power_sum(2.0 * n - k.t);
    const double exact = off / (1.0 - sigma);
    if (closure) return exact;
    const int D = std::max(q.depth_cap - depth, 1);
    const double partial = off * (1.0 - std::pow(sigma, D)) / (1.0 - sigma);
    st.err += std::abs(exact - partial);
    return partial;
  }

  // log kernel: I (1 - sigma2) = off + c |C|^2 tau, tau = sum rho^{2n} ln rho
  double sigma2 = 0.0, tau = 0.0;
  for (const auto& s : model.ifs.maps) {
    const double r2n = std::pow(s.rho, 2.0 * n);
    sigma2 += r2n;
    tau += r2n * std::log(s.rho);
  }
  const double m2 = cell.meas * cell.meas;
  const double exact = (off + k.c * m2 * tau) / (1.0 - sigma2);
  if (closure) return exact;
  const int D = std::max(q.depth_cap - depth, 1);
  // partial level sums: sum_{d<D} [sigma2^d off + c m2 (1-sigma2) tau d sigma2^{d-1}]
  const double xD = std::pow(sigma2, D);
  const double geo = (1.0 - xD) / (1.0 - sigma2);
  const double dgeo = (1.0 - xD - D * std::pow(sigma2, D - 1) * (1.0 - sigma2)) /
                      ((1.0 - sigma2) * (1.0 - sigma2));
  const double partial = off * geo + k.c * m2 * (1.0 - sigma2) * tau * dgeo;
  st.err += std::abs(exact - partial);
  return partial;
}

// distinct cells (possibly touching)
double sing_pair(const AttractorModel& model, const LC& a, const LC& b, const SingDesc& k,
                 const QuadParams& q, int depth, double floor_abs, Stats& st) {
  st.max_depth = std::max(st.max_depth, depth);
  const double gap = ball_gap(a, b);
  if (gap >= q.eta * std::max(a.diam, b.diam))
    return tensor_sing(model, a, b, k, leaf_size(a, gap, q), leaf_size(b, gap, q), st);

  const double d_eff = std::max(dist(a.bary, b.bary), 0.25 * (a.diam + b.diam));
  const double scale = a.meas * b.meas * k.mag(d_eff);
  if (depth >= q.depth_cap || scale < floor_abs) {
    ++st.evals;
    const double r_eval = std::max(dist(a.bary, b.bary), 0.05 * (a.diam + b.diam));
    const double v = a.meas * b.meas * k.eval(r_eval);
    st.err += 2.0 * scale;
    return v;
  }
  // split the larger cell only: keeps the tree arity down and grades toward the interface
  const bool split_a = a.diam >= b.diam;
  const LC& split = split_a ? a : b;
  const LC& keep = split_a ? b : a;
  double sum = 0.0;
  for (int m = 0; m < model.ifs.map_count(); ++m) {
    const LC child = light_child(model, split, m);
    sum += split_a ? sing_pair(model, child, keep, k, q, depth + 1, floor_abs, st)
                   : sing_pair(model, keep, child, k, q, depth + 1, floor_abs, st);
  }
  return sum;
}

}  // namespace

CellRule cell_rule(const AttractorModel& model, const Cell& cell, double h_q) {
  CellRule rule;
  rule.h_q = h_q;
  std::vector<Vec2> pts;
  std::vector<double> wts;
  collect_nodes(model, from_cell(cell), h_q, pts, wts);
  rule.nodes = std::move(pts);
  rule.weights = std::move(wts);
  return rule;
}

double integrate_on_cell(const AttractorModel& model, const Cell& cell,
                         const std::function<double(Vec2)>& f, double h_q) {
  thread_local std::vector<Vec2> pts;
  thread_local std::vector<double> wts;
  pts.clear(); wts.clear();
  collect_nodes(model, from_cell(cell), h_q, pts, wts);
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) s += wts[i] * f(pts[i]);
  return s;
}

cplx integrate_on_cell(const AttractorModel& model, const Cell& cell,
                       const std::function<cplx(Vec2)>& f, double h_q) {
  thread_local std::vector<Vec2> pts;
  thread_local std::vector<double> wts;
  pts.clear(); wts.clear();
  collect_nodes(model, from_cell(cell), h_q, pts, wts);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) s += wts[i] * f(pts[i]);
  return s;
}

PairClass classify_pair(const Cell& a, const Cell& b, double eta) {
  if (a.index == b.index) return PairClass::Coincident;
  return separated(from_cell(a), from_cell(b), eta) ? PairClass::Separated : PairClass::Touching;
}

PairResult singular_pair_integral(const AttractorModel& model, const Cell& a_in, const Cell& b_in,
                                  const SingularKernel& kernel, const QuadParams& params) {
  const SingDesc k = make_desc(kernel);
  const int n = model.ifs.dim;
  if (!k.is_log) {
    if (!(k.t >= 0.0 && k.t < n))
      throw std::invalid_argument("singular_pair_integral: exponent must satisfy 0 <= t < n");
    if (model.ifs.ratio_power_sum(2.0 * n - k.t) >= 1.0)
      throw std::invalid_argument("singular_pair_integral: non-integrable kernel "
                                  "(sum rho^{2n-t} >= 1)");
  }
  // canonical argument order: radial kernels are symmetric, so (a,b) and (b,a)
  // must produce bit-identical sums
  const bool swap = b_in.index < a_in.index;
  const Cell& a = swap ? b_in : a_in;
  const Cell& b = swap ? a_in : b_in;
  const LC la = from_cell(a), lb = from_cell(b);
  Stats st;
  const double d_ref = std::max(dist(la.bary, lb.bary), 0.25 * (la.diam + lb.diam));
  const double floor_abs = 1e-10 * la.meas * lb.meas * k.mag(d_ref);
  double value;
  if (a.index == b.index)
    value = sing_self(model, la, k, params, 0, floor_abs, st);
  else
    value = sing_pair(model, la, lb, k, params, 0, floor_abs, st);
  return {cplx(value, 0.0), st.err, st.evals, st.max_depth};
}

PairResult smooth_pair_integral(const AttractorModel& model, const Cell& a_in, const Cell& b_in,
                                const std::function<cplx(double)>& kernel_of_r,
                                const QuadParams& params, double oscillation_scale) {
  const bool swap = b_in.index < a_in.index;
  const Cell& a = swap ? b_in : a_in;
  const Cell& b = swap ? a_in : b_in;
  const LC la = from_cell(a), lb = from_cell(b);
  const double gap = ball_gap(la, lb);
  auto size_for = [&](const LC& c) {
    double s = params.h_q > 0.0 ? params.h_q : c.diam;
    if (gap > 0.0) s = std::max(s, params.kappa * gap);
    if (oscillation_scale > 0.0) s = std::min(s, oscillation_scale);
    return s;
  };
  thread_local std::vector<Vec2> pa, pb;
  thread_local std::vector<double> wa, wb;
  pa.clear(); wa.clear(); pb.clear(); wb.clear();
  collect_nodes(model, la, size_for(la), pa, wa);
  collect_nodes(model, lb, size_for(lb), pb, wb);
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < pa.size(); ++i) {
    cplx row{0.0, 0.0};
    for (std::size_t j = 0; j < pb.size(); ++j) row += wb[j] * kernel_of_r(dist(pa[i], pb[j]));
    sum += wa[i] * row;
  }
  Stats st;
  st.evals = static_cast<long>(pa.size() * pb.size());
  const double sa = size_for(la), sb = size_for(lb);
  const double dscale = std::max({gap, sa, sb});
  const double curv = (oscillation_scale > 0.0 ? 1.0 / (oscillation_scale * oscillation_scale) : 0.0) +
                      1.0 / (dscale * dscale);
  st.err = std::min(1.0, (sa * sa + sb * sb) * curv / 12.0) * std::abs(sum);
  return {sum, st.err, st.evals, 0};
}

PairResult helmholtz_pair_integral(const AttractorModel& model, const Cell& a, const Cell& b,
                                   double k, const QuadParams& params) {
  const int n = model.ifs.dim;
  const double osc = 0.5 / k;
  if (classify_pair(a, b, params.eta) == PairClass::Separated) {
    return smooth_pair_integral(
        model, a, b, [n, k](double r) { return fundamental_solution(n, k, r); }, params, osc);
  }
  const SingularKernel sing = (n == 2)
                                  ? SingularKernel(PowerKernel{1.0, 1.0 / (4.0 * std::numbers::pi)})
                                  : SingularKernel(LogKernel{-1.0 / (2.0 * std::numbers::pi)});
  PairResult rs = singular_pair_integral(model, a, b, sing, params);
  PairResult rm = smooth_pair_integral(
      model, a, b, [n, k](double r) { return kernel_remainder(n, k, r); }, params, osc);
  return {rs.value + rm.value, rs.error_estimate + rm.error_estimate, rs.kernel_evals + rm.kernel_evals,
          rs.max_depth};
}

}  // namespace fractbem
