#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotns/errors.hpp"
#include "rotns/field.hpp"
#include "rotns/operators.hpp"
#include "rotns/triads.hpp"

namespace rotns {

enum class Scheme { if_rk4, rk4 };

inline const char* scheme_name(Scheme s) { return s == Scheme::if_rk4 ? "if-rk4" : "rk4"; }

inline Scheme scheme_from_name(const std::string& s) {
  if (s == "if-rk4") return Scheme::if_rk4;
  if (s == "rk4") return Scheme::rk4;
  throw domain_error("unknown scheme '" + s + "' (accepted: if-rk4, rk4)");
}

struct SolverConfig {
  int radius = 8;
  double nu = 0.1;       // viscosity, > 0
  double dt = 1e-3;      // time step, 0 < dt <= horizon
  double horizon = 1.0;  // final time T
  double omega = 0.0;    // rotation rate; 0 selects the limit (resonant) dynamics
  Scheme scheme = Scheme::if_rk4;
  int sample_every = 1;  // ledger cadence in steps
  std::uint64_t seed = 1;

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    if (radius < 1) v.push_back("radius: truncation radius must be a positive integer (radius >= 1)");
    if (!(nu > 0.0)) v.push_back("nu: viscosity must be positive (nu > 0)");
    if (!(dt > 0.0)) v.push_back("dt: time step must be positive (0 < dt <= horizon)");
    if (!(horizon > 0.0)) v.push_back("horizon: final time must be positive (horizon > 0)");
    if (dt > 0.0 && horizon > 0.0 && dt > horizon)
      v.push_back("dt: time step must not exceed the horizon (0 < dt <= horizon)");
    if (!(omega >= 0.0)) v.push_back("omega: rotation rate must be non-negative (omega >= 0)");
    if (sample_every < 1)
      v.push_back("sample-every: cadence must be a positive integer (sample-every >= 1)");
    return v;
  }
  void validate() const {
    auto v = violations();
    if (!v.empty()) throw config_error(std::move(v));
  }
};

// Everything that depends only on the truncation radius, shared across runs.
struct SolverContext {
  ModeSet ms;
  HelicalBasis hb;
  TriadTable resonant;
  std::optional<TriadTable> full;

  explicit SolverContext(int radius, bool with_full = false,
                         std::size_t budget_bytes = std::size_t(3500) << 20)
      : ms(radius), hb(ms), resonant(build_triad_table(ms, hb, false, budget_bytes)) {
    if (with_full) full.emplace(build_triad_table(ms, hb, true, budget_bytes));
  }
};

namespace detail {

inline void throw_if_nonfinite(const SpectralField& u, double t) {
  for (std::size_t g = 0; g < u.size(); ++g) {
    if (std::isfinite(u[g].real()) && std::isfinite(u[g].imag())) continue;
    const std::size_t i = ModeSet::slot_mode(g);
    throw blowup_error(t, u.ms->modes[i], ModeSet::slot_sigma(g));
  }
}

inline void add_scaled(SpectralField& y, double a, const SpectralField& x) {
  for (std::size_t g = 0; g < y.size(); ++g) y[g] += a * x[g];
}

// multiply slot (k, s) by e[mode index of k]; the factors are helicity-blind
inline void scale_modes(SpectralField& u, const std::vector<double>& e) {
  for (std::size_t g = 0; g < u.size(); ++g) u[g] *= e[ModeSet::slot_mode(g)];
}

inline double l2_sq(const SpectralField& u) {
  double s = 0;
  for (std::size_t g = 0; g < u.size(); ++g) s += std::norm(u[g]);
  return s;
}

// squared H^1 seminorm, sum |k|^2 |u|^2 (no 2 pi factor)
inline double h1_sq(const SpectralField& u) {
  double s = 0;
  for (std::size_t g = 0; g < u.size(); ++g)
    s += double(u.ms->kn2[ModeSet::slot_mode(g)]) * std::norm(u[g]);
  return s;
}

}  // namespace detail

// One-step integrator. The integrating-factor scheme (Lawson RK4) treats the
// viscous multiplier exp(-nu (2 pi |k|)^2 dt) exactly per mode and applies
// classical RK4 to the transformed nonlinearity; plain rk4 is the reference
// fully explicit scheme. omega = 0 steps the limit equation (resonant table);
// omega > 0 steps the rotating system, evaluating the full operator at each
// stage time with phase omega * t_stage. force_full requests the full
// operator even at omega = 0 (used by the rotation-rate sweep baseline gap).
class TimeStepper {
 public:
  TimeStepper(const SolverContext& ctx, const SolverConfig& cfg, bool force_full = false)
      : ctx_(&ctx),
        nu_(cfg.nu),
        omega_(cfg.omega),
        scheme_(cfg.scheme),
        full_(cfg.omega > 0.0 || force_full),
        k1_(ctx.ms),
        k2_(ctx.ms),
        k3_(ctx.ms),
        k4_(ctx.ms),
        stage_(ctx.ms),
        work_(ctx.ms) {
    cfg.validate();
    if (ctx.ms.radius != cfg.radius)
      throw dimension_error("solver context and config disagree on the radius");
    if (full_ && !ctx.full)
      throw capability_error("rotating dynamics need a context built with the full table");
    visc_.resize(ctx.ms.count());
    const double four_pi_sq = 39.47841760435743447533796;
    for (std::size_t i = 0; i < visc_.size(); ++i)
      visc_[i] = nu_ * four_pi_sq * double(ctx.ms.kn2[i]);
    set_step(cfg.dt);
  }

  double step_size() const { return h_; }

  void set_step(double h) {
    h_ = h;
    e_half_.resize(visc_.size());
    e_full_.resize(visc_.size());
    for (std::size_t i = 0; i < visc_.size(); ++i) {
      e_half_[i] = std::exp(-0.5 * h * visc_[i]);
      e_full_[i] = std::exp(-h * visc_[i]);
    }
  }

  // advance u from time t by one step of the current size
  void step(SpectralField& u, double t) {
    if (scheme_ == Scheme::if_rk4)
      step_if(u, t);
    else
      step_explicit(u, t);
    detail::throw_if_nonfinite(u, t + h_);
  }

  // out = -B(u, u), the nonlinear part of du/dt at absolute time t
  void nonlinear(const SpectralField& u, double t, SpectralField& out) {
    if (full_)
      apply_full_rotating(*ctx_->full, u, u, omega_ * t, out);
    else
      apply_resonant(ctx_->resonant, u, u, out);
    for (std::size_t g = 0; g < out.size(); ++g) out[g] = -out[g];
  }

 private:
  void step_if(SpectralField& u, double t) {
    const double h = h_;
    nonlinear(u, t, k1_);
    stage_ = u;
    detail::add_scaled(stage_, 0.5 * h, k1_);
    detail::scale_modes(stage_, e_half_);
    nonlinear(stage_, t + 0.5 * h, k2_);
    stage_ = u;
    detail::scale_modes(stage_, e_half_);
    detail::add_scaled(stage_, 0.5 * h, k2_);
    nonlinear(stage_, t + 0.5 * h, k3_);
    k2_ += k3_;                          // k2 now holds k2 + k3
    detail::scale_modes(k3_, e_half_);   // k3 now holds E_{h/2} k3
    stage_ = u;
    detail::scale_modes(stage_, e_full_);  // E_h u, reused below
    work_ = stage_;
    detail::add_scaled(work_, h, k3_);
    nonlinear(work_, t + h, k4_);
    detail::scale_modes(k1_, e_full_);
    detail::scale_modes(k2_, e_half_);
    u = stage_;
    detail::add_scaled(u, h / 6.0, k1_);
    detail::add_scaled(u, h / 3.0, k2_);
    detail::add_scaled(u, h / 6.0, k4_);
  }

  // full right-hand side -nu (2 pi |k|)^2 u - B(u, u) for the explicit scheme
  void rhs(const SpectralField& u, double t, SpectralField& out) {
    nonlinear(u, t, out);
    for (std::size_t g = 0; g < out.size(); ++g)
      out[g] -= visc_[ModeSet::slot_mode(g)] * u[g];
  }

  void step_explicit(SpectralField& u, double t) {
    const double h = h_;
    rhs(u, t, k1_);
    work_ = u;
    detail::add_scaled(work_, 0.5 * h, k1_);
    rhs(work_, t + 0.5 * h, k2_);
    work_ = u;
    detail::add_scaled(work_, 0.5 * h, k2_);
    rhs(work_, t + 0.5 * h, k3_);
    work_ = u;
    detail::add_scaled(work_, h, k3_);
    rhs(work_, t + h, k4_);
    detail::add_scaled(u, h / 6.0, k1_);
    detail::add_scaled(u, h / 3.0, k2_);
    detail::add_scaled(u, h / 3.0, k3_);
    detail::add_scaled(u, h / 6.0, k4_);
  }

  const SolverContext* ctx_;
  double nu_, omega_, h_ = 0;
  Scheme scheme_;
  bool full_;
  std::vector<double> visc_, e_half_, e_full_;
  SpectralField k1_, k2_, k3_, k4_, stage_, work_;
};

namespace detail {

// number of whole steps plus an optional short tail landing exactly on T
struct StepPlan {
  std::int64_t whole;
  double tail;  // 0 when dt divides the horizon
};

inline StepPlan plan_steps(double span, double dt) {
  std::int64_t n = std::int64_t(std::floor(span / dt + 1e-9));
  if (n < 0) n = 0;
  double tail = span - double(n) * dt;
  if (tail < 1e-12 * span) tail = 0.0;
  return {n, tail};
}

// advance to the exact target time with whole steps then one shortened step
inline void integrate_to(TimeStepper& st, SpectralField& u, double t0, double t1) {
  const double dt = st.step_size();
  const StepPlan plan = plan_steps(t1 - t0, dt);
  double t = t0;
  for (std::int64_t j = 0; j < plan.whole; ++j) {
    st.step(u, t);
    t = t0 + double(j + 1) * dt;
  }
  if (plan.tail > 0.0) {
    st.set_step(plan.tail);
    st.step(u, t);
    st.set_step(dt);
  }
}

// running integral of per-step samples f_j on a uniform grid of spacing h.
// Even indices advance by composite Simpson pairs; an odd index adds one
// backward-stencil quadratic interval on top of the previous even value.
// That keeps every cumulative value fourth-order accurate: chaining the
// single-interval rule instead would lose an order, because its local
// h^4 defect has a fixed sign and accumulates.
inline std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> I(n, 0.0);
  if (n < 2) return I;
  if (n == 2) {
    I[1] = 0.5 * h * (f[0] + f[1]);
    return I;
  }
  I[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
  for (std::size_t j = 2; j < n; ++j) {
    if (j % 2 == 0)
      I[j] = I[j - 2] + h * (f[j - 2] + 4.0 * f[j - 1] + f[j]) / 3.0;
    else
      I[j] = I[j - 1] + h * (-f[j - 2] + 8.0 * f[j - 1] + 5.0 * f[j]) / 12.0;
  }
  return I;
}

// integral over a trailing short interval of length c, using the quadratic
// through the last two uniform samples (spacing h) and the endpoint value
inline double tail_quadratic(double f_prev, double f_last, double f_end, double h, double c) {
  const double w_prev = -c * c * c / (6.0 * h * (h + c));
  const double w_last = c * c / (6.0 * h) + 0.5 * c;
  const double w_end = (c * c / 3.0 + 0.5 * h * c) / (h + c);
  return w_prev * f_prev + w_last * f_last + w_end * f_end;
}

}  // namespace detail

struct TrajectorySample {
  double t;
  double l2;        // ||u(t)||_{L^2}
  double h1;        // H^1 seminorm (sum |k|^2 |u_k|^2)^{1/2}
  double residual;  // | ||u(t)||^2 + 2 nu int_0^t ||grad u||^2 - ||u0||^2 |
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  SpectralField final_state;
  double final_time = 0;
  double max_residual = 0;
};

// Integrate the initial state over [0, horizon] and keep the energy ledger.
// The dissipation integral uses every step boundary regardless of the sample
// cadence, so the reported residual tracks the scheme's own accuracy.
inline TrajectoryRecord simulate(const SolverContext& ctx, const SpectralField& u0,
                                 const SolverConfig& cfg) {
  cfg.validate();
  check_same_modes(u0, SpectralField(ctx.ms));
  if (cfg.omega > 0.0 && cfg.dt * cfg.omega > 0.1 * (1.0 + 1e-9))
    throw resolution_error("dt must resolve the fastest rotation phase (dt <= 0.1/omega)");

  TimeStepper st(ctx, cfg);
  const detail::StepPlan plan = detail::plan_steps(cfg.horizon, cfg.dt);
  const std::size_t nb = std::size_t(plan.whole) + (plan.tail > 0.0 ? 2 : 1);

  SpectralField u = u0;
  std::vector<double> times(nb), e_l2(nb), grad_sq(nb);
  const double four_pi_sq = 39.47841760435743447533796;
  auto record = [&](std::size_t j, double t) {
    times[j] = t;
    e_l2[j] = detail::l2_sq(u);
    grad_sq[j] = four_pi_sq * detail::h1_sq(u);
  };
  record(0, 0.0);
  for (std::int64_t j = 0; j < plan.whole; ++j) {
    st.step(u, times[std::size_t(j)]);
    record(std::size_t(j) + 1, double(j + 1) * cfg.dt);
  }
  if (plan.tail > 0.0) {
    st.set_step(plan.tail);
    st.step(u, times[nb - 2]);
    record(nb - 1, cfg.horizon);
  }

  // dissipation integral: Simpson-type running sum over the uniform part,
  // one non-uniform quadratic interval over the short tail
  std::vector<double> grad_uniform(grad_sq.begin(),
                                   grad_sq.begin() + std::int64_t(plan.whole) + 1);
  std::vector<double> I = detail::cumulative_simpson(grad_uniform, cfg.dt);
  if (plan.tail > 0.0) {
    // dt <= horizon guarantees at least one whole step before any tail
    I.push_back(I.back() + detail::tail_quadratic(grad_sq[nb - 3], grad_sq[nb - 2],
                                                  grad_sq[nb - 1], cfg.dt, plan.tail));
  }

  TrajectoryRecord rec;
  for (std::size_t j = 0; j < nb; ++j) {
    const bool keep = (j % std::size_t(cfg.sample_every) == 0) || j == nb - 1;
    if (!keep) continue;
    TrajectorySample s;
    s.t = times[j];
    s.l2 = std::sqrt(e_l2[j]);
    s.h1 = std::sqrt(grad_sq[j] / four_pi_sq);
    s.residual = std::abs(e_l2[j] + 2.0 * cfg.nu * I[j] - e_l2[0]);
    rec.max_residual = std::max(rec.max_residual, s.residual);
    rec.samples.push_back(s);
  }
  rec.final_state = u;
  rec.final_time = cfg.horizon;
  return rec;
}

struct UniquenessSample {
  double t;
  double w_l2;                // || u_a - u_b ||_{L^2}
  double identity_residual;   // relative defect of <B(u,u)-B(v,v), w> = <B(w,u), w>
  double gronwall_lhs;        // (1/2) d||w||^2/dt + nu ||grad w||^2, discrete
  double gronwall_rhs;        // C ||w|| ||grad w|| ||grad u||
  bool gronwall_pass;
};

struct UniquenessReport {
  std::vector<UniquenessSample> samples;
  double sup_w = 0;
  double max_identity_residual = 0;
  bool gronwall_all = true;
  double trilinear_constant = 0;
};

// Twin-run stability experiment for the limit equation: evolve the same
// initial state under two configurations that may differ only in step size
// or scheme, and measure the divergence w = u_a - u_b along shared sample
// times. At every sample the energy identity <B(u,u) - B(v,v), w> =
// <B(w,u), w> is checked (the second argument of the swapped term pairs off
// exactly), and for consecutive samples the discrete differential inequality
//   (1/2) d||w||^2/dt + nu ||grad w||^2 <= C ||w|| ||grad w|| ||grad u||
// is certified with the caller-supplied empirical trilinear constant C,
// evaluating ||grad u|| on the finer of the two runs.
inline UniquenessReport uniqueness_experiment(const SolverContext& ctx,
                                              const SpectralField& u0,
                                              const SolverConfig& cfg_a,
                                              const SolverConfig& cfg_b,
                                              double trilinear_constant) {
  cfg_a.validate();
  cfg_b.validate();
  check_same_modes(u0, SpectralField(ctx.ms));
  {
    std::vector<std::string> v;
    if (cfg_a.radius != cfg_b.radius || cfg_a.radius != ctx.ms.radius)
      v.push_back("radius: both runs must share the context's truncation radius");
    if (cfg_a.nu != cfg_b.nu) v.push_back("nu: both runs must share the viscosity");
    if (cfg_a.horizon != cfg_b.horizon) v.push_back("horizon: both runs must share the horizon");
    if (cfg_a.omega != 0.0 || cfg_b.omega != 0.0)
      v.push_back("omega: the uniqueness experiment runs the limit dynamics (omega = 0)");
    const double int_a = cfg_a.dt * cfg_a.sample_every;
    const double int_b = cfg_b.dt * cfg_b.sample_every;
    if (std::abs(int_a - int_b) > 1e-9 * std::max(int_a, int_b))
      v.push_back("sample-every: the two runs must sample at the same times");
    if (!v.empty()) throw config_error(std::move(v));
  }
  if (!(trilinear_constant > 0.0))
    throw domain_error("uniqueness_experiment: trilinear constant must be positive");

  TimeStepper st_a(ctx, cfg_a), st_b(ctx, cfg_b);
  const bool b_finer = cfg_b.dt <= cfg_a.dt;
  const double interval = cfg_a.dt * cfg_a.sample_every;
  const std::int64_t nsamples = detail::plan_steps(cfg_a.horizon, interval).whole;
  const double two_pi = 6.283185307179586476925287;

  SpectralField ua = u0, ub = u0;
  SpectralField w(ctx.ms), buu(ctx.ms), bvv(ctx.ms), bwu(ctx.ms);

  UniquenessReport rep;
  rep.trilinear_constant = trilinear_constant;
  double prev_e = 0;
  for (std::int64_t s = 0; s <= nsamples + 1; ++s) {
    double t = double(s) * interval;
    if (s == nsamples + 1) {
      if (double(nsamples) * interval >= cfg_a.horizon - 1e-12 * cfg_a.horizon) break;
      t = cfg_a.horizon;  // trailing partial interval
    }
    if (s > 0) {
      const double t_prev = rep.samples.back().t;
      detail::integrate_to(st_a, ua, t_prev, t);
      detail::integrate_to(st_b, ub, t_prev, t);
    }

    w = ua;
    w -= ub;
    const double wn = l2_norm(w);
    const double e = wn * wn;
    const double gw = two_pi * std::sqrt(detail::h1_sq(w));

    apply_resonant(ctx.resonant, ua, ua, buu);
    apply_resonant(ctx.resonant, ub, ub, bvv);
    apply_resonant(ctx.resonant, w, ua, bwu);
    const double scale = wn * (l2_norm(buu) + l2_norm(bvv));
    buu -= bvv;
    const cplx lhs_ip = inner_product(buu, w);
    const cplx rhs_ip = inner_product(bwu, w);
    const double denom = scale + std::abs(rhs_ip);
    const double defect = std::abs(lhs_ip - rhs_ip);
    const double identity_residual = denom > 0.0 ? defect / denom : defect;

    UniquenessSample smp;
    smp.t = t;
    smp.w_l2 = wn;
    smp.identity_residual = identity_residual;
    smp.gronwall_lhs = 0;
    smp.gronwall_rhs = 0;
    smp.gronwall_pass = true;
    if (s > 0) {
      const double dt_s = t - rep.samples.back().t;
      const double gu = two_pi * std::sqrt(detail::h1_sq(b_finer ? ub : ua));
      smp.gronwall_lhs = 0.5 * (e - prev_e) / dt_s + cfg_a.nu * gw * gw;
      smp.gronwall_rhs = trilinear_constant * wn * gw * gu;
      smp.gronwall_pass = smp.gronwall_lhs <= smp.gronwall_rhs;
      rep.gronwall_all = rep.gronwall_all && smp.gronwall_pass;
    }
    rep.sup_w = std::max(rep.sup_w, wn);
    rep.max_identity_residual = std::max(rep.max_identity_residual, identity_residual);
    rep.samples.push_back(smp);
    prev_e = e;
  }
  return rep;
}

struct OmegaSweepRow {
  double omega;
  double gap;  // || u_omega(T) - u_limit(T) ||_{L^2}
};

struct OmegaSweepReport {
  std::vector<OmegaSweepRow> rows;
  double limit_final_l2 = 0;
};

// Final-time distance between the rotating system at each rate and the limit
// dynamics, from the same initial state. All runs share the configured step,
// which must resolve the fastest phase present. An entry omega = 0 measures
// the plain difference between the full and the resonant operator dynamics.
inline OmegaSweepReport omega_limit_study(const SolverContext& ctx, const SpectralField& u0,
                                          const std::vector<double>& omegas,
                                          const SolverConfig& cfg) {
  cfg.validate();
  check_same_modes(u0, SpectralField(ctx.ms));
  if (!ctx.full) throw capability_error("omega_limit_study needs a context with the full table");
  if (omegas.empty()) throw domain_error("omega_limit_study: empty rate list");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] < 0.0) throw domain_error("omega_limit_study: rates must be non-negative");
    if (i > 0 && omegas[i] <= omegas[i - 1])
      throw domain_error("omega_limit_study: rates must be strictly increasing");
  }
  const double fastest = omegas.back();
  if (fastest > 0.0 && cfg.dt * fastest > 0.1 * (1.0 + 1e-9))
    throw resolution_error("dt must resolve the fastest rotation phase (dt <= 0.1/omega)");

  SolverConfig base = cfg;
  base.omega = 0.0;
  SpectralField u_limit = u0;
  {
    TimeStepper st(ctx, base);
    detail::integrate_to(st, u_limit, 0.0, cfg.horizon);
  }

  OmegaSweepReport rep;
  rep.limit_final_l2 = l2_norm(u_limit);
  SpectralField w(ctx.ms);
  for (double om : omegas) {
    SolverConfig c = cfg;
    c.omega = om;
    SpectralField u = u0;
    TimeStepper st(ctx, c, /*force_full=*/true);
    detail::integrate_to(st, u, 0.0, cfg.horizon);
    w = u;
    w -= u_limit;
    rep.rows.push_back({om, l2_norm(w)});
  }
  return rep;
}

// concentrated random initial data: decaying spectrum, real field, unit mass
inline SpectralField standard_initial_state(const ModeSet& ms, std::uint64_t seed) {
  SpectralField u = random_real_field(ms, seed, 2.0);
  const double n = l2_norm(u);
  if (n == 0.0) throw domain_error("standard_initial_state: degenerate draw");
  u *= 1.0 / n;
  return u;
}

}  // namespace rotns
