#include "fhartree/evolution.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/fft.hpp"

namespace fhartree {

void StepperConfig::validate() const {
  if (!(dt > 0.0 && dt_min > 0.0 && dt > dt_min)) throw ValidationError("stepper requires dt > dt_min > 0");
  if (!(t_end >= 0.0)) throw ValidationError("stepper t_end must be nonnegative");
  if (record_every < 1) throw ValidationError("stepper record_every must be >= 1");
  if (!(blowup_grad_factor > 1.0)) throw ValidationError("stepper blowup_grad_factor must exceed 1");
  if (!(tail_fraction_max > 0.0 && tail_fraction_max <= 1.0)) {
    throw ValidationError("stepper tail_fraction_max must lie in (0, 1]");
  }
  if (!(adapt_phase > 0.0)) throw ValidationError("stepper adapt_phase must be positive");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::GlobalDispersing: return "GlobalDispersing";
    case Verdict::BlowUp: return "BlowUp";
    case Verdict::Soliton: return "Soliton";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double RunRecord::mass_drift() const {
  double worst = 0.0;
  for (double m : mass_series) worst = std::max(worst, std::abs(m - mass_series.front()) / mass_series.front());
  return worst;
}

double RunRecord::energy_drift() const {
  if (energy_series.empty()) return 0.0;
  const double scale = std::max(std::abs(energy_series.front()), hs_series.front());
  double worst = 0.0;
  for (double e : energy_series) worst = std::max(worst, std::abs(e - energy_series.front()) / scale);
  return worst;
}

std::string RunRecord::csv_header() {
  return "t,dt,mass,energy,hs_sq,hsc_norm,hartree,lpc_norm,me_ratio,grad_ratio,membership,tail_fraction,"
         "soliton_deviation,strichartz";
}

void RunRecord::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << times[i] << ',' << dt_series[i] << ',' << mass_series[i] << ',' << energy_series[i] << ','
       << hs_series[i] << ',' << hsc_series[i] << ',' << v_series[i] << ',' << lpc_series[i] << ','
       << me_ratio_series[i] << ',' << grad_ratio_series[i] << ',' << to_string(membership_series[i]) << ','
       << tail_series[i] << ',' << soliton_deviation[i] << ',' << strichartz_series[i] << '\n';
  }
}

namespace {

// Strang splitting with the half-step phase table cached for the last dt.
class SplitStepper {
 public:
  explicit SplitStepper(const MultiplierSet& mult) : mult_(mult), fft_(FourierTransform::for_grid(mult.grid())) {}

  SpectralField step(const SpectralField& u, double dt, bool nonlinear) {
    refresh(dt);
    const auto size = u.size();
    spec_.resize(size);
    SpectralField out(u.grid());
    auto half_linear = [&](const Complex* in, Complex* res) {
      fft_.forward(in, spec_.data());
      for (std::size_t i = 0; i < size; ++i) spec_[i] *= half_phase_[i];
      fft_.backward(spec_.data(), res);
    };
    half_linear(u.values().data(), out.values().data());
    if (nonlinear) {
      const auto pot = hartree_potential(out, mult_);
      for (std::size_t i = 0; i < size; ++i) out[i] *= std::polar(1.0, dt * pot[i].real());
    }
    SpectralField res(u.grid());
    half_linear(out.values().data(), res.values().data());
    return res;
  }

 private:
  void refresh(double dt) {
    if (!half_phase_.empty() && dt == cached_dt_) return;
    const auto sym = mult_.frac_lap_s();
    const double scale = 1.0 / static_cast<double>(sym.size());
    half_phase_.resize(sym.size());
    for (std::size_t i = 0; i < sym.size(); ++i) half_phase_[i] = std::polar(scale, -0.5 * dt * sym[i]);
    cached_dt_ = dt;
  }

  const MultiplierSet& mult_;
  const FourierTransform& fft_;
  std::vector<Complex> half_phase_;
  std::vector<Complex> spec_;
  double cached_dt_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace

SpectralField strang_step(const SpectralField& u, const MultiplierSet& mult, double dt) {
  if (dt == 0.0) return u;
  SplitStepper stepper(mult);
  return stepper.step(u, dt, true);
}

SpectralField linear_step(const SpectralField& u, const MultiplierSet& mult, double dt) {
  if (dt == 0.0) return u;
  SplitStepper stepper(mult);
  return stepper.step(u, dt, false);
}

double adapt_dt(const SpectralField& u, const StepperConfig& cfg, const MultiplierSet& mult) {
  if (!cfg.adaptive) return cfg.dt;
  const double peak = u.max_modulus();
  const double proxy = peak * peak * mult.kernel_zero_mode();
  if (!(proxy > 0.0)) return cfg.dt;
  return std::max(cfg.dt_min, std::min(cfg.dt, cfg.adapt_phase / proxy));
}

double spectral_tail_fraction(const SpectralField& u) {
  const auto hat = to_fourier(u);
  const auto& grid = u.grid();
  const double cut = 2.0 / 3.0 * grid.xi_max();
  double tail = 0.0;
  double total = 0.0;
  for_each_mode(grid, [&](std::size_t i, const std::array<double, 3>& k) {
    const double w = std::norm(hat[i]);
    total += w;
    bool outside = false;
    for (int d = 0; d < grid.N; ++d) outside = outside || std::abs(k[static_cast<std::size_t>(d)]) > cut;
    if (outside) tail += w;
  });
  return total > 0.0 ? tail / total : 0.0;
}

double wraparound_time(const GridSpec& grid, const PhysParams& p) {
  const double speed = 2.0 * p.s * std::pow(grid.xi_max(), 2.0 * p.s - 1.0);
  return grid.L / (4.0 * speed);
}

RunRecord evolve(const SpectralField& u0, const PhysParams& p, const MultiplierSet& mult,
                 const StepperConfig& cfg, const GroundState& gs, const SampleObserver& observer) {
  cfg.validate();
  if (!(mass(u0) > 0.0)) throw ValidationError("evolve: initial data has zero mass");
  if (!(u0.grid() == mult.grid())) throw ValidationError("evolve: initial data and multipliers use different grids");

  const bool soliton_reference = gs.q.size() == u0.size() && gs.q.grid() == u0.grid() && gs.l2 > 0.0;
  const double qc = p.q_c();
  RunRecord rec;
  SplitStepper stepper(mult);

  auto record = [&](double t, double dt, const SpectralField& u) {
    const double M = mass(u);
    const double hs = sobolev_norm(u, p.s);
    const double H = hs * hs;
    const double V = hartree_energy(u, mult);
    const double E = 0.5 * H - 0.25 * V;
    const double weight = std::pow(M, p.mass_exponent());
    const auto member = classify_membership(InvariantPair{weight * E, weight * H}, gs.thresholds);
    rec.times.push_back(t);
    rec.dt_series.push_back(dt);
    rec.mass_series.push_back(M);
    rec.energy_series.push_back(E);
    rec.hs_series.push_back(H);
    rec.hsc_series.push_back(sobolev_norm(u, p.s_c()));
    rec.v_series.push_back(V);
    rec.lpc_series.push_back(lp_norm(u, p.p_c()));
    rec.me_ratio_series.push_back(member.me_ratio);
    rec.grad_ratio_series.push_back(member.grad_ratio);
    rec.membership_series.push_back(member.verdict);
    rec.tail_series.push_back(spectral_tail_fraction(u));
    double dev = std::numeric_limits<double>::quiet_NaN();
    if (soliton_reference) {
      const Complex phase = std::polar(1.0, -t);
      double acc = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i] * phase - gs.q[i]);
      dev = std::sqrt(acc * u.grid().cell_volume()) / gs.l2;
    }
    rec.soliton_deviation.push_back(dev);
    rec.strichartz_series.push_back(std::pow(rec.strichartz_accum, 1.0 / qc));
    if (observer) observer(t, u);
    return H;
  };

  SpectralField u = u0;
  double t = 0.0;
  const double hs0 = record(0.0, 0.0, u);
  bool triggered = false;
  long steps = 0;
  while (t < cfg.t_end * (1.0 - 1e-14)) {
    double dt = adapt_dt(u, cfg, mult);
    if (t + dt > cfg.t_end) dt = cfg.t_end - t;
    u = stepper.step(u, dt, !cfg.linear_only);
    t += dt;
    ++steps;
    rec.strichartz_accum += dt * std::pow(lp_norm(u, qc), qc);

    const bool at_end = t >= cfg.t_end * (1.0 - 1e-14);
    if (steps % cfg.record_every != 0 && !at_end) continue;
    const double H = record(t, dt, u);
    if (H > cfg.blowup_grad_factor * hs0) {
      triggered = true;
      break;
    }
    if (rec.tail_series.back() > cfg.tail_fraction_max) {
      rec.tail_refused = true;
      break;
    }
  }
  rec.steps = steps;
  rec.completed = !triggered && !rec.tail_refused;
  rec.strichartz_accum = std::pow(rec.strichartz_accum, 1.0 / qc);

  std::ostringstream caveat;
  if (triggered) {
    rec.verdict = Verdict::BlowUp;
    rec.t_star = rec.times.back();
  } else if (rec.tail_refused) {
    caveat << "spectral tail fraction " << rec.tail_series.back() << " exceeded " << cfg.tail_fraction_max
           << " at t=" << rec.times.back() << "; resolution lost";
    if (rec.grad_ratio_series.back() > 1.0) {
      rec.verdict = Verdict::BlowUp;
      rec.t_star = rec.times.back();
      caveat << ", blow-up suspected but not resolved";
    } else {
      rec.verdict = Verdict::Inconclusive;
    }
  } else {
    bool soliton = soliton_reference;
    for (double d : rec.soliton_deviation) soliton = soliton && d < 1e-3;
    bool below = true;
    for (double g : rec.grad_ratio_series) below = below && g < 1.0;
    if (soliton) {
      rec.verdict = Verdict::Soliton;
    } else if (below && rec.v_series.back() < 0.5 * rec.v_series.front()) {
      rec.verdict = Verdict::GlobalDispersing;
    } else {
      rec.verdict = Verdict::Inconclusive;
    }
  }
  if (cfg.t_end > wraparound_time(u0.grid(), p)) {
    if (!caveat.str().empty()) caveat << "; ";
    caveat << "horizon exceeds the wrap-around time " << wraparound_time(u0.grid(), p);
  }
  rec.caveat = caveat.str();
  return rec;
}

InvarianceAudit invariance_audit(const RunRecord& rec) {
  InvarianceAudit a;
  if (rec.membership_series.empty()) {
    a.message = "empty run";
    return a;
  }
  a.initial = rec.membership_series.front();
  if (rec.me_ratio_series.front() >= 1.0) {
    a.message = "initial data outside the mass-energy condition; nothing to audit";
    return a;
  }
  double max_grad = 0.0;
  for (std::size_t i = 0; i < rec.membership_series.size(); ++i) {
    const auto m = rec.membership_series[i];
    a.all_same = a.all_same && m == a.initial;
    const bool flip = (a.initial == Membership::K1 && m == Membership::K2) ||
                      (a.initial == Membership::K2 && m == Membership::K1);
    if (flip && !a.flipped) {
      a.flipped = true;
      a.flip_index = static_cast<long>(i);
    }
    max_grad = std::max(max_grad, rec.grad_ratio_series[i]);
  }
  std::ostringstream msg;
  a.ok = !a.flipped;
  if (a.flipped) msg << "membership flipped at sample " << a.flip_index << "; ";
  if (a.initial == Membership::K1) {
    a.delta0 = 1.0 - max_grad;
    a.ok = a.ok && a.delta0 > 0.0;
    msg << "K1 run, delta0 = " << a.delta0;
  } else {
    msg << to_string(a.initial) << " run";
  }
  a.message = msg.str();
  return a;
}

}  // namespace fhartree
