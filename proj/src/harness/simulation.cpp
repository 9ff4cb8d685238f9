#include "oldroyd/harness/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "oldroyd/spectral/norms.hpp"
#include "oldroyd/sym_matrix2.hpp"

namespace oldroyd::harness {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

std::vector<double> record_times(double horizon, double ratio) {
  if (!(horizon > 0.0) || !(ratio > 1.0)) {
    throw std::invalid_argument("record_times: need horizon > 0 and ratio > 1");
  }
  std::vector<double> t{0.0};
  for (int j = 1;; ++j) {
    const double tj = std::pow(ratio, j) - 1.0;
    // drop a record that would sit within 1e-9 of the horizon
    if (tj >= horizon * (1.0 - 1e-9)) break;
    t.push_back(tj);
  }
  t.push_back(horizon);
  return t;
}

Snapshot initial_snapshot(const solver::OldroydState& initial) {
  Snapshot s;
  s.state = initial;
  s.companion.v = initial.u;
  s.companion.t = initial.t;
  return s;
}

namespace {

double grad_energy(const spectral::Grid& g, const spectral::VectorField2& u) {
  return spectral::gradient_l2_squared(g, u[0]) + spectral::gradient_l2_squared(g, u[1]);
}

void check_positivity(const spectral::Transform& tr, const solver::OldroydState& s) {
  const auto rho = tr.inverse(s.rho);
  const auto txx = tr.inverse(s.tau[0]);
  const auto txy = tr.inverse(s.tau[1]);
  const auto tyy = tr.inverse(s.tau[2]);
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const oldroyd::SymMatrix2 sig{txx[i] + rho[i], txy[i], tyy[i] + rho[i]};
    const auto e = sig.eigenvalues();
    if (i == 0 || e[0] < lo) lo = e[0];
    if (i == 0 || e[1] > hi) hi = e[1];
  }
  if (lo < -kPositivityFraction * std::abs(hi)) {
    throw solver::SolverAbort("conformation positivity lost: min eigenvalue " +
                                  std::to_string(lo) + ", max eigenvalue " + std::to_string(hi),
                              s.t);
  }
}

}  // namespace

RunOutcome run_simulation(solver::OldroydSolver& solver, Snapshot snap,
                          const RunSettings& settings, const RunObserver& observer) {
  const auto& grid = solver.grid();
  const auto& params = solver.params();
  const auto times = record_times(settings.horizon, settings.cadence_ratio);
  RunOutcome out;
  out.steps = snap.steps;

  auto emit = [&](std::size_t j) {
    const auto forcing = solver.companion_forcing(snap.state.tau);
    if (observer.on_record) {
      observer.on_record(analysis::record(solver.transform(), snap.state, snap.companion, forcing,
                                          params, snap.dissipation_cum));
    }
    ++out.records;
    snap.next_record = j + 1;
    const bool last = j + 1 == times.size();
    const bool due = settings.checkpoint_interval > 0 && j % settings.checkpoint_interval == 0;
    if ((due || last) && observer.on_checkpoint) observer.on_checkpoint(snap);
  };

  try {
    if (snap.next_record == 0) {
      if (snap.state.t != times[0]) throw std::logic_error("run must start at t = 0");
      emit(0);
    }
    double grad_before = grad_energy(grid, snap.state.u);
    for (std::size_t j = snap.next_record; j < times.size(); ++j) {
      while (snap.state.t < times[j]) {
        const double remaining = times[j] - snap.state.t;
        double dt = solver.compute_dt(snap.state, settings.cfl, settings.dt_max);
        const bool land = dt >= remaining;
        if (land) dt = remaining;
        const double t0 = snap.state.t;
        const auto forcing = solver.step(snap.state, dt);
        solver::heat_companion_step(snap.companion, forcing, dt, params, grid, t0);
        if (land) snap.state.t = snap.companion.t = times[j];
        const double grad_after = grad_energy(grid, snap.state.u);
        snap.dissipation_cum += params.nu1 * dt * 0.5 * (grad_before + grad_after);
        grad_before = grad_after;
        ++snap.steps;
        out.steps = snap.steps;
        check_positivity(solver.transform(), snap.state);
      }
      emit(j);
    }
    out.completed = true;
  } catch (const solver::SolverAbort& e) {
    out.abort_reason = std::string(e.what()) + " at t = " + std::to_string(e.time());
  }
  out.t_end = snap.state.t;
  return out;
}

namespace {

constexpr char kMagic[8] = {'O', 'B', 'C', 'K', 'P', 'T', '0', '1'};

std::vector<const spectral::Spectrum*> arrays_of(const Snapshot& s) {
  return {&s.state.u[0], &s.state.u[1], &s.state.tau[0], &s.state.tau[1],
          &s.state.tau[2], &s.state.rho, &s.companion.v[0], &s.companion.v[1]};
}

constexpr std::array<const char*, 8> kArrayNames{"u_x", "u_y", "tau_xx", "tau_xy",
                                                 "tau_yy", "rho", "v_x", "v_y"};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const spectral::Grid& grid,
                      const solver::OldroydParams& params, const Snapshot& snap,
                      const std::string& config_hash) {
  nlohmann::json header{
      {"format", "oldroyd-checkpoint"},
      {"version", 1},
      {"grid", {{"n", grid.n()}, {"L", grid.length()}}},
      {"params", {{"nu1", params.nu1}, {"nu2", params.nu2}, {"mu", params.mu}, {"k", params.k}}},
      {"t", snap.state.t},
      {"companion_t", snap.companion.t},
      {"dissipation_cum", snap.dissipation_cum},
      {"next_record", snap.next_record},
      {"steps", snap.steps},
      {"config_hash", config_hash},
      {"layout", "half-plane rows n x cols n/2+1, complex<double> little-endian"},
      {"arrays", kArrayNames},
      {"array_length", grid.spectral_size()}};
  const std::string text = header.dump();
  const std::uint64_t len = text.size();

  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&len), sizeof len);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto* a : arrays_of(snap)) {
      out.write(reinterpret_cast<const char*>(a->data()),
                static_cast<std::streamsize>(a->size() * sizeof(spectral::Complex)));
    }
    if (!out) throw std::runtime_error("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

LoadedCheckpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error(path.string() + " is not a checkpoint (bad magic)");
  }
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!in || len > (1u << 20)) throw std::runtime_error("checkpoint header length invalid");
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("checkpoint header unreadable: ") + e.what());
  }

  LoadedCheckpoint c;
  try {
    c.n = h.at("grid").at("n").get<int>();
    c.length = h.at("grid").at("L").get<double>();
    c.config_hash = h.at("config_hash").get<std::string>();
    auto& s = c.snapshot;
    s.state.t = h.at("t").get<double>();
    s.companion.t = h.at("companion_t").get<double>();
    s.dissipation_cum = h.at("dissipation_cum").get<double>();
    s.next_record = h.at("next_record").get<std::size_t>();
    s.steps = h.at("steps").get<std::size_t>();
    const auto size = h.at("array_length").get<std::size_t>();
    if (size != static_cast<std::size_t>(c.n) * (c.n / 2 + 1)) {
      throw std::runtime_error("checkpoint array length does not match grid");
    }
    for (auto* a : {&s.state.u[0], &s.state.u[1], &s.state.tau[0], &s.state.tau[1],
                    &s.state.tau[2], &s.state.rho, &s.companion.v[0], &s.companion.v[1]}) {
      a->resize(size);
      in.read(reinterpret_cast<char*>(a->data()),
              static_cast<std::streamsize>(size * sizeof(spectral::Complex)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("checkpoint header incomplete: ") + e.what());
  }
  if (!in) throw std::runtime_error("checkpoint truncated: " + path.string());
  return c;
}

}  // namespace oldroyd::harness
