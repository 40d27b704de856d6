#include "oppq/quantizer.hpp"

#include <algorithm>

namespace oppq {

Method parse_method(const std::string& id) {
  if (id == "oppq") return Method::Oppq;
  if (id == "global_local" || id == "global-local") return Method::GlobalLocal;
  if (id == "hill") return Method::Hill;
  throw ConfigError("unknown method '" + id +
                    "' (expected oppq, global_local, or hill)");
}

std::string method_id(Method m) {
  switch (m) {
    case Method::Oppq:
      return "oppq";
    case Method::GlobalLocal:
      return "global_local";
    case Method::Hill:
      return "hill";
  }
  return {};
}

OmegaForms omega_forms(const OrthoBasis& basis, const MomentTable& mtable) {
  const int n = mtable.order();
  if (basis.max_degree < n)
    throw DimensionError("omega_forms: basis degree below moment table order");
  const int m_s = mtable.m_s;
  OmegaForms forms;
  forms.energy = mtable.energy;
  forms.w.assign(n + 1, std::vector<BigReal>(m_s + 1, BigReal(0)));
  for (int j = 0; j <= n; ++j) {
    // Parity block structure: Xi_i^(j) = 0 for i+j odd, so only moment rows
    // of j's parity contribute.
    for (int i = j % 2; i <= j; i += 2) {
      const BigReal& xi = basis.xi[j][i];
      if (xi == 0) continue;
      for (int l = (j % 2 == 0) ? 0 : 1; l <= m_s; l += 2)
        forms.w[j][l] += xi * mtable.m[i][l];
    }
  }
  return forms;
}

namespace {

// Frobenius coefficient at the sector's truncation order, with running
// renormalization of the working window to keep the scan overflow-free.
std::pair<BigReal, BigReal> hill_tail(const ProblemSpec& problem,
                                      const WeightSpec& weight, const BigReal& energy,
                                      int n_h, Parity sector,
                                      RationalTaylorVariant variant) {
  std::vector<BigReal> c(n_h + 1, BigReal(0));
  c[sector == Parity::Even ? 0 : 1] = 1;
  BigReal log_scale(0);
  const BigReal big = pow(BigReal(10), 60);
  auto at = [&](int k) -> BigReal { return k < 0 ? BigReal(0) : c[k]; };
  for (int m = 2; m <= n_h; ++m) {
    int k = m - 2;
    c[m] = taylor_step(problem, energy, k, at(k), at(k - 2), at(k - 4), variant);
    BigReal window_max = abs(c[m]);
    for (int back = 2; back <= 4; back += 2)
      if (m - back >= 0 && abs(c[m - back]) > window_max)
        window_max = abs(c[m - back]);
    if (window_max > big || (window_max > 0 && window_max < 1 / big)) {
      for (int back = 0; back <= 4; back += 2)
        if (m - back >= 0) c[m - back] /= window_max;
      log_scale += log(window_max);
    }
  }
  // Parity sector never populates the opposite-parity entries; require the
  // truncation index to match the sector.
  return {c[n_h], log_scale};
}

}  // namespace

QuantizationMatrix build_matrix(Method method, const ProblemSpec& problem,
                                const WeightSpec& weight, const OrthoBasis* basis,
                                const BigReal& energy, int n,
                                const PrecisionContext& ctx,
                                std::optional<Parity> sector) {
  const int m_s = problem.missing_order();
  if (n <= m_s + 2)
    throw DimensionError("build_matrix: truncation order must exceed m_s + 2");
  ctx.activate();

  QuantizationMatrix qm;
  qm.method = method;
  qm.energy = energy;

  if (method == Method::Hill) {
    if (!problem.parity_symmetric())
      throw ConfigError("build_matrix: Hill requires a parity-symmetric problem");
    if (!sector)
      throw ConfigError("build_matrix: Hill requires a parity sector");
    if (!is_matched_weight(problem, weight))
      throw ConfigError("build_matrix: Hill requires the matched asymptotic weight");
    // Truncation index of the sector's parity: even sector closes c_N = 0
    // with N even, odd sector with N odd.
    int n_h = n;
    if ((n_h % 2 == 0) != (*sector == Parity::Even)) --n_h;
    auto [c_n, log_scale] = hill_tail(problem, weight, energy, n_h, *sector,
                                      RationalTaylorVariant::Corrected);
    qm.entries = Matrix(1, 1);
    qm.entries(0, 0) = c_n;
    qm.log_scale = log_scale;
    return qm;
  }

  if (basis == nullptr)
    throw DimensionError("build_matrix: basis required for this method");
  if (basis->max_degree < n)
    throw DimensionError("build_matrix: basis degree below truncation order");

  MomentTable mtable = moment_table(problem, energy, n, ctx);
  OmegaForms forms = omega_forms(*basis, mtable);

  if (method == Method::Oppq) {
    qm.entries = Matrix(m_s + 1, m_s + 1);
    for (int r = 0; r <= m_s; ++r)
      for (int l = 0; l <= m_s; ++l) qm.entries(r, l) = forms.w[n - m_s + r][l];
    return qm;
  }

  // Global-local: rows n_r = 0..m_s+2 over unknowns (mu_0..mu_{m_s}, c_0, c_1).
  TaylorTable ttable = taylor_table(problem, weight, energy, m_s + 2, ctx);
  qm.entries = Matrix(m_s + 3, m_s + 3);
  for (int r = 0; r <= m_s + 2; ++r) {
    for (int l = 0; l <= m_s; ++l) {
      BigReal acc(0);
      for (int j = r; j <= n; ++j)
        if ((j - r) % 2 == 0) acc += basis->xi[j][r] * forms.w[j][l];
      qm.entries(r, l) = acc;
    }
    qm.entries(r, m_s + 1) = -ttable.t[r][0];
    qm.entries(r, m_s + 2) = -ttable.t[r][1];
  }
  return qm;
}

SignLogDet determinant_at(Method method, const ProblemSpec& problem,
                          const WeightSpec& weight, const OrthoBasis* basis,
                          const BigReal& energy, int n, const PrecisionContext& ctx,
                          std::optional<Parity> sector) {
  QuantizationMatrix qm =
      build_matrix(method, problem, weight, basis, energy, n, ctx, sector);
  SignLogDet det = det_sign_log(qm.entries, ctx);
  if (det.sign != 0) det.log_magnitude += qm.log_scale;
  return det;
}

std::vector<EnergyRoot> scan_spectrum(Method method, const ProblemSpec& problem,
                                      const WeightSpec& weight, const OrthoBasis* basis,
                                      int n, const BigReal& lo, const BigReal& hi,
                                      const BigReal& step, const BigReal& tol,
                                      const PrecisionContext& ctx) {
  if (!(tol > 0)) throw Error("scan_spectrum: tol must be positive");
  std::vector<EnergyRoot> roots;

  auto scan_one = [&](std::optional<Parity> sector) {
    SignFunction f = [&](const BigReal& e) {
      return determinant_at(method, problem, weight, basis, e, n, ctx, sector);
    };
    for (const Bracket& br : bracket_roots(f, lo, hi, step)) {
      EnergyRoot root;
      root.energy = bisect(f, br, tol);
      root.method = method;
      root.truncation = n;
      root.bracket_width = br.degenerate() ? BigReal(0) : tol;
      root.sector = sector;
      roots.push_back(std::move(root));
    }
  };

  if (method == Method::Hill) {
    scan_one(Parity::Even);
    scan_one(Parity::Odd);
  } else {
    scan_one(std::nullopt);
  }

  std::sort(roots.begin(), roots.end(),
            [](const EnergyRoot& a, const EnergyRoot& b) { return a.energy < b.energy; });
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i].level_index = static_cast<int>(i);
  return roots;
}

ConvergenceTrack track_convergence(const std::vector<std::vector<EnergyRoot>>& runs,
                                   const BigReal& match_tol, const BigReal& conv_tol) {
  if (runs.size() < 2)
    throw Error("track_convergence: need at least two runs");

  ConvergenceTrack result;
  for (const EnergyRoot& r : runs[0])
    result.tracks.push_back({{r}, {0}, TrackStatus::Drifting});

  for (std::size_t run = 1; run < runs.size(); ++run) {
    const auto& roots = runs[run];
    // Greedy smallest-distance assignment between live track tips and the
    // new run's roots.
    struct Cand {
      BigReal dist;
      std::size_t track, root;
    };
    std::vector<Cand> cands;
    for (std::size_t t = 0; t < result.tracks.size(); ++t) {
      if (result.tracks[t].run_indices.back() != static_cast<int>(run) - 1) continue;
      for (std::size_t r = 0; r < roots.size(); ++r) {
        BigReal d = abs(result.tracks[t].entries.back().energy - roots[r].energy);
        if (d <= match_tol) cands.push_back({d, t, r});
      }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
    std::vector<bool> track_used(result.tracks.size(), false);
    std::vector<bool> root_used(roots.size(), false);
    for (const Cand& c : cands) {
      if (track_used[c.track] || root_used[c.root]) continue;
      track_used[c.track] = true;
      root_used[c.root] = true;
      result.tracks[c.track].entries.push_back(roots[c.root]);
      result.tracks[c.track].run_indices.push_back(static_cast<int>(run));
    }
    for (std::size_t r = 0; r < roots.size(); ++r)
      if (!root_used[r])
        result.tracks.push_back({{roots[r]}, {static_cast<int>(run)},
                                 TrackStatus::Drifting});
  }

  const int last_run = static_cast<int>(runs.size()) - 1;
  for (auto& track : result.tracks) {
    if (track.run_indices.back() != last_run) {
      track.status = TrackStatus::Lost;
    } else if (track.entries.size() >= 2) {
      const auto& e = track.entries;
      track.status = abs(e[e.size() - 1].energy - e[e.size() - 2].energy) < conv_tol
                         ? TrackStatus::Converged
                         : TrackStatus::Drifting;
    }
  }
  std::sort(result.tracks.begin(), result.tracks.end(),
            [](const ConvergenceTrack::Track& a, const ConvergenceTrack::Track& b) {
              return a.entries.back().energy < b.entries.back().energy;
            });
  return result;
}

const OrthoBasis& Solver::basis(int n) {
  auto it = basis_cache_.find(n);
  if (it != basis_cache_.end() && it->second.built_digits == ctx_.decimal_digits())
    return it->second;
  WeightMoments wm = weight_moments(weight_, 2 * n, ctx_);
  return basis_cache_[n] = build_basis(wm, n, ctx_);
}

SignLogDet Solver::determinant(Method method, const BigReal& energy, int n,
                               std::optional<Parity> sector) {
  const OrthoBasis* b = method == Method::Hill ? nullptr : &basis(n);
  return determinant_at(method, problem_, weight_, b, energy, n, ctx_, sector);
}

std::vector<EnergyRoot> Solver::scan(Method method, int n, const BigReal& lo,
                                     const BigReal& hi, const BigReal& step,
                                     const BigReal& tol) {
  const OrthoBasis* b = method == Method::Hill ? nullptr : &basis(n);
  return scan_spectrum(method, problem_, weight_, b, n, lo, hi, step, tol, ctx_);
}

}  // namespace oppq
