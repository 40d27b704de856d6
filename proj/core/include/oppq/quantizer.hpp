#ifndef OPPQ_QUANTIZER_HPP
#define OPPQ_QUANTIZER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oppq/linalg.hpp"
#include "oppq/orthopoly.hpp"
#include "oppq/problems.hpp"
#include "oppq/rootfind.hpp"

namespace oppq {

enum class Method { Oppq, GlobalLocal, Hill };
enum class Parity { Even, Odd };

Method parse_method(const std::string& id);
std::string method_id(Method m);

// W[j][l](E) = sum_i Xi_i^(j) M_{i,l}(E), so that Omega_j = sum_l W[j][l] mu_l.
struct OmegaForms {
  BigReal energy;
  std::vector<std::vector<BigReal>> w;  // [j][l]
};

OmegaForms omega_forms(const OrthoBasis& basis, const MomentTable& mtable);

// The energy-dependent square system whose determinant root gives E:
//   Oppq        (m_s+1)^2 : tail rows Omega_n = 0, N-m_s <= n <= N
//   GlobalLocal (m_s+3)^2 : rows n = 0..m_s+2 of
//                           sum_{j>=n} Xi_n^(j) Omega_j - T_{n,0}c_0 - T_{n,1}c_1
//   Hill        1x1       : c_N(E) for the requested parity sector, with
//                           running renormalization tracked in log_scale
struct QuantizationMatrix {
  Method method = Method::Oppq;
  BigReal energy;
  Matrix entries;
  BigReal log_scale = BigReal(0);  // Hill renormalization offset
};

// basis may be null for Hill (which needs no polynomial data).
QuantizationMatrix build_matrix(Method method, const ProblemSpec& problem,
                                const WeightSpec& weight, const OrthoBasis* basis,
                                const BigReal& energy, int n,
                                const PrecisionContext& ctx,
                                std::optional<Parity> sector = {});

SignLogDet determinant_at(Method method, const ProblemSpec& problem,
                          const WeightSpec& weight, const OrthoBasis* basis,
                          const BigReal& energy, int n, const PrecisionContext& ctx,
                          std::optional<Parity> sector = {});

struct EnergyRoot {
  BigReal energy;
  Method method = Method::Oppq;
  int truncation = 0;
  BigReal bracket_width;
  int level_index = 0;
  std::optional<Parity> sector;
};

// Scan/bisect over the window; roots come back sorted and level-indexed.
// Hill runs both parity sectors and merges. An empty result is valid.
std::vector<EnergyRoot> scan_spectrum(Method method, const ProblemSpec& problem,
                                      const WeightSpec& weight, const OrthoBasis* basis,
                                      int n, const BigReal& lo, const BigReal& hi,
                                      const BigReal& step, const BigReal& tol,
                                      const PrecisionContext& ctx);

enum class TrackStatus { Converged, Drifting, Lost };

// One root followed across increasing truncation orders.
struct ConvergenceTrack {
  struct Track {
    std::vector<EnergyRoot> entries;
    std::vector<int> run_indices;  // which runs the entries come from
    TrackStatus status = TrackStatus::Drifting;
  };
  std::vector<Track> tracks;
};

// Nearest-neighbor matching of roots across consecutive runs (ascending N).
// Requires at least two runs.
ConvergenceTrack track_convergence(const std::vector<std::vector<EnergyRoot>>& runs,
                                   const BigReal& match_tol, const BigReal& conv_tol);

// Convenience wrapper caching the orthonormal basis per truncation order.
class Solver {
 public:
  Solver(ProblemSpec problem, WeightSpec weight, PrecisionContext ctx)
      : problem_(std::move(problem)), weight_(std::move(weight)), ctx_(ctx) {}

  const ProblemSpec& problem() const { return problem_; }
  const WeightSpec& weight() const { return weight_; }
  const PrecisionContext& context() const { return ctx_; }

  const OrthoBasis& basis(int n);

  SignLogDet determinant(Method method, const BigReal& energy, int n,
                         std::optional<Parity> sector = {});
  std::vector<EnergyRoot> scan(Method method, int n, const BigReal& lo,
                               const BigReal& hi, const BigReal& step,
                               const BigReal& tol);

 private:
  ProblemSpec problem_;
  WeightSpec weight_;
  PrecisionContext ctx_;
  std::map<int, OrthoBasis> basis_cache_;
};

}  // namespace oppq

#endif
