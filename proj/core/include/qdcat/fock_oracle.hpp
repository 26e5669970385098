#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qdcat/model.hpp"
#include "qdcat/qubit_embed.hpp"

namespace qdcat {

/// Default bound on the Poisson tail dropped by the cavity cutoff.
inline constexpr double kTruncationTail = 1e-10;

/// P(X >= n) for X ~ Poisson(mean).
double poisson_tail(double mean, int n);

/// Smallest cutoff n (occupations 0..n-1) with poisson_tail(mean, n) < tail.
int required_cutoff(double mean, double tail = kTruncationTail);

/// Truncated occupation-number basis of the cavity and two exciton modes.
/// Basis index of |k, n1, n2> is (k * ce + n1) * ce + n2.
class FockSpace {
 public:
  struct Occupation {
    int cavity;
    int exciton1;
    int exciton2;
    int total() const noexcept { return cavity + exciton1 + exciton2; }
  };

  FockSpace(int cutoff_cavity, int cutoff_exciton, bool with_blocks = true);

  /// Cavity cutoff from the Poisson-tail rule for the larger branch
  /// amplitude; exciton cutoffs equal the cavity cutoff. Throws
  /// TruncationError if the rule asks for more than `max_cutoff`.
  static FockSpace for_superposition(const CoherentSuperposition& sup, int max_cutoff,
                                     double tail = kTruncationTail);

  int cutoff_cavity() const noexcept { return cc_; }
  int cutoff_exciton() const noexcept { return ce_; }
  std::size_t dim() const noexcept;

  std::size_t index(int cavity, int exciton1, int exciton2) const;
  Occupation occupation(std::size_t index) const;

  bool has_blocks() const noexcept { return !blocks_.empty(); }
  /// Basis indices grouped by total excitation number (entry N holds the
  /// block with N excitations).
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

 private:
  int cc_;
  int ce_;
  std::vector<std::vector<std::size_t>> blocks_;
};

class FockState {
 public:
  FockState(std::shared_ptr<const FockSpace> space, Eigen::VectorXcd amplitudes);

  const FockSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const FockSpace>& space_ptr() const noexcept { return space_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  cplx amplitude(int cavity, int exciton1, int exciton2) const;

  double norm() const { return amps_.norm(); }
  double cavity_mean_photons() const;
  double total_excitation_mean() const;

 private:
  std::shared_ptr<const FockSpace> space_;
  Eigen::VectorXcd amps_;
};

enum class Propagation {
  Blocks,     ///< per excitation-number block: dense eigendecomposition or ODE
  FullDense,  ///< eigendecomposition of the whole truncated Hamiltonian
  FullOde,    ///< adaptive integration in the whole truncated space
};

struct EvolveOptions {
  Propagation method = Propagation::Blocks;
  std::size_t dense_block_limit = 400;  ///< larger blocks are integrated
  double ode_tolerance = 1e-12;         ///< absolute and relative, per step
  double norm_tolerance = 1e-10;
};

/// omega (a^dag a + sum b^dag b) + sum_m g_m (b_m^dag a + a^dag b_m) on a
/// FockSpace, with cached spectral data for propagation.
///
/// Spectral data are computed on first use and never modified afterwards,
/// so one instance can serve concurrent evolve() calls.
class Hamiltonian {
 public:
  Hamiltonian(const SystemParams& params, std::shared_ptr<const FockSpace> space,
              EvolveOptions options = {});
  ~Hamiltonian();
  Hamiltonian(const Hamiltonian&) = delete;
  Hamiltonian& operator=(const Hamiltonian&) = delete;

  const Eigen::SparseMatrix<double>& matrix() const noexcept { return h_; }
  const FockSpace& space() const noexcept { return *space_; }
  const EvolveOptions& options() const noexcept { return options_; }

  /// Dense copy of the block with `excitations` quanta, in the order of
  /// FockSpace::blocks().
  Eigen::MatrixXd block_matrix(std::size_t excitations) const;

  FockState evolve(const FockState& state, double t) const;

 private:
  struct Spectral;
  Eigen::VectorXcd evolve_blocks(const Eigen::VectorXcd& psi, double t) const;
  Eigen::VectorXcd evolve_full_dense(const Eigen::VectorXcd& psi, double t) const;
  const Spectral& block_spectral(std::size_t n) const;

  std::shared_ptr<const FockSpace> space_;
  EvolveOptions options_;
  Eigen::SparseMatrix<double> h_;
  mutable std::vector<std::once_flag> block_once_;
  mutable std::vector<std::unique_ptr<Spectral>> block_cache_;
  mutable std::once_flag full_once_;
  mutable std::unique_ptr<Spectral> full_cache_;
};

std::shared_ptr<const Hamiltonian> build_hamiltonian(const SystemParams& params,
                                                     std::shared_ptr<const FockSpace> space,
                                                     EvolveOptions options = {});

/// (C|alpha1> + D|alpha2>) |0>|0>, truncated and renormalised. Throws
/// TruncationError when either cutoff is below the Poisson-tail requirement.
FockState prepare_initial(const CoherentSuperposition& sup,
                          std::shared_ptr<const FockSpace> space,
                          double tail = kTruncationTail);

/// exp(-i H t) applied to `state`.
FockState evolve(const FockState& state, const Hamiltonian& h, double t);

/// Partial trace over the cavity. Row/column index is n1 * ce + n2.
Eigen::MatrixXcd exciton_reduced(const FockState& state);

/// Coherent state |beta> truncated to `levels` occupation numbers (not
/// renormalised).
Eigen::VectorXcd coherent_vector(cplx beta, int levels);

struct Projection {
  TwoQubitDensity rho;
  double leakage;  ///< 1 - (weight inside the qubit subspace) / tr(rho_ex)
  bool degenerate;
};

/// Projects an exciton density matrix onto the span of the qubit basis
/// realised as truncated Fock vectors, then renormalises.
Projection project_to_qubits(const Eigen::MatrixXcd& rho_ex, const QubitBasis& basis,
                             const FockSpace& space);

/// Observables extracted from one evolved state.
struct OracleSample {
  double concurrence;
  double nbar;
  double leakage;
  double norm;
  double total_excitation;
  bool degenerate;
};

/// Evolves `initial` to time t and compares against the lossless qubit basis.
OracleSample ideal_oracle_sample(const Hamiltonian& h, const FockState& initial,
                                 const CoherentSuperposition& sup,
                                 const SystemParams& params, double t);

/// Integrates du/dt = -i (g1 v1 + g2 v2), dv_m/dt = -i g_m u - (gamma/2) v_m
/// in the rotating frame from (1, 0, 0). One entry per grid point.
std::vector<ModeAmplitudes> dissipative_amplitude_ode(const SystemParams& params,
                                                      const TimeGrid& grid,
                                                      double tolerance = 1e-12);

/// Odd-cat concurrence with exciton decay assembled from ODE amplitudes
/// through the qubit embedding.
double dissipative_concurrence_oracle(double abs_alpha, const SystemParams& params, double t);
std::vector<double> dissipative_concurrence_oracle(double abs_alpha, const SystemParams& params,
                                                   const TimeGrid& grid);

}  // namespace qdcat
