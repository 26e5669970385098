#include "qdcat/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "qdcat/closed_form.hpp"

namespace qdcat {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr cplx kI{0.0, 1.0};

using OdeState = std::vector<cplx>;

double log_poisson_pmf(double mean, int k) {
  if (mean == 0.0) return k == 0 ? 0.0 : -INFINITY;
  return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

// psi(t) = exp(-i H t) psi(0) for a real symmetric sparse H, by adaptive
// Dormand-Prince integration.
Eigen::VectorXcd integrate_schrodinger(const Eigen::SparseMatrix<double>& h,
                                       const Eigen::VectorXcd& psi0, double t, double tol) {
  OdeState x(psi0.data(), psi0.data() + psi0.size());
  if (t == 0.0) return psi0;
  const auto n = static_cast<Eigen::Index>(x.size());
  auto rhs = [&h, n](const OdeState& in, OdeState& out, double /*t*/) {
    Eigen::Map<const Eigen::VectorXcd> vin(in.data(), n);
    Eigen::Map<Eigen::VectorXcd> vout(out.data(), n);
    vout.noalias() = -kI * (h * vin);
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<OdeState>>(tol, tol);
  odeint::integrate_adaptive(stepper, rhs, x, 0.0, t, std::min(t, 1e-3));
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
}

Eigen::SparseMatrix<double> sub_matrix(const Eigen::SparseMatrix<double>& h,
                                       const std::vector<std::size_t>& idx) {
  std::unordered_map<std::size_t, Eigen::Index> local;
  local.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) local.emplace(idx[i], static_cast<Eigen::Index>(i));
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h, static_cast<Eigen::Index>(idx[j])); it;
         ++it) {
      auto found = local.find(static_cast<std::size_t>(it.row()));
      if (found != local.end()) {
        trips.emplace_back(found->second, static_cast<Eigen::Index>(j), it.value());
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::SparseMatrix<double> out(d, d);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace

double poisson_tail(double mean, int n) {
  if (!(mean >= 0.0)) throw InvalidArgument("poisson_tail: mean must be nonnegative");
  if (n <= 0) return 1.0;
  double sum = 0.0;
  for (int k = n;; ++k) {
    const double term = std::exp(log_poisson_pmf(mean, k));
    sum += term;
    if (k > mean && (term < 1e-18 * sum || term == 0.0)) break;
  }
  return sum;
}

int required_cutoff(double mean, double tail) {
  if (!(tail > 0.0)) throw InvalidArgument("required_cutoff: tail bound must be positive");
  int n = 1;
  while (poisson_tail(mean, n) >= tail) ++n;
  return n;
}

FockSpace::FockSpace(int cutoff_cavity, int cutoff_exciton, bool with_blocks)
    : cc_(cutoff_cavity), ce_(cutoff_exciton) {
  if (cc_ < 1 || ce_ < 1) throw InvalidArgument("Fock cutoffs must be at least 1");
  if (with_blocks) {
    blocks_.resize(static_cast<std::size_t>(cc_ - 1 + 2 * (ce_ - 1) + 1));
    for (std::size_t i = 0; i < dim(); ++i) {
      blocks_[static_cast<std::size_t>(occupation(i).total())].push_back(i);
    }
  }
}

FockSpace FockSpace::for_superposition(const CoherentSuperposition& sup, int max_cutoff,
                                       double tail) {
  const double mean = std::max(std::norm(sup.alpha1()), std::norm(sup.alpha2()));
  const int need = required_cutoff(mean, tail);
  if (need > max_cutoff) {
    throw TruncationError("cutoff budget exceeded: Poisson tail rule needs cutoff " +
                              std::to_string(need) + " but budget is " +
                              std::to_string(max_cutoff),
                          need);
  }
  return FockSpace(need, need);
}

std::size_t FockSpace::dim() const noexcept {
  return static_cast<std::size_t>(cc_) * static_cast<std::size_t>(ce_) *
         static_cast<std::size_t>(ce_);
}

std::size_t FockSpace::index(int cavity, int exciton1, int exciton2) const {
  if (cavity < 0 || cavity >= cc_ || exciton1 < 0 || exciton1 >= ce_ || exciton2 < 0 ||
      exciton2 >= ce_) {
    throw InvalidArgument("occupation outside the truncated space");
  }
  return (static_cast<std::size_t>(cavity) * ce_ + exciton1) * ce_ + exciton2;
}

FockSpace::Occupation FockSpace::occupation(std::size_t index) const {
  const auto ce = static_cast<std::size_t>(ce_);
  return {static_cast<int>(index / (ce * ce)), static_cast<int>((index / ce) % ce),
          static_cast<int>(index % ce)};
}

FockState::FockState(std::shared_ptr<const FockSpace> space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (!space_) throw InvalidArgument("FockState needs a space");
  if (static_cast<std::size_t>(amps_.size()) != space_->dim()) {
    throw InvalidArgument("amplitude vector length does not match the Fock space dimension");
  }
}

cplx FockState::amplitude(int cavity, int exciton1, int exciton2) const {
  return amps_(static_cast<Eigen::Index>(space_->index(cavity, exciton1, exciton2)));
}

double FockState::cavity_mean_photons() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    s += space_->occupation(static_cast<std::size_t>(i)).cavity * std::norm(amps_(i));
  }
  return s;
}

double FockState::total_excitation_mean() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    s += space_->occupation(static_cast<std::size_t>(i)).total() * std::norm(amps_(i));
  }
  return s;
}

struct Hamiltonian::Spectral {
  bool dense = true;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  Eigen::SparseMatrix<double> sparse;
};

Hamiltonian::Hamiltonian(const SystemParams& params, std::shared_ptr<const FockSpace> space,
                         EvolveOptions options)
    : space_(std::move(space)), options_(options) {
  if (!space_) throw InvalidArgument("Hamiltonian needs a space");
  const FockSpace& s = *space_;
  const double g[2] = {params.g1(), params.g2()};
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto occ = s.occupation(i);
    const auto row = static_cast<Eigen::Index>(i);
    if (params.omega() != 0.0) trips.emplace_back(row, row, params.omega() * occ.total());
    // g_m sqrt(k) sqrt(n_m + 1) couples |k, n_m> to |k - 1, n_m + 1>.
    const int n[2] = {occ.exciton1, occ.exciton2};
    for (int m = 0; m < 2; ++m) {
      if (occ.cavity == 0 || n[m] + 1 >= s.cutoff_exciton()) continue;
      const std::size_t j = m == 0 ? s.index(occ.cavity - 1, n[0] + 1, n[1])
                                   : s.index(occ.cavity - 1, n[0], n[1] + 1);
      const double amp = g[m] * std::sqrt(static_cast<double>(occ.cavity)) *
                         std::sqrt(static_cast<double>(n[m] + 1));
      trips.emplace_back(row, static_cast<Eigen::Index>(j), amp);
      trips.emplace_back(static_cast<Eigen::Index>(j), row, amp);
    }
  }
  const auto d = static_cast<Eigen::Index>(s.dim());
  h_.resize(d, d);
  h_.setFromTriplets(trips.begin(), trips.end());
  h_.makeCompressed();

  block_once_ = std::vector<std::once_flag>(s.blocks().size());
  block_cache_.resize(s.blocks().size());
}

Hamiltonian::~Hamiltonian() = default;

Eigen::MatrixXd Hamiltonian::block_matrix(std::size_t excitations) const {
  if (!space_->has_blocks() || excitations >= space_->blocks().size()) {
    throw InvalidArgument("no block with that excitation number");
  }
  return Eigen::MatrixXd(sub_matrix(h_, space_->blocks()[excitations]));
}

const Hamiltonian::Spectral& Hamiltonian::block_spectral(std::size_t n) const {
  std::call_once(block_once_[n], [this, n] {
    const auto& idx = space_->blocks()[n];
    auto sp = std::make_unique<Spectral>();
    Eigen::SparseMatrix<double> sub = sub_matrix(h_, idx);
    if (idx.size() <= options_.dense_block_limit) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(sub)};
      if (es.info() != Eigen::Success) {
        throw NumericalIntegrityError("block eigendecomposition failed");
      }
      sp->energies = es.eigenvalues();
      sp->vectors = es.eigenvectors();
    } else {
      sp->dense = false;
      sp->sparse = std::move(sub);
    }
    block_cache_[n] = std::move(sp);
  });
  return *block_cache_[n];
}

Eigen::VectorXcd Hamiltonian::evolve_blocks(const Eigen::VectorXcd& psi, double t) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  const auto& blocks = space_->blocks();
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const auto& idx = blocks[n];
    Eigen::VectorXcd local(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      local(static_cast<Eigen::Index>(i)) = psi(static_cast<Eigen::Index>(idx[i]));
    }
    if (local.squaredNorm() == 0.0) continue;
    const Spectral& sp = block_spectral(n);
    Eigen::VectorXcd moved;
    if (sp.dense) {
      Eigen::VectorXcd coeff = sp.vectors.transpose().cast<cplx>() * local;
      for (Eigen::Index k = 0; k < coeff.size(); ++k) {
        coeff(k) *= std::exp(-kI * sp.energies(k) * t);
      }
      moved = sp.vectors.cast<cplx>() * coeff;
    } else {
      moved = integrate_schrodinger(sp.sparse, local, t, options_.ode_tolerance);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out(static_cast<Eigen::Index>(idx[i])) = moved(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

Eigen::VectorXcd Hamiltonian::evolve_full_dense(const Eigen::VectorXcd& psi, double t) const {
  std::call_once(full_once_, [this] {
    auto sp = std::make_unique<Spectral>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(h_)};
    if (es.info() != Eigen::Success) {
      throw NumericalIntegrityError("full-space eigendecomposition failed");
    }
    sp->energies = es.eigenvalues();
    sp->vectors = es.eigenvectors();
    full_cache_ = std::move(sp);
  });
  Eigen::VectorXcd coeff = full_cache_->vectors.transpose().cast<cplx>() * psi;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) *= std::exp(-kI * full_cache_->energies(k) * t);
  }
  return full_cache_->vectors.cast<cplx>() * coeff;
}

FockState Hamiltonian::evolve(const FockState& state, double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolve: t must be nonnegative");
  if (&state.space() != space_.get() &&
      (state.space().cutoff_cavity() != space_->cutoff_cavity() ||
       state.space().cutoff_exciton() != space_->cutoff_exciton())) {
    throw InvalidArgument("state and Hamiltonian live in different Fock spaces");
  }
  const Eigen::VectorXcd& psi = state.amplitudes();
  Eigen::VectorXcd out;
  switch (options_.method) {
    case Propagation::Blocks:
      if (!space_->has_blocks()) {
        throw InvalidArgument("block propagation requested on a space without blocks");
      }
      out = evolve_blocks(psi, t);
      break;
    case Propagation::FullDense:
      out = evolve_full_dense(psi, t);
      break;
    case Propagation::FullOde:
      out = integrate_schrodinger(h_, psi, t, options_.ode_tolerance);
      break;
  }
  const double drift = std::abs(out.norm() - psi.norm());
  if (!(drift <= options_.norm_tolerance)) {
    throw IntegratorError("propagation changed the state norm by " + std::to_string(drift),
                          drift);
  }
  return FockState(state.space_ptr(), std::move(out));
}

std::shared_ptr<const Hamiltonian> build_hamiltonian(const SystemParams& params,
                                                     std::shared_ptr<const FockSpace> space,
                                                     EvolveOptions options) {
  return std::make_shared<const Hamiltonian>(params, std::move(space), options);
}

Eigen::VectorXcd coherent_vector(cplx beta, int levels) {
  Eigen::VectorXcd v(levels);
  cplx term = std::exp(-0.5 * std::norm(beta));
  for (int n = 0; n < levels; ++n) {
    if (n > 0) term *= beta / std::sqrt(static_cast<double>(n));
    v(n) = term;
  }
  return v;
}

FockState prepare_initial(const CoherentSuperposition& sup,
                          std::shared_ptr<const FockSpace> space, double tail) {
  if (!space) throw InvalidArgument("prepare_initial needs a space");
  const double mean = std::max(std::norm(sup.alpha1()), std::norm(sup.alpha2()));
  const int need = required_cutoff(mean, tail);
  if (space->cutoff_cavity() < need || space->cutoff_exciton() < need) {
    throw TruncationError("Fock cutoff too small for |alpha|^2 = " + std::to_string(mean) +
                              ": need cutoff " + std::to_string(need),
                          need);
  }
  const int cc = space->cutoff_cavity();
  Eigen::VectorXcd cavity =
      sup.c() * coherent_vector(sup.alpha1(), cc) + sup.d() * coherent_vector(sup.alpha2(), cc);
  const double n = cavity.norm();
  if (!(n > 0.0)) throw InvalidArgument("truncated cavity state vanishes");
  cavity /= n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space->dim()));
  for (int k = 0; k < cc; ++k) psi(static_cast<Eigen::Index>(space->index(k, 0, 0))) = cavity(k);
  return FockState(std::move(space), std::move(psi));
}

FockState evolve(const FockState& state, const Hamiltonian& h, double t) {
  return h.evolve(state, t);
}

Eigen::MatrixXcd exciton_reduced(const FockState& state) {
  const FockSpace& s = state.space();
  const Eigen::Index ex = static_cast<Eigen::Index>(s.cutoff_exciton()) * s.cutoff_exciton();
  using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> psi(state.amplitudes().data(), s.cutoff_cavity(), ex);
  // rho[n, m] = sum_k psi[k, n] conj(psi[k, m])
  Eigen::MatrixXcd rho = psi.transpose() * psi.conjugate();
  return rho;
}

Projection project_to_qubits(const Eigen::MatrixXcd& rho_ex, const QubitBasis& basis,
                             const FockSpace& space) {
  if (basis.degenerate()) return {TwoQubitDensity::basis_state(0), 0.0, true};
  const int levels = space.cutoff_exciton();
  const Eigen::Index ex = static_cast<Eigen::Index>(levels) * levels;
  if (rho_ex.rows() != ex || rho_ex.cols() != ex) {
    throw InvalidArgument("exciton density matrix does not match the Fock space");
  }

  std::array<Eigen::MatrixXcd, 2> mode_basis;
  for (std::size_t m = 0; m < 2; ++m) {
    const auto& q = basis.modes[m];
    Eigen::VectorXcd e0 = coherent_vector(q.beta0, levels);
    e0.normalize();
    Eigen::VectorXcd e1 = coherent_vector(q.beta1, levels);
    e1 -= e0.dot(e1) * e0;
    e1.normalize();
    mode_basis[m].resize(levels, 2);
    mode_basis[m].col(0) = e0;
    mode_basis[m].col(1) = e1;
  }
  Eigen::MatrixXcd e(ex, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int n1 = 0; n1 < levels; ++n1) {
        e.col(2 * i + j).segment(static_cast<Eigen::Index>(n1) * levels, levels) =
            mode_basis[0](n1, i) * mode_basis[1].col(j);
      }
    }
  }
  Eigen::Matrix4cd q = e.adjoint() * rho_ex * e;
  const double weight = q.trace().real();
  const double total = rho_ex.trace().real();
  if (!(weight > 0.0)) throw NumericalIntegrityError("state has no weight in the qubit subspace");
  q /= weight;
  q = (0.5 * (q + q.adjoint())).eval();
  return {TwoQubitDensity(q), 1.0 - weight / total, false};
}

OracleSample ideal_oracle_sample(const Hamiltonian& h, const FockState& initial,
                                 const CoherentSuperposition& sup,
                                 const SystemParams& params, double t) {
  const FockState psi = h.evolve(initial, t);
  const Eigen::MatrixXcd rho_ex = exciton_reduced(psi);
  const QubitBasis basis = build_basis(sup, ideal_amplitudes(params, t));
  const Projection proj = project_to_qubits(rho_ex, basis, psi.space());
  OracleSample s;
  s.concurrence = wootters_concurrence(proj.rho);
  s.nbar = psi.cavity_mean_photons();
  s.leakage = proj.leakage;
  s.norm = psi.norm();
  s.total_excitation = psi.total_excitation_mean();
  s.degenerate = proj.degenerate;
  return s;
}

std::vector<ModeAmplitudes> dissipative_amplitude_ode(const SystemParams& params,
                                                      const TimeGrid& grid, double tolerance) {
  const double g1 = params.g1();
  const double g2 = params.g2();
  const double half_gamma = 0.5 * params.gamma();
  auto rhs = [=](const OdeState& x, OdeState& dx, double /*t*/) {
    dx[0] = -kI * (g1 * x[1] + g2 * x[2]);
    dx[1] = -kI * g1 * x[0] - half_gamma * x[1];
    dx[2] = -kI * g2 * x[0] - half_gamma * x[2];
  };
  std::vector<double> times;
  times.reserve(grid.size());
  for (double gt : grid.gt_points()) times.push_back(gt / params.g());

  std::vector<ModeAmplitudes> out;
  out.reserve(times.size());
  auto observer = [&out](const OdeState& x, double /*t*/) {
    ModeAmplitudes a;
    a.u = x[0];
    a.v1 = x[1];
    a.v2 = x[2];
    a.leak = std::clamp(1.0 - std::norm(x[0]) - std::norm(x[1]) - std::norm(x[2]), 0.0, 1.0);
    out.push_back(a);
  };
  OdeState x{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  auto stepper =
      odeint::make_controlled<odeint::runge_kutta_dopri5<OdeState>>(tolerance, tolerance);
  if (times.front() > 0.0) {
    // integrate_times starts at the first requested time.
    times.insert(times.begin(), 0.0);
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3, observer);
    out.erase(out.begin());
  } else {
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3, observer);
  }
  return out;
}

std::vector<double> dissipative_concurrence_oracle(double abs_alpha, const SystemParams& params,
                                                   const TimeGrid& grid) {
  const auto sup = make_odd_cat(abs_alpha);
  const auto amps = dissipative_amplitude_ode(params, grid);
  std::vector<double> out;
  out.reserve(amps.size());
  for (const auto& a : amps) out.push_back(wootters_concurrence(reduced_density(sup, a).rho));
  return out;
}

double dissipative_concurrence_oracle(double abs_alpha, const SystemParams& params, double t) {
  const TimeGrid grid({params.g() * t}, TimeGrid::Units::Absolute);
  return dissipative_concurrence_oracle(abs_alpha, params, grid).front();
}

}  // namespace qdcat
