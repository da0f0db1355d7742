#include "hobox/hobox.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "hobox/analysis.hpp"
#include "hobox/assembly.hpp"
#include "hobox/basis.hpp"
#include "hobox/eigen.hpp"
#include "hobox/error.hpp"
#include "hobox/model.hpp"
#include "hobox/quadrature.hpp"

struct hobox_basis {
  hobox::BasisSet set;
};

struct hobox_system {
  hobox::ObliqueSystem system;
};

struct hobox_spectrum {
  hobox::Spectrum spectrum;
};

namespace {

thread_local std::string last_error;

struct CapiFailure {
  hobox_status status;
  std::string message;
};

[[noreturn]] void reject(hobox_status status, std::string message) { throw CapiFailure{status, std::move(message)}; }

hobox_status map_code(hobox::ErrorCode code) {
  switch (code) {
    case hobox::ErrorCode::InvalidArgument: return HOBOX_INVALID_ARGUMENT;
    case hobox::ErrorCode::Domain: return HOBOX_DOMAIN;
    case hobox::ErrorCode::NonConforming: return HOBOX_NONCONFORMING;
    case hobox::ErrorCode::Numerical: return HOBOX_NUMERICAL;
    case hobox::ErrorCode::DegenerateBasis: return HOBOX_DEGENERATE_BASIS;
    case hobox::ErrorCode::NotConverged: return HOBOX_NOT_CONVERGED;
  }
  return HOBOX_INTERNAL;
}

template <class F>
hobox_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return HOBOX_OK;
  } catch (const CapiFailure& e) {
    last_error = e.message;
    return e.status;
  } catch (const hobox::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HOBOX_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HOBOX_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return HOBOX_INTERNAL;
  }
}

template <class T>
T* need(T* ptr, const char* name) {
  if (!ptr) reject(HOBOX_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
  return ptr;
}

hobox::Params params(const hobox_params* p) {
  need(p, "params");
  return hobox::make_params(p->m, p->hbar, p->omega, p->L);
}

hobox::QuadratureSpec quadrature(const hobox_quadrature* q) {
  hobox::QuadratureSpec spec;
  if (!q) return spec;
  if (q->order < 2 || q->order > 512) reject(HOBOX_INVALID_ARGUMENT, "quadrature order must be in [2, 512]");
  if (q->panels < 1 || q->panels > 100000) reject(HOBOX_INVALID_ARGUMENT, "quadrature panels must be >= 1");
  spec.order = q->order;
  spec.panels = q->panels;
  return spec;
}

void check_capacity(size_t capacity, size_t needed) {
  if (capacity < needed)
    reject(HOBOX_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) + " elements, " +
                                       std::to_string(needed) + " required");
}

void copy_out(const std::vector<double>& v, double* out, size_t capacity) {
  need(out, "out");
  check_capacity(capacity, v.size());
  std::copy(v.begin(), v.end(), out);
}

void copy_string(const std::string& s, char* buf, size_t capacity) {
  need(buf, "buf");
  check_capacity(capacity, s.size() + 1);
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

hobox_regime regime_tag(hobox::RegimeTag tag) {
  switch (tag) {
    case hobox::RegimeTag::OscillatorDominated: return HOBOX_REGIME_OSCILLATOR_DOMINATED;
    case hobox::RegimeTag::TwoGroundStates: return HOBOX_REGIME_TWO_GROUND_STATES;
    case hobox::RegimeTag::OscillatorGroundOnly: return HOBOX_REGIME_OSCILLATOR_GROUND_ONLY;
    case hobox::RegimeTag::PerturbativeBox: return HOBOX_REGIME_PERTURBATIVE_BOX;
  }
  return HOBOX_REGIME_OSCILLATOR_DOMINATED;
}

hobox::MhoStrategy strategy(hobox_mho_strategy s) {
  switch (s) {
    case HOBOX_MHO_POTENTIAL_WIDTH: return hobox::MhoStrategy::PotentialWidth;
    case HOBOX_MHO_NODAL: return hobox::MhoStrategy::Nodal;
    case HOBOX_MHO_BOUNDARY_ADJUSTED: return hobox::MhoStrategy::BoundaryAdjusted;
  }
  reject(HOBOX_INVALID_ARGUMENT, "unknown MHO strategy");
}

const hobox::BasisFunction& function_at(const hobox_basis* b, size_t i) {
  need(b, "basis");
  if (i >= b->set.size()) reject(HOBOX_DOMAIN, "basis index " + std::to_string(i) + " out of range");
  return b->set[i];
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

template <class T>
void store(T* out, T value) {
  *need(out, "out") = value;
}

}  // namespace

extern "C" {

const char* hobox_last_error(void) { return last_error.c_str(); }

const char* hobox_status_name(hobox_status status) {
  switch (status) {
    case HOBOX_OK: return "ok";
    case HOBOX_INVALID_ARGUMENT: return "invalid_argument";
    case HOBOX_DOMAIN: return "domain";
    case HOBOX_NONCONFORMING: return "nonconforming";
    case HOBOX_NUMERICAL: return "numerical";
    case HOBOX_DEGENERATE_BASIS: return "degenerate_basis";
    case HOBOX_NOT_CONVERGED: return "not_converged";
    case HOBOX_BUFFER_TOO_SMALL: return "buffer_too_small";
    case HOBOX_IO: return "io";
    case HOBOX_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hobox_version(void) { return "1.0.0"; }

hobox_quadrature hobox_default_quadrature(void) {
  const hobox::QuadratureSpec spec;
  return {spec.order, spec.panels};
}

hobox_status hobox_params_validate(const hobox_params* p) {
  return guard([&] { params(p); });
}

hobox_status hobox_beta(const hobox_params* p, double* out) {
  return guard([&] { store(out, params(p).beta()); });
}

hobox_status hobox_box_energy(const hobox_params* p, int n, double* out) {
  return guard([&] { store(out, hobox::box_energy(params(p), n)); });
}

hobox_status hobox_ho_energy(const hobox_params* p, int n, double* out) {
  return guard([&] { store(out, hobox::ho_energy(params(p), n)); });
}

hobox_status hobox_box_wavefunction(const hobox_params* p, int n, double q, double* out) {
  return guard([&] { store(out, hobox::box_wavefunction(params(p), n, q)); });
}

hobox_status hobox_ho_wavefunction(const hobox_params* p, int n, double q, double* out) {
  return guard([&] { store(out, hobox::ho_wavefunction(params(p), n, q)); });
}

hobox_status hobox_critical_energy(const hobox_params* p, double* out) {
  return guard([&] { store(out, hobox::critical_energy(params(p))); });
}

hobox_status hobox_n_max_ho(const hobox_params* p, double* out) {
  return guard([&] { store(out, hobox::n_max_ho(params(p))); });
}

hobox_status hobox_n_max_box(const hobox_params* p, double* out) {
  return guard([&] { store(out, hobox::n_max_box(params(p))); });
}

hobox_status hobox_classify_regime(const hobox_params* p, hobox_regime* regime, double* beta) {
  return guard([&] {
    const hobox::Regime r = hobox::classify_regime(params(p));
    store(regime, regime_tag(r.tag));
    if (beta) *beta = r.beta;
  });
}

const char* hobox_regime_name(hobox_regime regime) {
  switch (regime) {
    case HOBOX_REGIME_OSCILLATOR_DOMINATED: return hobox::regime_name(hobox::RegimeTag::OscillatorDominated).data();
    case HOBOX_REGIME_TWO_GROUND_STATES: return hobox::regime_name(hobox::RegimeTag::TwoGroundStates).data();
    case HOBOX_REGIME_OSCILLATOR_GROUND_ONLY: return hobox::regime_name(hobox::RegimeTag::OscillatorGroundOnly).data();
    case HOBOX_REGIME_PERTURBATIVE_BOX: return hobox::regime_name(hobox::RegimeTag::PerturbativeBox).data();
  }
  return "unknown";
}

hobox_status hobox_lambda_of_beta(double beta, double beta_c, double* out) {
  return guard([&] { store(out, hobox::lambda_of_beta(beta, beta_c > 0.0 ? beta_c : hobox::kDefaultBetaC)); });
}

hobox_status hobox_quadrature_rule(int order, int panels, double a, double b, double* nodes, double* weights,
                                   size_t capacity) {
  return guard([&] {
    const auto rule = hobox::QuadratureRule::gauss_legendre(order, panels, a, b);
    need(nodes, "nodes");
    need(weights, "weights");
    check_capacity(capacity, rule.size());
    std::copy(rule.nodes().begin(), rule.nodes().end(), nodes);
    std::copy(rule.weights().begin(), rule.weights().end(), weights);
  });
}

hobox_status hobox_box_q2_element(const hobox_params* p, int m, int n, double* out) {
  return guard([&] { store(out, hobox::box_q2_element(params(p), m, n)); });
}

hobox_status hobox_ho_onto_box_projection(const hobox_params* p, int ho_n, int box_j, int infinite_limits,
                                          const hobox_quadrature* q, double* out) {
  return guard([&] {
    store(out, hobox::ho_onto_box_projection(params(p), ho_n, box_j, infinite_limits != 0, quadrature(q)));
  });
}

hobox_status hobox_projection_uses_infinite_limits(const hobox_params* p, int* out) {
  return guard([&] { store(out, hobox::projection_uses_infinite_limits(params(p)) ? 1 : 0); });
}

hobox_status hobox_basis_box(const hobox_params* p, int n, hobox_basis** out) {
  return guard([&] {
    need(out, "out");
    *out = new hobox_basis{hobox::box_basis(params(p), n)};
  });
}

hobox_status hobox_basis_mho(const hobox_params* p, int n, hobox_mho_strategy s, const hobox_quadrature* q,
                             hobox_basis** out) {
  return guard([&] {
    need(out, "out");
    *out = new hobox_basis{hobox::mho_basis(params(p), n, strategy(s), quadrature(q))};
  });
}

hobox_status hobox_basis_raw_oscillator(const hobox_params* p, int n, hobox_basis** out) {
  return guard([&] {
    need(out, "out");
    *out = new hobox_basis{hobox::raw_oscillator_basis(params(p), n)};
  });
}

hobox_status hobox_basis_concat(const hobox_basis* a, const hobox_basis* b, hobox_basis** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new hobox_basis{hobox::concat(a->set, b->set)};
  });
}

void hobox_basis_free(hobox_basis* b) { delete b; }

hobox_status hobox_basis_size(const hobox_basis* b, size_t* out) {
  return guard([&] { store(out, need(b, "basis")->set.size()); });
}

hobox_status hobox_basis_label(const hobox_basis* b, size_t i, char* buf, size_t capacity) {
  return guard([&] { copy_string(function_at(b, i).label(), buf, capacity); });
}

hobox_status hobox_basis_eval(const hobox_basis* b, size_t i, double q, double* value, double* derivative) {
  return guard([&] {
    const auto& f = function_at(b, i);
    if (value) *value = f.value(q);
    if (derivative) *derivative = f.derivative(q);
  });
}

hobox_status hobox_basis_conforming(const hobox_basis* b, size_t i, int* out) {
  return guard([&] { store(out, function_at(b, i).conforming() ? 1 : 0); });
}

hobox_status hobox_momentum_boundary_defect(const hobox_params* p, const hobox_basis* b, size_t i, size_t j,
                                            double* out) {
  return guard([&] {
    store(out, hobox::momentum_boundary_defect(function_at(b, i), function_at(b, j), params(p)));
  });
}

hobox_status hobox_assemble(const hobox_params* p, const hobox_basis* b, const hobox_quadrature* q,
                            int allow_nonconforming, hobox_system** out) {
  return guard([&] {
    need(b, "basis");
    need(out, "out");
    hobox::AssemblyOptions options;
    options.quadrature = quadrature(q);
    options.allow_nonconforming = allow_nonconforming != 0;
    *out = new hobox_system{hobox::assemble(params(p), b->set, options)};
  });
}

void hobox_system_free(hobox_system* s) { delete s; }

hobox_status hobox_system_dim(const hobox_system* s, size_t* out) {
  return guard([&] { store(out, need(s, "system")->system.dim()); });
}

hobox_status hobox_system_matrices(const hobox_system* s, double* hamiltonian, double* overlap, size_t capacity) {
  return guard([&] {
    need(s, "system");
    const size_t n = s->system.dim();
    check_capacity(capacity, n * n);
    if (hamiltonian) std::copy(s->system.hamiltonian.data().begin(), s->system.hamiltonian.data().end(), hamiltonian);
    if (overlap) std::copy(s->system.overlap.data().begin(), s->system.overlap.data().end(), overlap);
  });
}

hobox_status hobox_system_defects(const hobox_system* s, double* hamiltonian, double* overlap) {
  return guard([&] {
    need(s, "system");
    if (hamiltonian) *hamiltonian = s->system.hamiltonian_defect;
    if (overlap) *overlap = s->system.overlap_defect;
  });
}

hobox_status hobox_system_write_csv(const hobox_system* s, const char* hamiltonian_path, const char* overlap_path) {
  return guard([&] {
    need(s, "system");
    auto write = [](const hobox::Matrix& m, const char* path) {
      if (!path) return;
      std::ofstream os(path);
      if (!os) reject(HOBOX_IO, std::string("cannot open ") + path);
      hobox::write_csv(os, m);
      if (!os) reject(HOBOX_IO, std::string("write failed: ") + path);
    };
    write(s->system.hamiltonian, hamiltonian_path);
    write(s->system.overlap, overlap_path);
  });
}

hobox_status hobox_box_hamiltonian(const hobox_params* p, int n, double* out, size_t capacity) {
  return guard([&] {
    const hobox::Matrix h = hobox::box_hamiltonian(params(p), n);
    need(out, "out");
    check_capacity(capacity, h.data().size());
    std::copy(h.data().begin(), h.data().end(), out);
  });
}

hobox_status hobox_gevp(const hobox_system* s, double trunc_tol, hobox_spectrum** out) {
  return guard([&] {
    need(s, "system");
    need(out, "out");
    *out = new hobox_spectrum{hobox::gevp(s->system, trunc_tol < 0.0 ? hobox::kDefaultTruncTol : trunc_tol)};
  });
}

hobox_status hobox_reference_spectrum(const hobox_params* p, int dim, hobox_spectrum** out) {
  return guard([&] {
    need(out, "out");
    *out = new hobox_spectrum{hobox::reference_spectrum(params(p), dim <= 0 ? hobox::kReferenceDim : dim)};
  });
}

hobox_status hobox_sym_eigen(const double* a, size_t n, double* values, double* vectors) {
  return guard([&] {
    need(a, "a");
    need(values, "values");
    hobox::Matrix m(n, n);
    std::copy(a, a + n * n, m.data().begin());
    const auto eig = hobox::sym_eigen(m);
    std::copy(eig.values.begin(), eig.values.end(), values);
    if (vectors) std::copy(eig.vectors.data().begin(), eig.vectors.data().end(), vectors);
  });
}

void hobox_spectrum_free(hobox_spectrum* s) { delete s; }

hobox_status hobox_spectrum_info_get(const hobox_spectrum* s, hobox_spectrum_info* out) {
  return guard([&] {
    const auto& sp = need(s, "spectrum")->spectrum;
    store(out, hobox_spectrum_info{sp.size(), sp.basis_dim(), sp.effective_dim, sp.converged_count, sp.truncation_tol});
  });
}

hobox_status hobox_spectrum_energies(const hobox_spectrum* s, double* out, size_t capacity) {
  return guard([&] { copy_out(need(s, "spectrum")->spectrum.energies, out, capacity); });
}

hobox_status hobox_spectrum_residuals(const hobox_spectrum* s, double* out, size_t capacity) {
  return guard([&] { copy_out(need(s, "spectrum")->spectrum.residuals, out, capacity); });
}

hobox_status hobox_spectrum_vector(const hobox_spectrum* s, size_t i, double* out, size_t capacity) {
  return guard([&] {
    const auto& sp = need(s, "spectrum")->spectrum;
    if (i >= sp.size()) reject(HOBOX_DOMAIN, "state index " + std::to_string(i) + " out of range");
    copy_out(sp.state(i), out, capacity);
  });
}

hobox_status hobox_spectrum_label(const hobox_spectrum* s, size_t i, char* buf, size_t capacity) {
  return guard([&] {
    const auto& sp = need(s, "spectrum")->spectrum;
    if (i >= sp.labels.size()) reject(HOBOX_DOMAIN, "basis index " + std::to_string(i) + " out of range");
    copy_string(sp.labels[i], buf, capacity);
  });
}

hobox_status hobox_spectrum_write_csv(const hobox_spectrum* s, const char* path) {
  return guard([&] {
    const auto& sp = need(s, "spectrum")->spectrum;
    need(path, "path");
    std::ofstream os(path);
    if (!os) reject(HOBOX_IO, std::string("cannot open ") + path);
    os << "index,energy,residual\n";
    for (size_t i = 0; i < sp.size(); ++i) os << i << ',' << fmt(sp.energies[i]) << ',' << fmt(sp.residuals[i]) << '\n';
    if (!os) reject(HOBOX_IO, std::string("write failed: ") + path);
  });
}

hobox_status hobox_modified_lanczos(const hobox_params* p, const hobox_lanczos_options* options, hobox_function start,
                                    void* context, hobox_spectrum** out, hobox_lanczos_info* info) {
  return guard([&] {
    const hobox::Params pp = params(p);
    need(out, "out");
    hobox::LanczosOptions opts;
    if (options) {
      opts.k = options->k;
      opts.expansion_dim = options->expansion_dim;
      opts.quadrature = quadrature(&options->quadrature);
    }
    std::function<double(double)> initial;
    if (start)
      initial = [start, context](double q) { return start(q, context); };
    else
      initial = hobox::gaussian_start(hobox::default_start_center(pp), hobox::default_start_width(pp));
    hobox::LanczosResult r = hobox::modified_lanczos(pp, initial, opts);
    if (info) *info = {r.breakdown ? 1 : 0, r.iterations, r.max_boundary_ratio};
    *out = new hobox_spectrum{std::move(r.spectrum)};
  });
}

hobox_status hobox_first_order_correction(const hobox_params* p, int n, double* out) {
  return guard([&] { store(out, hobox::first_order_correction(params(p), n)); });
}

hobox_status hobox_perturbed_box_energy(const hobox_params* p, int n, double* out) {
  return guard([&] { store(out, hobox::perturbed_box_energy(params(p), n)); });
}

hobox_status hobox_pt_validity_threshold(const hobox_params* p, double* out) {
  return guard([&] { store(out, hobox::pt_validity_threshold(params(p))); });
}

hobox_status hobox_deviation_table(const hobox_spectrum* reference, const hobox_params* p, int n_first, int n_last,
                                   hobox_deviation_row* rows, size_t capacity, size_t* count, int* truncated) {
  return guard([&] {
    need(reference, "reference");
    need(rows, "rows");
    const auto table = hobox::deviation_table(reference->spectrum, params(p), n_first, n_last);
    check_capacity(capacity, table.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) {
      const auto& r = table.rows[i];
      rows[i] = {r.n, r.exact, r.ho, r.box, r.pt, r.d_ho, r.d_box, r.d_pt, r.rel_ho, r.rel_box, r.rel_pt};
    }
    if (count) *count = table.rows.size();
    if (truncated) *truncated = table.truncated ? 1 : 0;
    if (table.truncated) last_error = table.warning;
  });
}

hobox_status hobox_components(const hobox_spectrum* s, const hobox_params* p, int state, int box_dim,
                              const hobox_quadrature* q, double* amplitudes, size_t capacity, double* norm_check) {
  return guard([&] {
    need(s, "spectrum");
    need(amplitudes, "amplitudes");
    if (box_dim > 0) check_capacity(capacity, static_cast<size_t>(box_dim));
    const auto t = hobox::components_in_box_basis(s->spectrum, params(p), state, box_dim, quadrature(q));
    for (size_t i = 0; i < t.components.size(); ++i) amplitudes[i] = t.components[i].amplitude;
    if (norm_check) *norm_check = t.norm_check;
  });
}

hobox_status hobox_ho_overlap(const hobox_spectrum* s, const hobox_params* p, int state, int n,
                              const hobox_quadrature* q, double* out) {
  return guard([&] { store(out, hobox::ho_overlap(need(s, "spectrum")->spectrum, params(p), state, n, quadrature(q))); });
}

hobox_status hobox_coherence_profile(const hobox_spectrum* s, const hobox_params* p, const int* indices, size_t count,
                                     int box_dim, const hobox_quadrature* q, hobox_coherence_pair* out,
                                     size_t capacity) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    if (count > 0) need(indices, "indices");
    const std::vector<int> idx(indices, indices + count);
    const auto pairs = hobox::coherence_profile(s->spectrum, params(p), idx, box_dim, quadrature(q));
    check_capacity(capacity, pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i)
      out[i] = {pairs[i].a, pairs[i].b, pairs[i].similarity, pairs[i].cross_parity ? 1 : 0};
  });
}

hobox_status hobox_alpha_study(const hobox_params* p, int n_target, double rel_tol, const hobox_spectrum* reference,
                               int cap, int* out) {
  return guard([&] {
    store(out, hobox::alpha_study(params(p), n_target, rel_tol, reference ? &reference->spectrum : nullptr,
                                  cap < 0 ? hobox::kAlphaCap : cap));
  });
}

hobox_status hobox_alpha_estimate(const hobox_params* p, double* out) {
  return guard([&] { store(out, hobox::alpha_estimate(params(p))); });
}

hobox_status hobox_variational_ground_state(const hobox_params* p, double* energy, double* width) {
  return guard([&] {
    const auto r = hobox::variational_ground_state(params(p));
    store(energy, r.energy);
    if (width) *width = r.width;
  });
}

}  // extern "C"
