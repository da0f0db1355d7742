#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace hobox_cli {

namespace {

void check(hobox_status s) {
  if (s != HOBOX_OK) throw ApiError(s, hobox_last_error());
}

struct BasisDeleter {
  void operator()(hobox_basis* b) const { hobox_basis_free(b); }
};
struct SystemDeleter {
  void operator()(hobox_system* s) const { hobox_system_free(s); }
};
struct SpectrumDeleter {
  void operator()(hobox_spectrum* s) const { hobox_spectrum_free(s); }
};
using Basis = std::unique_ptr<hobox_basis, BasisDeleter>;
using System = std::unique_ptr<hobox_system, SystemDeleter>;
using Spectrum = std::unique_ptr<hobox_spectrum, SpectrumDeleter>;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&c)) return fmt(*d);
  if (auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (auto* i = std::get_if<long long>(&c)) return *i;
  if (auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(fmt(*d));
  }
  if (auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

Spectrum reference(const RunConfig& cfg, const hobox_params& p) {
  hobox_spectrum* s = nullptr;
  check(hobox_reference_spectrum(&p, cfg.ref_dim, &s));
  return Spectrum(s);
}

hobox_spectrum_info info(const hobox_spectrum* s) {
  hobox_spectrum_info i{};
  check(hobox_spectrum_info_get(s, &i));
  return i;
}

std::vector<double> energies(const hobox_spectrum* s) {
  std::vector<double> e(info(s).size);
  check(hobox_spectrum_energies(s, e.data(), e.size()));
  return e;
}

std::vector<double> residuals(const hobox_spectrum* s) {
  std::vector<double> r(info(s).size);
  check(hobox_spectrum_residuals(s, r.data(), r.size()));
  return r;
}

int levels_or(const RunConfig& cfg, int fallback) {
  if (cfg.levels < 0) throw ConfigError("--levels must be >= 0");
  return cfg.levels > 0 ? cfg.levels : fallback;
}

long long ll(std::size_t v) { return static_cast<long long>(v); }

Dataset spectrum(const RunConfig& cfg) {
  const Spectrum ref = reference(cfg, cfg.params);
  const int levels = levels_or(cfg, 40);
  std::vector<hobox_deviation_row> rows(levels);
  std::size_t count = 0;
  int truncated = 0;
  check(hobox_deviation_table(ref.get(), &cfg.params, 0, levels - 1, rows.data(), rows.size(), &count, &truncated));
  const std::string warning = truncated ? hobox_last_error() : "";
  Dataset d;
  d.columns = {"n", "E_exact", "E_HO", "E_box", "E_PT", "dE_HO", "dE_box", "dE_PT", "rel_HO", "rel_box", "rel_PT"};
  for (std::size_t i = 0; i < count; ++i) {
    const auto& r = rows[i];
    d.rows.push_back({static_cast<long long>(r.n), r.exact, r.ho, r.box, r.pt, r.d_ho, r.d_box, r.d_pt, r.rel_ho,
                      r.rel_box, r.rel_pt});
  }
  d.notes.emplace_back("reference_dim", static_cast<long long>(cfg.ref_dim));
  if (truncated) d.notes.emplace_back("warning", warning);
  return d;
}

Dataset oblique(const RunConfig& cfg) {
  if (cfg.box_dim < 0 || cfg.mho_dim < 0) throw ConfigError("basis sizes must be >= 0");
  if (cfg.box_dim + cfg.mho_dim == 0) throw ConfigError("empty basis: box_dim + mho_dim must be > 0");
  const hobox_params& p = cfg.params;
  Basis basis;
  {
    hobox_basis* box = nullptr;
    hobox_basis* mho = nullptr;
    if (cfg.box_dim > 0) check(hobox_basis_box(&p, cfg.box_dim, &box));
    Basis box_owner(box);
    if (cfg.mho_dim > 0) check(hobox_basis_mho(&p, cfg.mho_dim, cfg.strategy, &cfg.quadrature, &mho));
    Basis mho_owner(mho);
    if (box && mho) {
      hobox_basis* both = nullptr;
      check(hobox_basis_concat(box, mho, &both));
      basis.reset(both);
    } else {
      basis = box ? std::move(box_owner) : std::move(mho_owner);
    }
  }
  hobox_system* sys_raw = nullptr;
  check(hobox_assemble(&p, basis.get(), &cfg.quadrature, cfg.allow_nonconforming ? 1 : 0, &sys_raw));
  const System sys(sys_raw);
  double h_defect = 0.0;
  double s_defect = 0.0;
  check(hobox_system_defects(sys.get(), &h_defect, &s_defect));
  hobox_spectrum* sp_raw = nullptr;
  check(hobox_gevp(sys.get(), cfg.trunc_tol, &sp_raw));
  const Spectrum sp(sp_raw);
  const Spectrum ref = reference(cfg, p);

  const auto e = energies(sp.get());
  const auto r = residuals(sp.get());
  const auto exact = energies(ref.get());
  const auto si = info(sp.get());
  Dataset d;
  d.columns = {"n", "E_oblique", "E_exact", "rel_err", "residual"};
  const std::size_t n = std::min<std::size_t>(levels_or(cfg, 8), e.size());
  for (std::size_t i = 0; i < n; ++i)
    d.rows.push_back({ll(i), e[i], exact[i], std::abs(e[i] - exact[i]) / std::abs(exact[i]), r[i]});
  d.notes.emplace_back("basis_dim", ll(si.basis_dim));
  d.notes.emplace_back("effective_dim", ll(si.effective_dim));
  d.notes.emplace_back("hamiltonian_defect", h_defect);
  d.notes.emplace_back("overlap_defect", s_defect);
  d.notes.emplace_back("reference_dim", static_cast<long long>(cfg.ref_dim));
  return d;
}

double lambda_of(double beta) {
  double l = 0.0;
  check(hobox_lambda_of_beta(beta, 0.0, &l));
  return l;
}

Dataset classify(const RunConfig& cfg) {
  hobox_regime regime{};
  double beta = 0.0;
  check(hobox_classify_regime(&cfg.params, &regime, &beta));
  Dataset d;
  d.columns = {"beta", "lambda", "regime"};
  d.rows.push_back({beta, lambda_of(beta), std::string(hobox_regime_name(regime))});
  return d;
}

Dataset perturbation(const RunConfig& cfg) {
  const hobox_params& p = cfg.params;
  const Spectrum ref = reference(cfg, p);
  const auto exact = energies(ref.get());
  const auto ri = info(ref.get());
  const int levels = levels_or(cfg, 40);
  Dataset d;
  d.columns = {"n", "E_box", "dE1", "E_PT", "E_exact", "rel_err_PT"};
  for (int n = 0; n < levels && static_cast<std::size_t>(n) < ri.converged_count; ++n) {
    double box = 0.0;
    double corr = 0.0;
    double pt = 0.0;
    check(hobox_box_energy(&p, n, &box));
    check(hobox_first_order_correction(&p, n, &corr));
    check(hobox_perturbed_box_energy(&p, n, &pt));
    d.rows.push_back({static_cast<long long>(n), box, corr, pt, exact[n], std::abs(pt - exact[n]) / exact[n]});
  }
  double threshold = 0.0;
  check(hobox_pt_validity_threshold(&p, &threshold));
  d.notes.emplace_back("pt_validity_threshold", threshold);
  d.notes.emplace_back("dE1_limit", p.m * p.omega * p.omega * p.L * p.L / 6.0);
  return d;
}

Dataset components(const RunConfig& cfg) {
  const Spectrum ref = reference(cfg, cfg.params);
  std::vector<double> amp(cfg.ref_dim);
  double norm = 0.0;
  check(hobox_components(ref.get(), &cfg.params, cfg.state, cfg.ref_dim, &cfg.quadrature, amp.data(), amp.size(), &norm));
  Dataset d;
  d.columns = {"state", "box_index", "amplitude", "probability"};
  for (std::size_t j = 0; j < amp.size(); ++j)
    d.rows.push_back({static_cast<long long>(cfg.state), ll(j), amp[j], amp[j] * amp[j]});
  d.notes.emplace_back("norm_check", norm);
  return d;
}

Dataset coherence(const RunConfig& cfg) {
  const Spectrum ref = reference(cfg, cfg.params);
  const std::size_t n = cfg.indices.size();
  std::vector<hobox_coherence_pair> pairs(n > 1 ? n * (n - 1) / 2 : 1);
  check(hobox_coherence_profile(ref.get(), &cfg.params, cfg.indices.data(), n, cfg.ref_dim, &cfg.quadrature,
                                pairs.data(), pairs.size()));
  Dataset d;
  d.columns = {"a", "b", "similarity", "cross_parity", "coherent"};
  for (const auto& pr : pairs)
    d.rows.push_back({static_cast<long long>(pr.a), static_cast<long long>(pr.b), pr.similarity, pr.cross_parity != 0,
                      pr.similarity > 0.9});
  d.notes.emplace_back("coherence_threshold", 0.9);
  return d;
}

Dataset lanczos(const RunConfig& cfg) {
  const hobox_params& p = cfg.params;
  hobox_lanczos_options opts{cfg.k, cfg.expansion_dim, cfg.quadrature};
  hobox_lanczos_info li{};
  hobox_spectrum* raw = nullptr;
  check(hobox_modified_lanczos(&p, &opts, nullptr, nullptr, &raw, &li));
  const Spectrum sp(raw);
  const Spectrum ref = reference(cfg, p);
  const auto e = energies(sp.get());
  const auto r = residuals(sp.get());
  const auto exact = energies(ref.get());
  Dataset d;
  d.columns = {"n", "E_ritz", "E_exact", "rel_err", "residual"};
  const std::size_t n = std::min<std::size_t>(levels_or(cfg, 8), e.size());
  for (std::size_t i = 0; i < n; ++i)
    d.rows.push_back({ll(i), e[i], exact[i], std::abs(e[i] - exact[i]) / std::abs(exact[i]), r[i]});
  d.notes.emplace_back("iterations", static_cast<long long>(li.iterations));
  d.notes.emplace_back("breakdown", li.breakdown != 0);
  d.notes.emplace_back("max_boundary_ratio", li.max_boundary_ratio);
  return d;
}

Dataset alpha(const RunConfig& cfg) {
  const hobox_params& p = cfg.params;
  if (cfg.n_target.empty()) throw ConfigError("--n-target needs at least one level");
  const Spectrum ref = reference(cfg, p);
  const auto exact = energies(ref.get());
  Dataset d;
  d.columns = {"n_target", "alpha", "E_exact"};
  for (int n : cfg.n_target) {
    int a = 0;
    check(hobox_alpha_study(&p, n, cfg.rel_tol, ref.get(), -1, &a));
    d.rows.push_back({static_cast<long long>(n), static_cast<long long>(a), exact[n]});
  }
  double estimate = std::nan("");
  if (p.omega > 0.0) check(hobox_alpha_estimate(&p, &estimate));
  d.notes.emplace_back("alpha_estimate", estimate);
  return d;
}

Dataset variational(const RunConfig& cfg) {
  double energy = 0.0;
  double width = 0.0;
  check(hobox_variational_ground_state(&cfg.params, &energy, &width));
  const Spectrum ref = reference(cfg, cfg.params);
  const double e0 = energies(ref.get()).front();
  Dataset d;
  d.columns = {"E_var", "width", "E0_exact", "rel_above"};
  d.rows.push_back({energy, width, e0, (energy - e0) / std::abs(e0)});
  return d;
}

Dataset sweep(const RunConfig& cfg) {
  if (cfg.values.size() < 2) throw ConfigError("sweep needs at least two --values");
  const int levels = levels_or(cfg, 4);
  Dataset d;
  d.columns = {"value", "beta", "lambda", "regime", "E_c", "n_max_HO", "n_max_box"};
  d.notes.emplace_back("axis", axis_name(cfg.axis));
  for (int n = 0; n < levels; ++n) d.columns.push_back("E" + std::to_string(n));
  for (double v : cfg.values) {
    hobox_params p = cfg.params;
    switch (cfg.axis) {
      case SweepAxis::Omega: p.omega = v; break;
      case SweepAxis::L: p.L = v; break;
      case SweepAxis::Beta: p.omega = v * p.hbar / (p.m * p.L * p.L); break;
    }
    try {
      hobox_regime regime{};
      double beta = 0.0;
      check(hobox_classify_regime(&p, &regime, &beta));
      double ec = 0.0;
      check(hobox_critical_energy(&p, &ec));
      double nho = std::nan("");
      double nbox = std::nan("");
      if (p.omega > 0.0) {
        check(hobox_n_max_ho(&p, &nho));
        check(hobox_n_max_box(&p, &nbox));
      }
      const Spectrum ref = reference(cfg, p);
      const auto e = energies(ref.get());
      if (static_cast<std::size_t>(levels) > e.size()) throw ConfigError("--levels exceeds the reference dimension");
      std::vector<Cell> row{v, beta, lambda_of(beta), std::string(hobox_regime_name(regime)), ec, nho, nbox};
      for (int n = 0; n < levels; ++n) row.emplace_back(e[n]);
      d.rows.push_back(std::move(row));
    } catch (const ApiError& e) {
      throw ApiError(e.status(), "sweep value " + fmt(v) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("sweep value " + fmt(v) + ": " + e.what());
    }
  }
  return d;
}

nlohmann::json header(const RunConfig& cfg) {
  nlohmann::json h;
  h["config"] = to_json(cfg);
  hobox_regime regime{};
  double beta = 0.0;
  check(hobox_classify_regime(&cfg.params, &regime, &beta));
  h["beta"] = std::stod(fmt(beta));
  h["lambda"] = std::stod(fmt(lambda_of(beta)));
  h["regime"] = hobox_regime_name(regime);
  h["quadrature"] = {{"order", cfg.quadrature.order}, {"panels", cfg.quadrature.panels}};
  h["tolerances"] = {{"trunc_tol", cfg.trunc_tol}, {"rel_tol", cfg.rel_tol}};
  h["version"] = hobox_version();
  return h;
}

std::string category(hobox_status s) { return hobox_status_name(s); }

void report(std::ostream& err, const std::string& cat, const std::string& message, int code) {
  nlohmann::json j;
  j["error"] = {{"category", cat}, {"message", message}, {"exit_code", code}};
  err << j.dump() << '\n';
}

}  // namespace

int exit_code_for(hobox_status status) {
  switch (status) {
    case HOBOX_OK: return 0;
    case HOBOX_INVALID_ARGUMENT:
    case HOBOX_DOMAIN:
    case HOBOX_NONCONFORMING:
    case HOBOX_BUFFER_TOO_SMALL:
    case HOBOX_IO: return 2;
    case HOBOX_NOT_CONVERGED: return 4;
    case HOBOX_NUMERICAL:
    case HOBOX_DEGENERATE_BASIS:
    case HOBOX_INTERNAL: return 3;
  }
  return 3;
}

Dataset compute(const RunConfig& cfg) {
  check(hobox_params_validate(&cfg.params));
  switch (cfg.command) {
    case Command::Spectrum: return spectrum(cfg);
    case Command::Oblique: return oblique(cfg);
    case Command::Classify: return classify(cfg);
    case Command::Perturbation: return perturbation(cfg);
    case Command::Components: return components(cfg);
    case Command::Coherence: return coherence(cfg);
    case Command::Lanczos: return lanczos(cfg);
    case Command::Alpha: return alpha(cfg);
    case Command::Variational: return variational(cfg);
    case Command::Sweep: return sweep(cfg);
  }
  throw ConfigError("unknown command");
}

void write_dataset(std::ostream& os, const RunConfig& cfg, const Dataset& data) {
  const nlohmann::json h = header(cfg);
  if (cfg.format == Format::Json) {
    nlohmann::json j;
    j["header"] = h;
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& [k, v] : data.notes) notes[k] = cell_json(v);
    j["notes"] = notes;
    j["columns"] = data.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : data.rows) {
      nlohmann::json row = nlohmann::json::object();
      for (std::size_t i = 0; i < r.size(); ++i) row[data.columns[i]] = cell_json(r[i]);
      rows.push_back(row);
    }
    j["rows"] = rows;
    os << j.dump(2) << '\n';
    return;
  }
  os << "# command: " << command_name(cfg.command) << '\n';
  os << "# config: " << h["config"].dump() << '\n';
  os << "# beta: " << fmt(h["beta"].get<double>()) << '\n';
  os << "# lambda: " << fmt(h["lambda"].get<double>()) << '\n';
  os << "# regime: " << h["regime"].get<std::string>() << '\n';
  os << "# quadrature: order=" << cfg.quadrature.order << " panels=" << cfg.quadrature.panels << '\n';
  os << "# tolerances: trunc_tol=" << fmt(cfg.trunc_tol) << " rel_tol=" << fmt(cfg.rel_tol) << '\n';
  for (const auto& [k, v] : data.notes) os << "# " << k << ": " << cell_text(v) << '\n';
  for (std::size_t i = 0; i < data.columns.size(); ++i) os << (i ? "," : "") << data.columns[i];
  os << '\n';
  for (const auto& r : data.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << '\n';
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = compute(cfg);
    std::ostringstream buffer;
    write_dataset(buffer, cfg, data);
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw ApiError(HOBOX_IO, "cannot open output file " + cfg.out);
      file << buffer.str();
      if (!file) throw ApiError(HOBOX_IO, "write failed: " + cfg.out);
    }
    return 0;
  } catch (const ConfigError& e) {
    report(err, "invalid_config", e.what(), 2);
    return 2;
  } catch (const ApiError& e) {
    const int code = exit_code_for(e.status());
    report(err, category(e.status()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report(err, "internal", e.what(), 3);
    return 3;
  }
}

}  // namespace hobox_cli
