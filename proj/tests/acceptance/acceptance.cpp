#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hobox/analysis.hpp"
#include "hobox/assembly.hpp"
#include "hobox/basis.hpp"
#include "hobox/eigen.hpp"
#include "hobox/error.hpp"
#include "hobox/model.hpp"
#include "oracles.hpp"

using namespace hobox;

namespace {

constexpr double kPi = oracle::kPi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double max_rel_error(const std::vector<double>& e, const Spectrum& ref, std::size_t levels) {
  double worst = 0.0;
  for (std::size_t n = 0; n < levels; ++n) worst = std::max(worst, rel(e[n], ref.energies[n]));
  return worst;
}

Matrix random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

const Params kP0 = make_params(1, 1, 0, kPi / 2);
const Params kP4 = make_params(1, 1, 4, kPi / 2);
const Params kP16 = make_params(1, 1, 16, kPi / 2);

Outcome a1() {
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double box = 0.5 * std::pow((n + 1) * kPi / 2, 2) / std::pow(kPi / 2, 2);
    worst = std::max(worst, rel(box_energy(kP0, n), box));
    worst = std::max(worst, rel(ho_energy(kP4, n), 4.0 * (n + 0.5)));
  }
  const bool closed = worst <= 4e-16;
  const ObliqueSystem sys = assemble(kP0, box_basis(kP0, 30));
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < sys.dim(); ++i)
    for (std::size_t j = 0; j < sys.dim(); ++j) {
      const double e = box_energy(kP0, static_cast<int>(i));
      if (i == j)
        diag = std::max(diag, rel(sys.hamiltonian(i, j), e));
      else
        off = std::max(off, std::abs(sys.hamiltonian(i, j)) / e);
    }
  return {closed && diag <= 1e-10 && off <= 1e-10,
          fmt("closed forms max rel %.1e; omega=0 box(30) diag rel %.1e, off-diag rel %.1e", worst, diag, off)};
}

Outcome a2(const Spectrum& ref) {
  const double spacing = 4.0;
  int run = 1;
  while (run < 10 && std::abs(ref.energies[run] - ref.energies[run - 1] - spacing) <= 0.02 * spacing) ++run;
  const bool ground = rel(ref.energies[0], 2.0) <= 0.02;
  return {run >= 3 && run <= 4 && ground,
          fmt("%d equidistant levels, E0 = %.6f", run, ref.energies[0])};
}

Outcome a3(const Spectrum& ref) {
  double worst = 0.0;
  for (int n = 7; n < ref.converged_count; ++n) worst = std::max(worst, rel(perturbed_box_energy(kP4, n), ref.energies[n]));
  const double limit = 2 * kPi * kPi / 3;
  const double d40 = rel(first_order_correction(kP4, 40), limit);
  return {worst <= 0.02 && d40 <= 0.01,
          fmt("PT max rel for 7 <= n < %d: %.2e; dE1(40) off limit by %.2e", ref.converged_count, worst, d40)};
}

Outcome a4(const Spectrum& ref) {
  const Spectrum oblique = gevp(assemble(kP4, concat(box_basis(kP4, 7), mho_basis(kP4, 7, MhoStrategy::Nodal))));
  const double oblique_err = max_rel_error(oblique.energies, ref, 8);
  int box_needed = 8;
  while (max_rel_error(sym_eigenvalues(box_hamiltonian(kP4, box_needed)), ref, 8) > 1e-3) ++box_needed;
  const double box14 = max_rel_error(sym_eigenvalues(box_hamiltonian(kP4, 14)), ref, 8);
  const bool pass = oblique_err <= 1e-3 && box_needed > 14 && oblique_err < box14;
  return {pass, fmt("oblique 7+7 max rel %.2e (<= 1e-3: %s); box reaches 1e-3 at dim %d (> 14: %s); "
                    "box-14 max rel %.2e (oblique strictly better: %s)",
                    oblique_err, oblique_err <= 1e-3 ? "yes" : "no", box_needed, box_needed > 14 ? "yes" : "no", box14,
                    oblique_err < box14 ? "yes" : "no")};
}

Outcome a5(const Spectrum& ref) {
  int matched = 0;
  while (matched < ref.converged_count && rel(ref.energies[matched], ho_energy(kP16, matched)) <= 0.01) ++matched;
  const double nmax = n_max_ho(kP16);
  // The admissible window must bracket the level-count estimate.
  const bool consistent = nmax >= 17 && nmax <= 21;
  return {matched >= 17 && matched <= 21 && consistent,
          fmt("%d leading levels within 1%% of hbar*omega(n+1/2); n_max_HO = %.2f", matched, nmax)};
}

Outcome a6(const Spectrum& ref) {
  const double o9 = ho_overlap(ref, kP16, 9, 9);
  const double o19 = ho_overlap(ref, kP16, 19, 19);
  const double o20 = ho_overlap(ref, kP16, 20, 20);
  const bool hit = std::abs(o19 - 0.8808) <= 0.02 || std::abs(o20 - 0.8808) <= 0.02;
  return {o9 >= 0.9999 && hit, fmt("overlap(9) = %.8f, overlap(19) = %.6f, overlap(20) = %.6f", o9, o19, o20)};
}

Outcome a7(const Spectrum& ref) {
  std::string detail;
  bool pass = true;
  for (int n : {10, 50, 100}) {
    const int alpha = alpha_study(kP16, n, 1e-3, &ref);
    pass = pass && alpha <= 15;
    detail += fmt("alpha(%d) = %d; ", n, alpha);
  }
  const double estimate = alpha_estimate(kP16);
  pass = pass && estimate >= 12 && estimate <= 16;
  return {pass, detail + fmt("estimate %.3f", estimate)};
}

Outcome a8() {
  const Params p = make_params(1, 1, 1, 1);
  double worst = 0.0;
  std::size_t count = 0;
  for (const BasisSet& set : {concat(box_basis(p, 10), mho_basis(p, 10, MhoStrategy::Nodal)),
                              concat(box_basis(p, 10), mho_basis(p, 10, MhoStrategy::BoundaryAdjusted))}) {
    count += set.size();
    for (const auto& f : set)
      for (const auto& g : set) worst = std::max(worst, std::abs(momentum_boundary_defect(f, g, p)));
  }
  const BasisSet raw = raw_oscillator_basis(p, 4);
  double raw_max = 0.0;
  for (const auto& f : raw)
    for (const auto& g : raw) raw_max = std::max(raw_max, std::abs(momentum_boundary_defect(f, g, p)));
  return {worst <= 1e-12 && raw_max > 0.0,
          fmt("conforming max defect %.1e in two conforming sets of %zu functions total; raw oscillator max defect %.4f", worst, count, raw_max)};
}

Outcome a9(const Spectrum& ref) {
  double lowest = 1.0;
  for (const std::vector<int>& set : {std::vector<int>{24, 26, 28}, std::vector<int>{25, 27, 29}})
    for (const auto& pair : coherence_profile(ref, kP16, set, 400)) lowest = std::min(lowest, pair.similarity);
  return {lowest > 0.9, fmt("lowest pair similarity over states 24/26/28 and 25/27/29: %.4f", lowest)};
}

Outcome a10() {
  double scan = 0.0;
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Matrix h = random_symmetric(5, 1000 + seed);
    Matrix s = random_symmetric(5, 2000 + seed);
    s = s.transpose() * s;
    for (std::size_t i = 0; i < 5; ++i) s(i, i) += 0.5;
    ObliqueSystem sys;
    sys.hamiltonian = h;
    sys.overlap = s;
    for (int i = 0; i < 5; ++i) sys.labels.push_back("v:" + std::to_string(i));
    const Spectrum sp = gevp(sys);
    const double bound = 1.1 * std::max(std::abs(sp.energies.front()), std::abs(sp.energies.back())) + 1.0;
    const auto roots = oracle::pencil_roots(rows_of(h), rows_of(s), -bound, bound);
    if (roots.size() != sp.energies.size()) return {false, fmt("determinant scan found %zu roots", roots.size())};
    for (std::size_t k = 0; k < roots.size(); ++k)
      scan = std::max(scan, std::abs(sp.energies[k] - roots[k]) / std::max(1.0, std::abs(roots[k])));
  }
  bool monotone = true;
  std::vector<double> prev = sym_eigenvalues(box_hamiltonian(kP4, 10));
  for (int n : {20, 40}) {
    const auto next = sym_eigenvalues(box_hamiltonian(kP4, n));
    for (std::size_t k = 0; k < prev.size(); ++k) monotone = monotone && next[k] <= prev[k] * (1 + 1e-12);
    prev = next;
  }
  LanczosOptions opts;
  opts.k = 200;
  const auto lz = modified_lanczos(kP0, gaussian_start(default_start_center(kP0), default_start_width(kP0)), opts);
  double lanczos = 0.0;
  for (int n = 0; n < 3; ++n) lanczos = std::max(lanczos, rel(lz.spectrum.energies[n], box_energy(kP0, n)));
  return {scan <= 1e-8 && monotone && lanczos <= 1e-6,
          fmt("gevp vs determinant scan %.1e; nested monotone: %s; Lanczos(k=200) lowest 3 max rel %.1e",
              scan, monotone ? "yes" : "no", lanczos)};
}

Outcome a11(const Spectrum& ref4, const Spectrum& ref16) {
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const Spectrum& s, const Params& p, int count) {
    for (int n = 0; n < count; ++n) {
      const double e = s.energies[n];
      const double bound = std::max(box_energy(p, n), ho_energy(p, n));
      worst = std::max(worst, (bound - e) / std::abs(e));
      ++checked;
    }
  };
  check(ref4, kP4, ref4.converged_count);
  check(ref16, kP16, ref16.converged_count);
  const Spectrum oblique = gevp(assemble(kP4, concat(box_basis(kP4, 7), mho_basis(kP4, 7, MhoStrategy::Nodal))));
  check(oblique, kP4, static_cast<int>(oblique.size()));
  const auto var = variational_ground_state(kP4);
  const double above = (var.energy - ref4.energies[0]) / ref4.energies[0];
  return {worst <= 1e-8 && above >= 0.0 && above <= 0.05,
          fmt("%d eigenvalues, worst bound violation %.1e (relative, negative is safe); variational E0 = %.6f, %.3f%% above",
              checked, worst, var.energy, 100 * above)};
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const Spectrum ref4 = reference_spectrum(kP4);
  const Spectrum ref16 = reference_spectrum(kP16);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"A1", a1},
      {"A2", [&] { return a2(ref4); }},
      {"A3", [&] { return a3(ref4); }},
      {"A4", [&] { return a4(ref4); }},
      {"A5", [&] { return a5(ref16); }},
      {"A6", [&] { return a6(ref16); }},
      {"A7", [&] { return a7(ref16); }},
      {"A8", a8},
      {"A9", [&] { return a9(ref16); }},
      {"A10", a10},
      {"A11", [&] { return a11(ref4, ref16); }},
  };
  int failed = 0;
  for (const auto& [name, criterion] : criteria) {
    Outcome o;
    try {
      o = criterion();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), seconds);
  return failed == 0 ? 0 : 1;
}
