#include "hobox/assembly.hpp"

#include <cmath>
#include <map>

#include "hobox/error.hpp"

namespace hobox {

namespace {

// Function values/derivatives on the rule chosen for each pair, cached per
// panel count so a function is tabulated once per resolution.
class Tabulation {
 public:
  Tabulation(const BasisSet& basis, const QuadratureSpec& spec) : basis_(basis), spec_(spec) {}

  struct Table {
    QuadratureRule rule;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> derivatives;
  };

  struct Element {
    double overlap;
    double kinetic;
    double q2;
  };

  Element element(std::size_t i, std::size_t j) {
    const double L = basis_[i].params().half_width();
    const int panels = panels_for_wavenumber(spec_, L, basis_[i].wavenumber() + basis_[j].wavenumber());
    Table& t = table(panels, L);
    const auto& fi = column(t, i, false);
    const auto& fj = column(t, j, false);
    const auto& di = column(t, i, true);
    const auto& dj = column(t, j, true);
    const auto w = t.rule.weights();
    const auto q = t.rule.nodes();
    Element e{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double ff = w[k] * fi[k] * fj[k];
      e.overlap += ff;
      e.q2 += ff * q[k] * q[k];
      e.kinetic += w[k] * di[k] * dj[k];
    }
    return e;
  }

 private:
  Table& table(int panels, double L) {
    auto it = tables_.find(panels);
    if (it == tables_.end()) {
      Table t{QuadratureRule::gauss_legendre(spec_.order, panels, -L, L), {}, {}};
      t.values.resize(basis_.size());
      t.derivatives.resize(basis_.size());
      it = tables_.emplace(panels, std::move(t)).first;
    }
    return it->second;
  }

  const std::vector<double>& column(Table& t, std::size_t i, bool derivative) {
    auto& slot = derivative ? t.derivatives[i] : t.values[i];
    if (slot.empty()) {
      const auto q = t.rule.nodes();
      slot.resize(q.size());
      for (std::size_t k = 0; k < q.size(); ++k)
        slot[k] = derivative ? basis_[i].derivative(q[k]) : basis_[i].value(q[k]);
    }
    return slot;
  }

  const BasisSet& basis_;
  QuadratureSpec spec_;
  std::map<int, Table> tables_;
};

bool both_box(const BasisFunction& a, const BasisFunction& b) {
  return a.kind() == BasisKind::Box && b.kind() == BasisKind::Box;
}

BlockRange block_of(const BasisSet& basis, bool box) {
  BlockRange r{basis.size(), basis.size()};
  bool found = false;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((basis[i].kind() == BasisKind::Box) != box) continue;
    if (!found) r.begin = i;
    found = true;
    r.end = i + 1;
  }
  if (!found) r = {0, 0};
  return r;
}

double symmetrize(Matrix& a) {
  const double d = symmetry_defect(a);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double s = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = s;
      a(j, i) = s;
    }
  }
  return d;
}

struct Assembled {
  Matrix h;
  Matrix s;
  double h_defect;
  double s_defect;
};

Assembled assemble_both(const Params& p, const BasisSet& basis, const AssemblyOptions& options, bool want_h) {
  check_conforming(basis, options.allow_nonconforming);
  const std::size_t n = basis.size();
  const double kinetic = p.hbar() * p.hbar() / (2.0 * p.mass());
  const double spring = 0.5 * p.mass() * p.omega() * p.omega();
  Tabulation tab(basis, options.quadrature);
  Assembled out{Matrix(n, n), Matrix(n, n), 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BasisFunction& fi = basis[i];
      const BasisFunction& fj = basis[j];
      if (fi.parity() != fj.parity()) continue;
      if (both_box(fi, fj)) {
        out.s(i, j) = (fi.index() == fj.index()) ? 1.0 : 0.0;
        if (want_h) {
          const double e = (fi.index() == fj.index()) ? box_energy(p, fi.index()) : 0.0;
          out.h(i, j) = e + spring * box_q2_element(p, fi.index(), fj.index());
        }
        continue;
      }
      const auto e = tab.element(i, j);
      out.s(i, j) = e.overlap;
      if (want_h) out.h(i, j) = kinetic * e.kinetic + spring * e.q2;
    }
  }
  out.s_defect = symmetrize(out.s);
  if (want_h) out.h_defect = symmetrize(out.h);
  return out;
}

}  // namespace

void check_conforming(const BasisSet& basis, bool allow_nonconforming) {
  if (allow_nonconforming) return;
  for (const auto& f : basis) {
    if (!f.conforming())
      fail(ErrorCode::NonConforming, "basis function " + f.label() + " does not vanish at the box walls");
    const double L = f.params().half_width();
    const QuadratureRule rule = box_rule({}, L, f.wavenumber());
    double peak = 0.0;
    for (double q : rule.nodes()) peak = std::max(peak, std::abs(f.value(q)));
    const double edge = std::max(std::abs(f.value(L)), std::abs(f.value(-L)));
    if (edge > 1e-12 * peak)
      fail(ErrorCode::NonConforming, "basis function " + f.label() + " has boundary value " + std::to_string(edge));
  }
}

Matrix overlap_matrix(const BasisSet& basis, const AssemblyOptions& options) {
  if (basis.empty()) fail(ErrorCode::InvalidArgument, "overlap_matrix: empty basis");
  return assemble_both(basis[0].params(), basis, options, false).s;
}

Matrix hamiltonian_matrix(const Params& p, const BasisSet& basis, const AssemblyOptions& options, double* defect) {
  auto a = assemble_both(p, basis, options, true);
  if (defect) *defect = a.h_defect;
  return std::move(a.h);
}

ObliqueSystem assemble(const Params& p, BasisSet basis, const AssemblyOptions& options) {
  if (basis.empty()) fail(ErrorCode::InvalidArgument, "assemble: empty basis");
  auto a = assemble_both(p, basis, options, true);
  ObliqueSystem sys;
  sys.hamiltonian = std::move(a.h);
  sys.overlap = std::move(a.s);
  sys.hamiltonian_defect = a.h_defect;
  sys.overlap_defect = a.s_defect;
  sys.labels = basis.labels();
  sys.box_block = block_of(basis, true);
  sys.mho_block = block_of(basis, false);
  sys.basis = std::make_shared<const BasisSet>(std::move(basis));
  return sys;
}

Matrix box_hamiltonian(const Params& p, int N) {
  if (N < 1) fail(ErrorCode::Domain, "box_hamiltonian: N must be >= 1");
  const double spring = 0.5 * p.mass() * p.omega() * p.omega();
  Matrix h(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = i % 2; j < N; j += 2) h(i, j) = spring * box_q2_element(p, i, j);
    h(i, i) += box_energy(p, i);
  }
  return h;
}

double momentum_boundary_defect(const BasisFunction& f, const BasisFunction& g, const Params& p) {
  const double L = p.half_width();
  return p.hbar() * std::abs(f.value(L) * g.value(L) - f.value(-L) * g.value(-L));
}

double inner_product(const BasisFunction& f, const BasisFunction& g, const QuadratureSpec& spec) {
  if (f.parity() != g.parity()) return 0.0;
  if (both_box(f, g)) return f.index() == g.index() ? 1.0 : 0.0;
  const QuadratureRule rule = box_rule(spec, f.params().half_width(), f.wavenumber() + g.wavenumber());
  return rule.integrate([&](double q) { return f.value(q) * g.value(q); });
}

}  // namespace hobox
