#pragma once

// Newtonian potential kernel 1/r^(n-2) for n >= 3, its normalization
// -1/((n-2) S_{n-1}), midpoint-rule convolution integrals of sampled sources
// over box regions, and the reproduction test for smooth decaying scalars.
// The singular cell is replaced by the exact kernel average over the ball of
// equal volume (configurable).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kcalc/basis.hpp"
#include "kcalc/form_field.hpp"
#include "kcalc/grid.hpp"
#include "kcalc/multivector.hpp"
#include "kcalc/parallel.hpp"

namespace kcalc {

inline constexpr double pi_value = 3.14159265358979323846;

// Surface area of the unit (n-1)-sphere, 2 pi^(n/2) / Gamma(n/2).
inline double unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  const double half = 0.5 * static_cast<double>(n);
  return 2.0 * std::pow(pi_value, half) / std::tgamma(half);
}

inline void check_kernel_dimension(int n) {
  if (n < 3) throw std::invalid_argument("dimension below kernel validity");
}

inline double kernel_value(double r12, int n) {
  check_kernel_dimension(n);
  return std::pow(r12, -static_cast<double>(n - 2));
}

// d/dx_l' of r^(2-n) equals (n-2) (x_l - x_l') r^(-n); this is the scalar
// weight multiplying (x_l - x_l').
inline double kernel_gradient_weight(double r12, int n) {
  check_kernel_dimension(n);
  return static_cast<double>(n - 2) * std::pow(r12, -static_cast<double>(n));
}

enum class SelfCellRule { ball_average, drop };

struct KernelSpec {
  int dimension;
  SelfCellRule rule = SelfCellRule::ball_average;

  explicit KernelSpec(int n, SelfCellRule r = SelfCellRule::ball_average)
      : dimension(n), rule(r) {
    check_kernel_dimension(n);
  }

  double normalization() const {
    return -1.0 /
           (static_cast<double>(dimension - 2) * unit_sphere_area(dimension));
  }

  // Average of 1/r^(n-2) over the ball of the given volume: (n/2) a^(2-n)
  // with a the equal-volume radius (n a^(n-1) da integrates r^(2-n) to
  // S a^2/2).
  double self_cell_average(double cell_volume) const {
    if (rule == SelfCellRule::drop) return 0.0;
    const double n = static_cast<double>(dimension);
    const double a =
        std::pow(n * cell_volume / unit_sphere_area(dimension), 1.0 / n);
    return 0.5 * n * std::pow(a, 2.0 - n);
  }
};

// Kernel values indexed by integer node displacement, flattened over
// [0, 2 N_k - 2] per axis; the zero displacement slot holds the self-cell
// average.
struct KernelTable {
  std::vector<double> values;
  std::vector<std::size_t> strides;  // per axis
  std::vector<int> widths;           // 2 N_k - 1 per axis

  std::size_t index_of(const std::vector<int>& eval_idx,
                       const std::vector<int>& src_idx,
                       const GridSpec& grid) const {
    std::size_t t = 0;
    for (int k = 0; k < grid.dimension(); ++k) {
      const auto ku = static_cast<std::size_t>(k);
      t += static_cast<std::size_t>(eval_idx[ku] - src_idx[ku] +
                                    grid.points(k) - 1) *
           strides[ku];
    }
    return t;
  }
};

inline KernelTable build_kernel_table(const GridSpec& grid,
                                      const KernelSpec& spec) {
  if (grid.dimension() != spec.dimension)
    throw std::invalid_argument("kernel dimension does not match the grid");
  const int n = grid.dimension();
  KernelTable table;
  table.widths.resize(static_cast<std::size_t>(n));
  table.strides.assign(static_cast<std::size_t>(n), 1);
  std::size_t total = 1;
  for (int k = n - 1; k >= 0; --k) {
    table.widths[static_cast<std::size_t>(k)] = 2 * grid.points(k) - 1;
    table.strides[static_cast<std::size_t>(k)] = total;
    total *= static_cast<std::size_t>(table.widths[static_cast<std::size_t>(k)]);
  }
  table.values.resize(total);
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (std::size_t t = 0; t < total; ++t) {
    double r2 = 0.0;
    std::size_t rest = t;
    bool self = true;
    for (int k = 0; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      d[ku] = static_cast<int>(rest / table.strides[ku]) % table.widths[ku];
      const double dx =
          static_cast<double>(d[ku] - (grid.points(k) - 1)) * grid.spacing(k);
      r2 += dx * dx;
      if (d[ku] != grid.points(k) - 1) self = false;
      rest %= table.strides[ku];
    }
    table.values[t] = self ? spec.self_cell_average(grid.cell_volume())
                           : kernel_value(std::sqrt(r2), n);
  }
  return table;
}

namespace detail {

// sum over source nodes of src[s] * K(eval, s) * cell_volume, for every
// evaluation node of the same grid. Parallel over evaluation nodes; each
// node's accumulation runs in a fixed row-major source order.
inline Lattice convolve_lattice(const Lattice& src, const GridSpec& grid,
                                const KernelTable& table, double cell_volume) {
  const int n = grid.dimension();
  Lattice out(grid.node_count());
  parallel_for(0, grid.node_count(), [&](std::size_t eval_node) {
    std::vector<int> ie;
    grid.unflatten(eval_node, ie);
    // Table index for source index (0,...,0), then an odometer walk.
    std::size_t t = 0;
    for (int k = 0; k < n; ++k)
      t += static_cast<std::size_t>(ie[static_cast<std::size_t>(k)] +
                                    grid.points(k) - 1) *
           table.strides[static_cast<std::size_t>(k)];
    std::vector<int> is(static_cast<std::size_t>(n), 0);
    double acc = 0.0;
    for (std::size_t s = 0; s < grid.node_count(); ++s) {
      acc += src[s] * table.values[t];
      // advance the source multi-index, keeping t in step
      for (int k = n - 1; k >= 0; --k) {
        const auto ku = static_cast<std::size_t>(k);
        if (++is[ku] < grid.points(k)) {
          t -= table.strides[ku];
          break;
        }
        is[ku] = 0;
        t += static_cast<std::size_t>(grid.points(k) - 1) * table.strides[ku];
      }
    }
    out[eval_node] = acc * cell_volume;
  });
  return out;
}

}  // namespace detail

// Which derivative of the decomposed form the source was taken from; the
// integral itself is the same convolution either way.
enum class SourcePart { interior_part, exterior_part };

// For each basis component A of the homogeneous source, the lattice
// sign(A) * sum_{x' in region} coeff_A(x') K(|x-x'|) vol evaluated at every
// region node, where sign(A) makes dx^A wedge (sign dx^Abar) the volume
// form. Input lives on the region's parent grid; the result lives on the
// region's own grid.
inline FormField helmholtz_integral(const FormField& source,
                                    const Region& region, SourcePart,
                                    const KernelSpec& spec) {
  if (source.grades().size() > 1)
    throw std::invalid_argument("source must be homogeneous");
  const FormField local = restrict_to(source, region);
  const GridSpec grid = local.grid();
  if (grid.dimension() != spec.dimension)
    throw std::invalid_argument("kernel dimension does not match the grid");
  const KernelTable table = build_kernel_table(grid, spec);
  const double vol = grid.cell_volume();
  FormField out(grid);
  for (const auto& [mask, lat] : local.components()) {
    const Complement comp = complement_of(mask, grid.dimension());
    Lattice conv = detail::convolve_lattice(lat, grid, table, vol);
    if (comp.sign != 1)
      for (double& v : conv) v = -v;
    out.component(mask) = std::move(conv);
  }
  return out;
}

// sum over region nodes of density(x') K(|x - x'|) vol at an arbitrary
// point; probes landing on a node (within a millionth of a cell) use the
// self-cell average.
inline double newtonian_sum_at(const Lattice& density, const GridSpec& grid,
                               const std::vector<double>& x,
                               const KernelSpec& spec) {
  if (static_cast<int>(x.size()) != grid.dimension())
    throw std::invalid_argument("probe dimension does not match the grid");
  double min_h = grid.spacing(0);
  for (int k = 1; k < grid.dimension(); ++k)
    min_h = std::min(min_h, grid.spacing(k));
  const double snap2 = 1e-12 * min_h * min_h;
  const double vol = grid.cell_volume();
  double acc = 0.0;
  std::vector<double> xs;
  for (std::size_t s = 0; s < grid.node_count(); ++s) {
    grid.coordinates(s, xs);
    double r2 = 0.0;
    for (int k = 0; k < grid.dimension(); ++k) {
      const double d = x[static_cast<std::size_t>(k)] -
                       xs[static_cast<std::size_t>(k)];
      r2 += d * d;
    }
    const double K = r2 <= snap2 ? spec.self_cell_average(vol)
                                 : kernel_value(std::sqrt(r2), grid.dimension());
    acc += density[s] * K;
  }
  return acc * vol;
}

// Reconstruction of a smooth decaying scalar from its discrete Laplacian:
// normalization * sum K * (laplacian phi) * vol. The source term uses the
// compact second differences; the midpoint quadrature already limits the
// accuracy, and a wider stencil would swamp it.
inline double reconstruct_scalar_at(const FormField& phi, const Region& region,
                                    const std::vector<double>& x,
                                    const KernelSpec& spec) {
  const FormField local = restrict_to(phi, region);
  if (!local.grades().empty() && local.grades() != std::vector<int>{0})
    throw std::invalid_argument("reconstruction expects a scalar field");
  const Lattice* lat = local.find(0u);
  if (lat == nullptr) return 0.0;
  const Lattice source = second_difference_laplacian(*lat, local.grid());
  return spec.normalization() *
         newtonian_sum_at(source, local.grid(), x, spec);
}

struct Probe {
  std::vector<double> x;
  double expected = 0.0;
};

// Max reconstruction error over the probe set.
inline double delta_identity_residual(const FormField& phi,
                                      const Region& region,
                                      const std::vector<Probe>& probes,
                                      const KernelSpec& spec) {
  const FormField local = restrict_to(phi, region);
  if (!local.grades().empty() && local.grades() != std::vector<int>{0})
    throw std::invalid_argument("reconstruction expects a scalar field");
  const Lattice* lat = local.find(0u);
  Lattice source;
  if (lat != nullptr)
    source = second_difference_laplacian(*lat, local.grid());
  double worst = 0.0;
  for (const Probe& p : probes) {
    const double recon =
        lat == nullptr
            ? 0.0
            : spec.normalization() *
                  newtonian_sum_at(source, local.grid(), p.x, spec);
    worst = std::max(worst, std::abs(p.expected - recon));
  }
  return worst;
}

// Every region node as a probe, expected values read from the field itself.
inline std::vector<Probe> node_probes(const FormField& phi,
                                      const Region& region) {
  const FormField local = restrict_to(phi, region);
  std::vector<Probe> probes;
  probes.reserve(local.grid().node_count());
  for (std::size_t node = 0; node < local.grid().node_count(); ++node) {
    Probe p;
    local.grid().coordinates(node, p.x);
    p.expected = local.value(0u, node);
    probes.push_back(std::move(p));
  }
  return probes;
}

}  // namespace kcalc
