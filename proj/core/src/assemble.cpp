#include "specgap/assemble.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace specgap::spectral {

Eigen::VectorXd AssembledSystem::to_full(const Eigen::VectorXd& reduced) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(full_size);
  for (int i = 0; i < size(); ++i) full[free_to_full[static_cast<std::size_t>(i)]] = reduced[i];
  return full;
}

namespace {

// Bottom truncation edges, grouped into connected runs by shared vertices.
// Returns per-edge flags: true when the edge belongs to a funnel-floor run
// (width > 3 eps), false for cusp slivers.
std::vector<std::pair<const Mesh::BoundaryEdge*, bool>> bottom_runs(const Mesh& mesh) {
  const double eps = mesh.trunc.eps;
  std::vector<const Mesh::BoundaryEdge*> bottom;
  for (const Mesh::BoundaryEdge& e : mesh.boundary_edges) {
    if (e.tag != Mesh::kTruncationTag) continue;
    const double ya = mesh.vertices[static_cast<std::size_t>(e.a)][1];
    const double yb = mesh.vertices[static_cast<std::size_t>(e.b)][1];
    if (ya < eps * (1.0 + 1e-9) && yb < eps * (1.0 + 1e-9)) bottom.push_back(&e);
  }
  std::unordered_map<int, int> comp;  // vertex -> run id via union-find
  std::vector<int> parent;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto id_of = [&](int v) {
    auto it = comp.find(v);
    if (it != comp.end()) return it->second;
    const int id = static_cast<int>(parent.size());
    parent.push_back(id);
    comp.emplace(v, id);
    return id;
  };
  for (const auto* e : bottom) parent[static_cast<std::size_t>(find(id_of(e->a)))] = find(id_of(e->b));

  std::unordered_map<int, std::pair<double, double>> extent;  // run -> [xmin, xmax]
  for (const auto* e : bottom) {
    const int r = find(comp[e->a]);
    const double xa = mesh.vertices[static_cast<std::size_t>(e->a)][0];
    const double xb = mesh.vertices[static_cast<std::size_t>(e->b)][0];
    auto [it, fresh] = extent.try_emplace(r, std::min(xa, xb), std::max(xa, xb));
    if (!fresh) {
      it->second.first = std::min({it->second.first, xa, xb});
      it->second.second = std::max({it->second.second, xa, xb});
    }
  }
  std::vector<std::pair<const Mesh::BoundaryEdge*, bool>> out;
  for (const auto* e : bottom) {
    const auto& ex = extent[find(comp[e->a])];
    out.emplace_back(e, ex.second - ex.first > 3.0 * eps);
  }
  return out;
}

}  // namespace

bool has_funnel_floor(const Mesh& mesh) {
  for (const auto& [edge, funnel] : bottom_runs(mesh))
    if (funnel) return true;
  return false;
}

AssembledSystem assemble(const Mesh& mesh, TruncationTreatment trunc) {
  const int n = static_cast<int>(mesh.vertices.size());

  std::vector<char> dirichlet(static_cast<std::size_t>(n), 0);
  for (const Mesh::BoundaryEdge& e : mesh.boundary_edges) {
    const BoundaryCondition bc = e.tag == Mesh::kTruncationTag
                                     ? (trunc.mode == TruncationTreatment::Mode::dirichlet
                                            ? BoundaryCondition::dirichlet
                                            : BoundaryCondition::neumann)
                                     : mesh.wall_bcs[static_cast<std::size_t>(e.tag)];
    if (bc == BoundaryCondition::dirichlet) {
      dirichlet[static_cast<std::size_t>(e.a)] = 1;
      dirichlet[static_cast<std::size_t>(e.b)] = 1;
    }
  }

  AssembledSystem sys;
  sys.full_size = n;
  sys.full_to_free.assign(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (!dirichlet[static_cast<std::size_t>(v)]) {
      sys.full_to_free[static_cast<std::size_t>(v)] = static_cast<int>(sys.free_to_full.size());
      sys.free_to_full.push_back(v);
    }
  }
  const int m = sys.size();
  if (m == 0) throw std::invalid_argument("assemble: no free vertices left");

  std::vector<Eigen::Triplet<double>> ta, tb;
  ta.reserve(mesh.triangles.size() * 9);
  tb.reserve(mesh.triangles.size() * 9);

  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
    const double area = 0.5 * det;
    if (!(area > 0.0)) throw std::runtime_error("assemble: inverted or degenerate triangle");

    // P1 gradients
    const double bx[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double by[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};

    // edge midpoints and weight 1/y^2 there
    const double my[3] = {0.5 * (p0[1] + p1[1]), 0.5 * (p1[1] + p2[1]), 0.5 * (p2[1] + p0[1])};
    double wq[3];
    for (int q = 0; q < 3; ++q) wq[q] = area / 3.0 / (my[q] * my[q]);
    // basis values at midpoint q (midpoint q is opposite vertex (q+2)%3)
    auto phi = [](int i, int q) {
      static const double table[3][3] = {{0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
      return table[i][q];
    };

    for (int i = 0; i < 3; ++i) {
      const int gi = sys.full_to_free[static_cast<std::size_t>(tri[i])];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int gj = sys.full_to_free[static_cast<std::size_t>(tri[j])];
        if (gj < 0) continue;
        const double a = (bx[i] * bx[j] + by[i] * by[j]) / (4.0 * area);
        double b = 0.0;
        for (int q = 0; q < 3; ++q) b += wq[q] * phi(i, q) * phi(j, q);
        ta.emplace_back(gi, gj, a);
        tb.emplace_back(gi, gj, b);
      }
    }
  }

  if (trunc.mode == TruncationTreatment::Mode::matched) {
    // Transparent cuts for the zero-frequency branch: the decaying solution is
    // y^s0 toward the floor and y^(1-s0) toward the top, so
    //   stiffness += s0 * int u v / y ds        on funnel floors,
    //   stiffness -= (1-s0) * int u v / y ds    on the top cut
    // (the sign difference comes from the outward normal).
    const double s0 = trunc.matched_exponent;
    auto add_edge = [&](const Mesh::BoundaryEdge& e, double slope) {
      if (slope == 0.0) return;
      const int ga = sys.full_to_free[static_cast<std::size_t>(e.a)];
      const int gb = sys.full_to_free[static_cast<std::size_t>(e.b)];
      const auto& pa = mesh.vertices[static_cast<std::size_t>(e.a)];
      const auto& pb = mesh.vertices[static_cast<std::size_t>(e.b)];
      const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
      const double f = slope * len / (0.5 * (pa[1] + pb[1]));
      if (ga >= 0) ta.emplace_back(ga, ga, f / 3.0);
      if (gb >= 0) ta.emplace_back(gb, gb, f / 3.0);
      if (ga >= 0 && gb >= 0) {
        ta.emplace_back(ga, gb, f / 6.0);
        ta.emplace_back(gb, ga, f / 6.0);
      }
    };
    for (const auto& [e, funnel] : bottom_runs(mesh))
      if (funnel) add_edge(*e, s0);
    const double ytop = mesh.trunc.Y * (1.0 - 1e-9);
    for (const Mesh::BoundaryEdge& e : mesh.boundary_edges) {
      if (e.tag != Mesh::kTruncationTag) continue;
      if (mesh.vertices[static_cast<std::size_t>(e.a)][1] > ytop &&
          mesh.vertices[static_cast<std::size_t>(e.b)][1] > ytop)
        add_edge(e, -(1.0 - s0));
    }
  }

  sys.stiffness.resize(m, m);
  sys.mass.resize(m, m);
  sys.stiffness.setFromTriplets(ta.begin(), ta.end());
  sys.mass.setFromTriplets(tb.begin(), tb.end());
  sys.stiffness.makeCompressed();
  sys.mass.makeCompressed();
  return sys;
}

double weighted_mass(const Mesh& mesh, const Eigen::VectorXd& u_full,
                     const std::function<bool(double, double)>& keep) {
  double total = 0.0;
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double cx = (p0[0] + p1[0] + p2[0]) / 3.0, cy = (p0[1] + p1[1] + p2[1]) / 3.0;
    if (!keep(cx, cy)) continue;
    const double area =
        0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]));
    const double u0 = u_full[tri[0]], u1 = u_full[tri[1]], u2 = u_full[tri[2]];
    const double um[3] = {0.5 * (u0 + u1), 0.5 * (u1 + u2), 0.5 * (u2 + u0)};
    const double my[3] = {0.5 * (p0[1] + p1[1]), 0.5 * (p1[1] + p2[1]), 0.5 * (p2[1] + p0[1])};
    for (int q = 0; q < 3; ++q) total += area / 3.0 * um[q] * um[q] / (my[q] * my[q]);
  }
  return total;
}

}  // namespace specgap::spectral
