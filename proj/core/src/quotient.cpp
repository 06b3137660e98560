#include "latspec/quotient.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace latspec {

namespace {

void check_sublattice(const PeriodicGraph& g, const Sublattice& L) {
  if (L.basis.cols != g.dimension)
    throw Error("sublattice basis width does not match graph dimension");
  if (L.basis.rows < 1 || L.basis.rows > g.dimension)
    throw RankError("sublattice rank must be between 1 and d");
}

std::string coset_tag(const Offset& rep) {
  std::ostringstream os;
  os << "@(";
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (i) os << ",";
    os << rep[i];
  }
  os << ")";
  return os.str();
}

// Canonical coset representative within the fundamental parallelepiped of a
// lower-triangular HNF basis: reduce coordinates from the last one down.
Offset canonical_rep(const IntMatrix& hnf, const Offset& z) {
  Offset r = z;
  for (int i = hnf.rows - 1; i >= 0; --i) {
    std::int64_t piv = hnf.at(i, i);
    std::int64_t q = floor_div(r[i], piv);
    if (q == 0) continue;
    for (int j = 0; j <= i; ++j)
      r[j] = checked_sub(r[j], checked_mul(q, hnf.at(i, j)));
  }
  return r;
}

std::int64_t rep_index(const IntMatrix& hnf, const Offset& rep) {
  std::int64_t idx = 0;
  for (int i = 0; i < hnf.rows; ++i) idx = idx * hnf.at(i, i) + rep[i];
  return idx;
}

Offset mul_row(const Offset& z, const IntMatrix& u) {
  Offset y(u.cols, 0);
  for (int j = 0; j < u.cols; ++j) {
    std::int64_t acc = 0;
    for (int i = 0; i < u.rows; ++i)
      acc = checked_add(acc, checked_mul(z[i], u.at(i, j)));
    y[j] = acc;
  }
  return y;
}

}  // namespace

Site QuotientGraph::project(const Site& cover_site) const {
  if (kind == QuotientKind::FiniteTorus) {
    Offset rep = canonical_rep(transform, cover_site.offset);
    int nv = int(graph.vertex_names.size()) / int(coset_reps.size());
    std::int64_t c = rep_index(transform, rep);
    return Site{{}, int(c) * nv + cover_site.vertex};
  }
  Offset y = mul_row(cover_site.offset, transform);
  Offset dropped(y.begin() + rank, y.end());
  return Site{std::move(dropped), cover_site.vertex};
}

QuotientGraph factor_full_rank(const PeriodicGraph& g, const Sublattice& L) {
  check_sublattice(g, L);
  if (L.basis.rows != g.dimension)
    throw RankError("factor_full_rank: sublattice must have full rank");
  HnfResult h = hermite_normal_form(L.basis);  // RankError when dependent

  const int d = g.dimension;
  const int nv = g.vertex_count();
  std::int64_t ncosets = 1;
  for (int i = 0; i < d; ++i) ncosets = checked_mul(ncosets, h.hnf.at(i, i));

  QuotientGraph out;
  out.kind = QuotientKind::FiniteTorus;
  out.transform = h.hnf;
  out.rank = d;

  // lexicographic enumeration of the fundamental parallelepiped
  Offset rep(d, 0);
  for (std::int64_t c = 0; c < ncosets; ++c) {
    out.coset_reps.push_back(rep);
    for (int i = d - 1; i >= 0; --i) {
      if (++rep[i] < h.hnf.at(i, i)) break;
      rep[i] = 0;
    }
  }

  PeriodicGraph& t = out.graph;
  t.dimension = 0;
  for (std::int64_t c = 0; c < ncosets; ++c)
    for (int v = 0; v < nv; ++v) {
      t.vertex_names.push_back(g.vertex_names[v] +
                               coset_tag(out.coset_reps[std::size_t(c)]));
      t.potential.push_back(g.potential[v]);
    }
  t.base_vertex = g.base_vertex;  // coset of 0 is enumerated first

  std::map<std::pair<int, int>, double> weights;
  for (std::int64_t c = 0; c < ncosets; ++c) {
    const Offset& r = out.coset_reps[std::size_t(c)];
    for (const Edge& ed : g.edges) {
      Offset target(d);
      for (int k = 0; k < d; ++k) target[k] = checked_add(r[k], ed.offset[k]);
      std::int64_t hc = rep_index(h.hnf, canonical_rep(h.hnf, target));
      weights[{int(c) * nv + ed.tail, int(hc) * nv + ed.head}] += ed.weight;
    }
  }
  for (const auto& [key, w] : weights)
    t.edges.push_back({key.first, key.second, {}, w});
  return out;
}

QuotientGraph factor_primitive(const PeriodicGraph& g, const Sublattice& L) {
  check_sublattice(g, L);
  const int d = g.dimension;
  const int k = L.basis.rows;
  if (k >= d)
    throw RankError("factor_primitive: sublattice rank must be below d");

  SnfResult snf = smith_normal_form(L.basis);
  for (int i = 0; i < k; ++i) {
    if (snf.diag[i] == 0)
      throw RankError("factor_primitive: sublattice rows are dependent");
    if (snf.diag[i] != 1)
      throw TorsionError(
          "factor_primitive: sublattice is not primitive (invariant factor " +
          std::to_string(snf.diag[i]) + "); the quotient has torsion");
  }

  QuotientGraph out;
  out.kind = QuotientKind::Periodic;
  out.transform = snf.right;  // y = z * right maps L onto span(e_1..e_k)
  out.rank = k;

  PeriodicGraph& q = out.graph;
  q.dimension = d - k;
  q.vertex_names = g.vertex_names;
  q.potential = g.potential;
  q.base_vertex = g.base_vertex;

  std::map<std::tuple<int, int, Offset>, double> weights;
  for (const Edge& ed : g.edges) {
    Offset y = mul_row(ed.offset, out.transform);
    Offset dropped(y.begin() + k, y.end());
    weights[{ed.tail, ed.head, std::move(dropped)}] += ed.weight;
  }
  for (const auto& [key, w] : weights)
    q.edges.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
  return out;
}

double intertwine_check(const PeriodicGraph& g, const Sublattice& L,
                        const std::function<double(const Site&)>& f_quotient,
                        const Box& window) {
  check_sublattice(g, L);
  QuotientGraph qg = (L.basis.rows == g.dimension) ? factor_full_rank(g, L)
                                                   : factor_primitive(g, L);
  const PeriodicGraph& h = qg.graph;

  auto lifted = [&](const Site& s) { return f_quotient(qg.project(s)); };

  double worst = 0.0;
  for (std::int64_t c = 0; c < window.cell_count(); ++c) {
    Offset z = window.offset_at(c);
    for (int v = 0; v < g.vertex_count(); ++v) {
      Site here{z, v};
      double fh = lifted(here);

      double lhs = 0.0;
      for (const Edge& ed : g.edges) {
        if (ed.tail != v) continue;
        Offset nb(z.size());
        for (std::size_t kk = 0; kk < z.size(); ++kk)
          nb[kk] = checked_add(z[kk], ed.offset[kk]);
        lhs += ed.weight * (fh - lifted({nb, ed.head}));
      }
      lhs += g.potential[v] * fh;

      Site down = qg.project(here);
      double fq = f_quotient(down);
      double rhs = 0.0;
      for (const Edge& ed : h.edges) {
        if (ed.tail != down.vertex) continue;
        Offset nb(down.offset.size());
        for (std::size_t kk = 0; kk < nb.size(); ++kk)
          nb[kk] = checked_add(down.offset[kk], ed.offset[kk]);
        rhs += ed.weight * (fq - f_quotient({nb, ed.head}));
      }
      rhs += h.potential[down.vertex] * fq;

      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

bool potential_shift_consistency(const PeriodicGraph& g, const Sublattice& L,
                                 double lambda) {
  check_sublattice(g, L);
  auto factor = [&](const PeriodicGraph& graph) {
    return (L.basis.rows == graph.dimension) ? factor_full_rank(graph, L)
                                             : factor_primitive(graph, L);
  };

  PeriodicGraph shifted = g;
  for (double& c : shifted.potential) c = c - lambda;
  QuotientGraph first = factor(shifted);

  QuotientGraph second = factor(g);
  for (double& c : second.graph.potential) c = c - lambda;

  const PeriodicGraph& a = first.graph;
  const PeriodicGraph& b = second.graph;
  if (a.dimension != b.dimension || a.vertex_names != b.vertex_names ||
      a.base_vertex != b.base_vertex || a.potential.size() != b.potential.size())
    return false;
  for (std::size_t i = 0; i < a.potential.size(); ++i)
    if (a.potential[i] != b.potential[i]) return false;
  if (a.edges.size() != b.edges.size()) return false;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    const Edge& x = a.edges[e];
    const Edge& y = b.edges[e];
    if (x.tail != y.tail || x.head != y.head || x.offset != y.offset ||
        x.weight != y.weight)
      return false;
  }
  return true;
}

Eigen::MatrixXd finite_operator(const PeriodicGraph& torus) {
  if (torus.dimension != 0)
    throw Error("finite_operator: graph must have dimension 0");
  const int n = torus.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& ed : torus.edges) {
    if (ed.tail == ed.head) continue;  // b(x,x)(f(x)-f(x)) = 0
    m(ed.tail, ed.tail) += ed.weight;
    m(ed.tail, ed.head) -= ed.weight;
  }
  for (int v = 0; v < n; ++v) m(v, v) += torus.potential[v];
  return m;
}

int kernel_dimension(const Eigen::MatrixXd& m, double rtol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s[0] : 0.0;
  if (smax == 0.0) return int(m.rows());
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] <= rtol * smax) ++dim;
  return dim;
}

}  // namespace latspec
