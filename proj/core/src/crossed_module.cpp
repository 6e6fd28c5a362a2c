#include "holonomy/crossed_module.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace holonomy {

namespace {

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

/// Random cover-group element for sampling-based checks.
GroupElement random_cover_element(const CoveringPair& cp, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  AlgebraElement x = algebra_zero(cp.cover_tag(), cp.cover_identity().dim());
  switch (cp.cover_tag()) {
    case GroupTag::Real:
      x.r = unif(rng);
      break;
    case GroupTag::SU2:
      x.m = unif(rng) * pauli(1) / (2.0 * std::complex<double>(0, 1)) +
            unif(rng) * pauli(2) / (2.0 * std::complex<double>(0, 1)) +
            unif(rng) * pauli(3) / (2.0 * std::complex<double>(0, 1));
      break;
    default: {
      const int n = x.dim();
      Eigen::MatrixXcd a(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          a(i, j) = std::complex<double>(unif(rng), unif(rng));
        }
      }
      Eigen::MatrixXcd anti = 0.5 * (a - a.adjoint());
      anti -= (anti.trace() / static_cast<double>(n)) *
              Eigen::MatrixXcd::Identity(n, n);
      x.m = anti;
      if (cp.cover_tag() == GroupTag::SUnxR) x.r = unif(rng);
      break;
    }
  }
  return exp(x);
}

}  // namespace

void FiniteGroupTable::validate() const {
  if (order <= 0 || static_cast<int>(product.size()) != order * order ||
      static_cast<int>(inverse.size()) != order) {
    throw Error("FiniteGroupTable: malformed tables");
  }
  for (int a = 0; a < order; ++a) {
    if (mul(identity, a) != a || mul(a, identity) != a) {
      throw Error("FiniteGroupTable: identity law fails");
    }
    if (mul(a, inv(a)) != identity || mul(inv(a), a) != identity) {
      throw Error("FiniteGroupTable: inverse law fails");
    }
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          throw Error("FiniteGroupTable: associativity fails");
        }
      }
    }
  }
}

FiniteGroupTable FiniteGroupTable::trivial() {
  FiniteGroupTable t;
  t.order = 1;
  t.product = {0};
  t.inverse = {0};
  t.identity = 0;
  return t;
}

FiniteGroupTable FiniteGroupTable::cyclic(int p) {
  FiniteGroupTable t;
  t.order = p;
  t.product.resize(p * p);
  t.inverse.resize(p);
  t.identity = 0;
  for (int a = 0; a < p; ++a) {
    t.inverse[a] = (p - a) % p;
    for (int b = 0; b < p; ++b) t.product[a * p + b] = (a + b) % p;
  }
  return t;
}

FiniteGroupTable FiniteGroupTable::symmetric(int n) {
  auto perms = permutations_lex(n);
  const int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) -
                            perms.begin());
  };
  FiniteGroupTable t;
  t.order = m;
  t.product.resize(m * m);
  t.inverse.resize(m);
  t.identity = 0;  // lexicographically first permutation is the identity
  for (int a = 0; a < m; ++a) {
    std::vector<int> ainv(n);
    for (int i = 0; i < n; ++i) ainv[perms[a][i]] = i;
    t.inverse[a] = index_of(ainv);
    for (int b = 0; b < m; ++b) {
      std::vector<int> ab(n);
      for (int i = 0; i < n; ++i) ab[i] = perms[a][perms[b][i]];
      t.product[a * m + b] = index_of(ab);
    }
  }
  return t;
}

FiniteGroupTable FiniteGroupTable::units_mod(int p) {
  std::vector<int> units;
  for (int k = 1; k < p; ++k) {
    if (std::gcd(k, p) == 1) units.push_back(k);
  }
  const int m = static_cast<int>(units.size());
  auto index_of = [&](int v) {
    return static_cast<int>(std::lower_bound(units.begin(), units.end(), v) -
                            units.begin());
  };
  FiniteGroupTable t;
  t.order = m;
  t.product.resize(m * m);
  t.inverse.resize(m);
  t.identity = index_of(1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      t.product[a * m + b] = index_of((units[a] * units[b]) % p);
    }
    for (int b = 0; b < m; ++b) {
      if ((units[a] * units[b]) % p == 1) t.inverse[a] = b;
    }
  }
  return t;
}

void FiniteCrossedModule::validate() const {
  H.validate();
  G.validate();
  if (static_cast<int>(tau.size()) != H.order ||
      static_cast<int>(alpha.size()) != G.order) {
    throw Error("FiniteCrossedModule: malformed maps");
  }
  for (int a = 0; a < H.order; ++a) {
    for (int b = 0; b < H.order; ++b) {
      if (tau[H.mul(a, b)] != G.mul(tau[a], tau[b])) {
        throw Error("FiniteCrossedModule: tau is not a homomorphism");
      }
    }
  }
  for (int g = 0; g < G.order; ++g) {
    std::set<int> image;
    for (int h = 0; h < H.order; ++h) image.insert(act(g, h));
    if (static_cast<int>(image.size()) != H.order) {
      throw Error("FiniteCrossedModule: alpha_g is not a bijection");
    }
    for (int a = 0; a < H.order; ++a) {
      for (int b = 0; b < H.order; ++b) {
        if (act(g, H.mul(a, b)) != H.mul(act(g, a), act(g, b))) {
          throw Error("FiniteCrossedModule: alpha_g is not a homomorphism");
        }
      }
    }
  }
  for (int g = 0; g < G.order; ++g) {
    for (int gp = 0; gp < G.order; ++gp) {
      for (int h = 0; h < H.order; ++h) {
        if (act(G.mul(gp, g), h) != act(gp, act(g, h))) {
          throw Error("FiniteCrossedModule: alpha is not a left action");
        }
      }
    }
  }
  // Peiffer identity and equivariance.
  for (int h = 0; h < H.order; ++h) {
    for (int hp = 0; hp < H.order; ++hp) {
      if (act(tau[h], hp) != H.mul(H.mul(h, hp), H.inv(h))) {
        throw Error("FiniteCrossedModule: Peiffer identity fails");
      }
    }
  }
  for (int g = 0; g < G.order; ++g) {
    for (int h = 0; h < H.order; ++h) {
      if (tau[act(g, h)] != G.mul(G.mul(g, tau[h]), G.inv(g))) {
        throw Error("FiniteCrossedModule: equivariance fails");
      }
    }
  }
}

FiniteCrossedModule FiniteCrossedModule::zp_aut_zp(int p) {
  FiniteCrossedModule cm;
  cm.H = FiniteGroupTable::cyclic(p);
  cm.G = FiniteGroupTable::units_mod(p);
  cm.tau.assign(p, cm.G.identity);
  std::vector<int> units;
  for (int k = 1; k < p; ++k) {
    if (std::gcd(k, p) == 1) units.push_back(k);
  }
  cm.alpha.resize(cm.G.order);
  for (int g = 0; g < cm.G.order; ++g) {
    cm.alpha[g].resize(p);
    for (int h = 0; h < p; ++h) cm.alpha[g][h] = (units[g] * h) % p;
  }
  return cm;
}

FiniteCrossedModule FiniteCrossedModule::conjugation(const FiniteGroupTable& g) {
  FiniteCrossedModule cm;
  cm.H = g;
  cm.G = g;
  cm.tau.resize(g.order);
  std::iota(cm.tau.begin(), cm.tau.end(), 0);
  cm.alpha.resize(g.order);
  for (int a = 0; a < g.order; ++a) {
    cm.alpha[a].resize(g.order);
    for (int h = 0; h < g.order; ++h) {
      cm.alpha[a][h] = g.mul(g.mul(a, h), g.inv(a));
    }
  }
  return cm;
}

FiniteCrossedModule FiniteCrossedModule::trivial_action(const FiniteGroupTable& h) {
  FiniteCrossedModule cm;
  cm.H = h;
  cm.G = FiniteGroupTable::trivial();
  cm.tau.assign(h.order, 0);
  cm.alpha.resize(1);
  cm.alpha[0].resize(h.order);
  std::iota(cm.alpha[0].begin(), cm.alpha[0].end(), 0);
  return cm;
}

std::vector<std::vector<int>> alpha_conjugacy_classes(const FiniteCrossedModule& cm) {
  std::vector<int> cls(cm.H.order, -1);
  std::vector<std::vector<int>> classes;
  for (int h = 0; h < cm.H.order; ++h) {
    if (cls[h] >= 0) continue;
    std::vector<int> members;
    std::vector<int> stack = {h};
    cls[h] = static_cast<int>(classes.size());
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (int g = 0; g < cm.G.order; ++g) {
        int img = cm.act(g, cur);
        if (cls[img] < 0) {
          cls[img] = cls[h];
          stack.push_back(img);
        }
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(members);
  }
  return classes;
}

namespace {

/// Subgroup of H generated by the given elements (finite closure).
std::vector<int> generated_subgroup(const FiniteGroupTable& h,
                                    const std::set<int>& generators) {
  std::set<int> members = {h.identity};
  std::vector<int> frontier = {h.identity};
  for (int g : generators) {
    if (members.insert(g).second) frontier.push_back(g);
  }
  while (!frontier.empty()) {
    int a = frontier.back();
    frontier.pop_back();
    for (int b : std::vector<int>(members.begin(), members.end())) {
      for (int c : {h.mul(a, b), h.mul(b, a), h.inv(a)}) {
        if (members.insert(c).second) frontier.push_back(c);
      }
    }
  }
  return std::vector<int>(members.begin(), members.end());
}

}  // namespace

FiniteGroupTable reduced_group(const FiniteCrossedModule& cm,
                               std::vector<int>* coset_of) {
  std::set<int> gens;
  for (int g = 0; g < cm.G.order; ++g) {
    for (int h = 0; h < cm.H.order; ++h) {
      gens.insert(cm.H.mul(cm.H.inv(h), cm.act(g, h)));
    }
  }
  std::vector<int> sub = generated_subgroup(cm.H, gens);
  std::set<int> subset(sub.begin(), sub.end());

  // Cosets h [G,H]; the subgroup is normal in H.
  std::vector<int> coset(cm.H.order, -1);
  std::vector<int> reps;
  for (int h = 0; h < cm.H.order; ++h) {
    if (coset[h] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(h);
    for (int s : sub) coset[cm.H.mul(h, s)] = id;
  }

  FiniteGroupTable q;
  q.order = static_cast<int>(reps.size());
  q.product.resize(q.order * q.order);
  q.inverse.resize(q.order);
  q.identity = coset[cm.H.identity];
  for (int a = 0; a < q.order; ++a) {
    q.inverse[a] = coset[cm.H.inv(reps[a])];
    for (int b = 0; b < q.order; ++b) {
      q.product[a * q.order + b] = coset[cm.H.mul(reps[a], reps[b])];
    }
  }
  q.validate();
  if (coset_of != nullptr) *coset_of = coset;
  return q;
}

std::vector<int> inv_alpha(const FiniteCrossedModule& cm) {
  std::vector<int> fixed;
  for (int h = 0; h < cm.H.order; ++h) {
    bool ok = true;
    for (int g = 0; g < cm.G.order && ok; ++g) ok = cm.act(g, h) == h;
    if (ok) fixed.push_back(h);
  }
  // Closed, contains e, central in H.
  std::set<int> members(fixed.begin(), fixed.end());
  if (members.count(cm.H.identity) == 0) {
    throw Error("inv_alpha: identity not fixed");
  }
  for (int a : fixed) {
    for (int b : fixed) {
      if (members.count(cm.H.mul(a, b)) == 0) {
        throw Error("inv_alpha: fixed points not closed");
      }
    }
    for (int h = 0; h < cm.H.order; ++h) {
      if (cm.H.mul(a, h) != cm.H.mul(h, a)) {
        throw Error("inv_alpha: fixed point not central");
      }
    }
  }
  return fixed;
}

std::vector<int> ker_tau(const FiniteCrossedModule& cm) {
  std::vector<int> kernel;
  for (int h = 0; h < cm.H.order; ++h) {
    if (cm.tau[h] == cm.G.identity) kernel.push_back(h);
  }
  for (int k : kernel) {
    for (int h = 0; h < cm.H.order; ++h) {
      if (cm.H.mul(k, h) != cm.H.mul(h, k)) {
        throw Error("ker_tau: kernel element not central");
      }
    }
  }
  return kernel;
}

std::vector<std::vector<int>> alpha_conjugacy_classes(const CoveringCrossedModule&) {
  throw NotFinite("alpha_conjugacy_classes: matrix realization");
}

FiniteGroupTable reduced_group(const CoveringCrossedModule&) {
  throw NotFinite("reduced_group: matrix realization");
}

std::vector<int> inv_alpha(const CoveringCrossedModule&) {
  throw NotFinite("inv_alpha: matrix realization");
}

std::vector<GroupElement> ker_tau(const CoveringCrossedModule& cm,
                                  int centrality_samples, double tol) {
  std::vector<GroupElement> kernel = cm.cover.kernel_samples();
  std::mt19937 rng(0x5eed);
  for (const GroupElement& k : kernel) {
    GroupElement image = cm.cover.tau(k);
    if (group_distance(image, cm.cover.base_identity()) > 1e-9) {
      throw Error("ker_tau: kernel sample does not map to identity");
    }
    for (int i = 0; i < centrality_samples; ++i) {
      GroupElement h = random_cover_element(cm.cover, rng);
      double comm = frobenius_distance(mul(k, h), mul(h, k));
      if (comm > tol) {
        throw Error("ker_tau: kernel element fails centrality sample");
      }
    }
  }
  return kernel;
}

}  // namespace holonomy
