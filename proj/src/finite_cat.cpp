#include "catransport/finite_cat.hpp"

#include <algorithm>
#include <set>

namespace catransport {
namespace finite {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

bool is_group_table(const std::vector<std::vector<int>>& t, std::string* witness) {
  const int n = static_cast<int>(t.size());
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = t[cand][a] == a && t[a][cand] == a;
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e < 0) {
    if (witness) *witness = "no identity element";
    return false;
  }
  for (int a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < n; ++b)
      if (t[a][b] == e && t[b][a] == e) has_inverse = true;
    if (!has_inverse) {
      if (witness) *witness = "element " + std::to_string(a) + " has no inverse";
      return false;
    }
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) {
          if (witness)
            *witness = "associativity fails at (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")";
          return false;
        }
  }
  return true;
}

int table_identity(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = t[cand][a] == a && t[a][cand] == a;
    if (ok) return cand;
  }
  throw StructureError("group table has no identity");
}

int table_inverse(const std::vector<std::vector<int>>& t, int a) {
  const int e = table_identity(t);
  for (int b = 0; b < static_cast<int>(t.size()); ++b)
    if (t[a][b] == e && t[b][a] == e) return b;
  throw StructureError("element has no inverse");
}

}  // namespace

std::optional<std::string> FiniteCategory::check_category() const {
  const int nm = n_mor();
  if (static_cast<int>(identity.size()) != n_obj) return "identity table size mismatch";
  for (int o = 0; o < n_obj; ++o) {
    const int i = identity[o];
    if (i < 0 || i >= nm || mor_src[i] != o || mor_dst[i] != o)
      return "identity of object " + std::to_string(o) + " is malformed";
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      const int gf = compose_at(g, f);
      const bool composable = mor_dst[f] == mor_src[g];
      if (composable != (gf >= 0))
        return "composability mismatch at " + pair_str(g, f);
      if (gf >= 0 && (mor_src[gf] != mor_src[f] || mor_dst[gf] != mor_dst[g]))
        return "composite endpoints wrong at " + pair_str(g, f);
    }
  for (int f = 0; f < nm; ++f) {
    if (compose_at(f, identity[mor_src[f]]) != f)
      return "right identity law fails at morphism " + std::to_string(f);
    if (compose_at(identity[mor_dst[f]], f) != f)
      return "left identity law fails at morphism " + std::to_string(f);
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (mor_dst[f] != mor_src[g]) continue;
      for (int h = 0; h < nm; ++h) {
        if (mor_dst[g] != mor_src[h]) continue;
        if (compose_at(h, compose_at(g, f)) != compose_at(compose_at(h, g), f))
          return "associativity fails at (" + std::to_string(h) + "," +
                 std::to_string(g) + "," + std::to_string(f) + ")";
      }
    }
  return std::nullopt;
}

FiniteCategory discrete_category(int n_obj) {
  FiniteCategory c;
  c.n_obj = n_obj;
  c.mor_src.resize(n_obj);
  c.mor_dst.resize(n_obj);
  c.identity.resize(n_obj);
  for (int o = 0; o < n_obj; ++o) {
    c.mor_src[o] = c.mor_dst[o] = o;
    c.identity[o] = o;
  }
  c.compose.assign(n_obj * n_obj, -1);
  for (int o = 0; o < n_obj; ++o) c.set_compose(o, o, o);
  return c;
}

FiniteCategory codiscrete_category(int n_obj) {
  FiniteCategory c;
  c.n_obj = n_obj;
  const int nm = n_obj * n_obj;  // morphism (a -> b) at index a * n + b
  c.mor_src.resize(nm);
  c.mor_dst.resize(nm);
  for (int a = 0; a < n_obj; ++a)
    for (int b = 0; b < n_obj; ++b) {
      c.mor_src[a * n_obj + b] = a;
      c.mor_dst[a * n_obj + b] = b;
    }
  c.identity.resize(n_obj);
  for (int o = 0; o < n_obj; ++o) c.identity[o] = o * n_obj + o;
  c.compose.assign(nm * nm, -1);
  for (int a = 0; a < n_obj; ++a)
    for (int b = 0; b < n_obj; ++b)
      for (int d = 0; d < n_obj; ++d)
        c.set_compose(b * n_obj + d, a * n_obj + b, a * n_obj + d);
  return c;
}

int FiniteCategoricalGroup::obj_identity() const { return table_identity(obj_table); }
int FiniteCategoricalGroup::mor_identity() const { return table_identity(mor_table); }

std::optional<std::string> FiniteCategoricalGroup::check_axioms() const {
  if (auto w = cat.check_category()) return "category: " + *w;
  std::string witness;
  if (!is_group_table(obj_table, &witness)) return "object group: " + witness;
  if (!is_group_table(mor_table, &witness)) return "morphism group: " + witness;
  const int nm = cat.n_mor();
  for (int m = 0; m < nm; ++m)
    for (int n = 0; n < nm; ++n) {
      const int p = mor_table[m][n];
      if (cat.mor_src[p] != obj_table[cat.mor_src[m]][cat.mor_src[n]])
        return "source map is not a homomorphism at " + pair_str(m, n);
      if (cat.mor_dst[p] != obj_table[cat.mor_dst[m]][cat.mor_dst[n]])
        return "target map is not a homomorphism at " + pair_str(m, n);
    }
  for (int a = 0; a < cat.n_obj; ++a)
    for (int b = 0; b < cat.n_obj; ++b)
      if (cat.identity[obj_table[a][b]] != mor_table[cat.identity[a]][cat.identity[b]])
        return "identity-assigning map is not a homomorphism at " + pair_str(a, b);
  for (int f = 0; f < nm; ++f)
    for (int fp = 0; fp < nm; ++fp) {
      if (cat.mor_dst[fp] != cat.mor_src[f]) continue;
      for (int g = 0; g < nm; ++g)
        for (int gp = 0; gp < nm; ++gp) {
          if (cat.mor_dst[gp] != cat.mor_src[g]) continue;
          const int lhs = cat.compose_at(mor_table[f][g], mor_table[fp][gp]);
          const int rhs = mor_table[cat.compose_at(f, fp)][cat.compose_at(g, gp)];
          if (lhs != rhs)
            return "exchange law fails at ((" + std::to_string(f) + "," +
                   std::to_string(g) + "),(" + std::to_string(fp) + "," +
                   std::to_string(gp) + "))";
        }
    }
  return std::nullopt;
}

FiniteCategoricalGroup discrete_catgroup(const std::vector<std::vector<int>>& table) {
  FiniteCategoricalGroup g;
  g.cat = discrete_category(static_cast<int>(table.size()));
  g.obj_table = table;
  g.mor_table = table;
  return g;
}

FiniteCategoricalGroup codiscrete_catgroup(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  FiniteCategoricalGroup g;
  g.cat = codiscrete_category(n);
  g.obj_table = table;
  g.mor_table.assign(n * n, std::vector<int>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          g.mor_table[a * n + b][c * n + d] = table[a][c] * n + table[b][d];
  return g;
}

FiniteCategoricalGroup build_cg2(const FiniteGroupModel& hatK,
                                 const std::vector<int>& Z) {
  const auto& t = hatK.table();
  const int n = hatK.order();
  std::set<int> zset(Z.begin(), Z.end());
  if (!zset.count(hatK.identity_index()))
    throw StructureError("Z does not contain the identity");
  for (int z : Z) {
    if (!zset.count(hatK.inverse_index(z)))
      throw StructureError("Z is not closed under inverses at " + std::to_string(z));
    for (int w : Z)
      if (!zset.count(t[z][w]))
        throw StructureError("Z is not closed under products at " + pair_str(z, w));
  }
  for (int z : Z)
    for (int k = 0; k < n; ++k)
      if (t[z][k] != t[k][z])
        throw StructureError("subgroup is not central: z=" + std::to_string(z) +
                             " and k=" + std::to_string(k) + " do not commute");

  // cosets aZ with the minimal element as representative
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    int rep = a;
    for (int z : Z) rep = std::min(rep, t[a][z]);
    for (int z : Z) coset_of[t[a][z]] = id;
    reps.push_back(rep);
  }
  const int n_obj = static_cast<int>(reps.size());

  // morphism orbits of pairs (a, b) under (az, bz)
  std::vector<int> orbit_of(n * n, -1);
  std::vector<std::pair<int, int>> orbit_rep;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (orbit_of[a * n + b] >= 0) continue;
      const int id = static_cast<int>(orbit_rep.size());
      std::pair<int, int> rep{a, b};
      for (int z : Z) {
        const int az = t[a][z], bz = t[b][z];
        orbit_of[az * n + bz] = id;
        rep = std::min(rep, {az, bz});
      }
      orbit_rep.push_back(rep);
    }
  const int nm = static_cast<int>(orbit_rep.size());

  FiniteCategoricalGroup g;
  g.cat.n_obj = n_obj;
  g.cat.mor_src.resize(nm);
  g.cat.mor_dst.resize(nm);
  for (int m = 0; m < nm; ++m) {
    g.cat.mor_src[m] = coset_of[orbit_rep[m].first];
    g.cat.mor_dst[m] = coset_of[orbit_rep[m].second];
  }
  g.cat.identity.resize(n_obj);
  for (int o = 0; o < n_obj; ++o) g.cat.identity[o] = orbit_of[reps[o] * n + reps[o]];
  g.cat.compose.assign(nm * nm, -1);
  for (int f = 0; f < nm; ++f) {
    const auto [a, b] = orbit_rep[f];
    for (int h = 0; h < nm; ++h) {
      auto [b2, c] = orbit_rep[h];
      if (coset_of[b2] != coset_of[b]) continue;
      // align the representative of h so its source element matches b
      int zalign = -1;
      for (int z : Z)
        if (t[b2][z] == b) zalign = z;
      g.cat.set_compose(h, f, orbit_of[a * n + t[c][zalign]]);
    }
  }
  g.obj_table.assign(n_obj, std::vector<int>(n_obj));
  for (int A = 0; A < n_obj; ++A)
    for (int B = 0; B < n_obj; ++B) g.obj_table[A][B] = coset_of[t[reps[A]][reps[B]]];
  g.mor_table.assign(nm, std::vector<int>(nm));
  for (int m1 = 0; m1 < nm; ++m1)
    for (int m2 = 0; m2 < nm; ++m2) {
      const auto [a, b] = orbit_rep[m1];
      const auto [c, d] = orbit_rep[m2];
      g.mor_table[m1][m2] = orbit_of[t[a][c] * n + t[b][d]];
    }
  return g;
}

// ---------------------------------------------------------------------------
// quotient bundles

FiniteBundle quotient_bundle(const FiniteCategory& total,
                             const FiniteCategoricalGroup& group,
                             const CatAction& action) {
  const int nz_obj = static_cast<int>(group.obj_table.size());
  const int nz_mor = static_cast<int>(group.mor_table.size());
  const int ze = group.obj_identity();
  const int zem = group.mor_identity();
  if (static_cast<int>(action.obj.size()) != total.n_obj ||
      static_cast<int>(action.mor.size()) != total.n_mor())
    throw StructureError("action tables have the wrong shape");
  for (int p = 0; p < total.n_obj; ++p)
    for (int z = 0; z < nz_obj; ++z)
      if (z != ze && action.obj[p][z] == p)
        throw StructureError("action is not free on objects: object " +
                             std::to_string(p) + " fixed by " + std::to_string(z));
  for (int m = 0; m < total.n_mor(); ++m)
    for (int z = 0; z < nz_mor; ++z)
      if (z != zem && action.mor[m][z] == m)
        throw StructureError("action is not free on morphisms: morphism " +
                             std::to_string(m) + " fixed by " + std::to_string(z));

  FiniteBundle b;
  b.total = total;
  b.group = group;
  b.action = action;

  b.proj_obj.assign(total.n_obj, -1);
  int n_base_obj = 0;
  for (int p = 0; p < total.n_obj; ++p) {
    if (b.proj_obj[p] >= 0) continue;
    for (int z = 0; z < nz_obj; ++z) b.proj_obj[action.obj[p][z]] = n_base_obj;
    ++n_base_obj;
  }
  b.proj_mor.assign(total.n_mor(), -1);
  std::vector<int> orbit_rep;
  for (int m = 0; m < total.n_mor(); ++m) {
    if (b.proj_mor[m] >= 0) continue;
    const int id = static_cast<int>(orbit_rep.size());
    for (int z = 0; z < nz_mor; ++z) b.proj_mor[action.mor[m][z]] = id;
    orbit_rep.push_back(m);
  }
  const int nbm = static_cast<int>(orbit_rep.size());

  b.base.n_obj = n_base_obj;
  b.base.mor_src.resize(nbm);
  b.base.mor_dst.resize(nbm);
  for (int m = 0; m < nbm; ++m) {
    b.base.mor_src[m] = b.proj_obj[total.mor_src[orbit_rep[m]]];
    b.base.mor_dst[m] = b.proj_obj[total.mor_dst[orbit_rep[m]]];
  }
  b.base.identity.assign(n_base_obj, -1);
  for (int p = 0; p < total.n_obj; ++p)
    b.base.identity[b.proj_obj[p]] = b.proj_mor[total.identity[p]];
  b.base.compose.assign(nbm * nbm, -1);
  for (int f = 0; f < nbm; ++f) {
    const int frep = orbit_rep[f];
    for (int h = 0; h < nbm; ++h) {
      if (b.base.mor_src[h] != b.base.mor_dst[f]) continue;
      // translate a representative of h so it composes with frep
      const int hrep = orbit_rep[h];
      int aligned = -1;
      for (int z = 0; z < nz_obj && aligned < 0; ++z)
        if (action.obj[total.mor_src[hrep]][z] == total.mor_dst[frep])
          aligned = action.mor[hrep][group.cat.identity[z]];
      if (aligned < 0) continue;
      const int comp = total.compose_at(aligned, frep);
      if (comp >= 0) b.base.set_compose(h, f, b.proj_mor[comp]);
    }
  }
  return b;
}

std::optional<std::string> check_principal_axioms(const FiniteBundle& b) {
  if (auto w = b.total.check_category()) return "total category: " + *w;
  if (auto w = b.base.check_category()) return "base category: " + *w;
  if (auto w = b.group.check_axioms()) return "structure group: " + *w;
  const int nz_obj = static_cast<int>(b.group.obj_table.size());
  const int nz_mor = static_cast<int>(b.group.mor_table.size());
  const int ze = b.group.obj_identity();
  const int zem = b.group.mor_identity();

  // right action laws
  for (int p = 0; p < b.total.n_obj; ++p) {
    if (b.action.obj[p][ze] != p) return "object action does not fix the identity";
    for (int z1 = 0; z1 < nz_obj; ++z1)
      for (int z2 = 0; z2 < nz_obj; ++z2)
        if (b.action.obj[b.action.obj[p][z1]][z2] !=
            b.action.obj[p][b.group.obj_table[z1][z2]])
          return "object action law fails at p=" + std::to_string(p);
  }
  for (int m = 0; m < b.total.n_mor(); ++m) {
    if (b.action.mor[m][zem] != m) return "morphism action does not fix the identity";
    for (int z1 = 0; z1 < nz_mor; ++z1)
      for (int z2 = 0; z2 < nz_mor; ++z2)
        if (b.action.mor[b.action.mor[m][z1]][z2] !=
            b.action.mor[m][b.group.mor_table[z1][z2]])
          return "morphism action law fails at m=" + std::to_string(m);
  }
  // functoriality of the action
  for (int m = 0; m < b.total.n_mor(); ++m)
    for (int z = 0; z < nz_mor; ++z) {
      const int mz = b.action.mor[m][z];
      if (b.total.mor_src[mz] !=
          b.action.obj[b.total.mor_src[m]][b.group.cat.mor_src[z]])
        return "action source law fails at " + pair_str(m, z);
      if (b.total.mor_dst[mz] !=
          b.action.obj[b.total.mor_dst[m]][b.group.cat.mor_dst[z]])
        return "action target law fails at " + pair_str(m, z);
    }
  for (int p = 0; p < b.total.n_obj; ++p)
    for (int z = 0; z < nz_obj; ++z)
      if (b.action.mor[b.total.identity[p]][b.group.cat.identity[z]] !=
          b.total.identity[b.action.obj[p][z]])
        return "action does not preserve identities at " + pair_str(p, z);
  for (int f = 0; f < b.total.n_mor(); ++f)
    for (int h = 0; h < b.total.n_mor(); ++h) {
      if (b.total.mor_dst[f] != b.total.mor_src[h]) continue;
      for (int zf = 0; zf < nz_mor; ++zf)
        for (int zh = 0; zh < nz_mor; ++zh) {
          if (b.group.cat.mor_dst[zf] != b.group.cat.mor_src[zh]) continue;
          const int lhs = b.total.compose_at(b.action.mor[h][zh], b.action.mor[f][zf]);
          const int rhs = b.action.mor[b.total.compose_at(h, f)]
                                      [b.group.cat.compose_at(zh, zf)];
          if (lhs != rhs) return "action does not respect composition";
        }
    }
  // projection is a functor
  for (int m = 0; m < b.total.n_mor(); ++m) {
    if (b.base.mor_src[b.proj_mor[m]] != b.proj_obj[b.total.mor_src[m]])
      return "projection source mismatch at morphism " + std::to_string(m);
    if (b.base.mor_dst[b.proj_mor[m]] != b.proj_obj[b.total.mor_dst[m]])
      return "projection target mismatch at morphism " + std::to_string(m);
  }
  for (int p = 0; p < b.total.n_obj; ++p)
    if (b.proj_mor[b.total.identity[p]] != b.base.identity[b.proj_obj[p]])
      return "projection identity mismatch at object " + std::to_string(p);
  for (int f = 0; f < b.total.n_mor(); ++f)
    for (int h = 0; h < b.total.n_mor(); ++h) {
      if (b.total.mor_dst[f] != b.total.mor_src[h]) continue;
      if (b.base.compose_at(b.proj_mor[h], b.proj_mor[f]) !=
          b.proj_mor[b.total.compose_at(h, f)])
        return "projection does not respect composition at " + pair_str(h, f);
    }
  // surjectivity
  {
    std::set<int> seen(b.proj_obj.begin(), b.proj_obj.end());
    if (static_cast<int>(seen.size()) != b.base.n_obj)
      return "projection is not surjective on objects";
    std::set<int> seen_m(b.proj_mor.begin(), b.proj_mor.end());
    if (static_cast<int>(seen_m.size()) != b.base.n_mor())
      return "projection is not surjective on morphisms";
  }
  // freeness
  for (int p = 0; p < b.total.n_obj; ++p)
    for (int z = 0; z < nz_obj; ++z)
      if (z != ze && b.action.obj[p][z] == p)
        return "action is not free on objects: object " + std::to_string(p) +
               " fixed by " + std::to_string(z);
  for (int m = 0; m < b.total.n_mor(); ++m)
    for (int z = 0; z < nz_mor; ++z)
      if (z != zem && b.action.mor[m][z] == m)
        return "action is not free on morphisms: morphism " + std::to_string(m) +
               " fixed by " + std::to_string(z);
  // fiber transitivity
  for (int p = 0; p < b.total.n_obj; ++p)
    for (int q = 0; q < b.total.n_obj; ++q) {
      if (b.proj_obj[p] != b.proj_obj[q]) continue;
      bool reached = false;
      for (int z = 0; z < nz_obj && !reached; ++z) reached = b.action.obj[p][z] == q;
      if (!reached)
        return "object fiber over " + std::to_string(b.proj_obj[p]) +
               " is not transitive: cannot reach " + std::to_string(q) + " from " +
               std::to_string(p);
    }
  for (int m = 0; m < b.total.n_mor(); ++m)
    for (int k = 0; k < b.total.n_mor(); ++k) {
      if (b.proj_mor[m] != b.proj_mor[k]) continue;
      bool reached = false;
      for (int z = 0; z < nz_mor && !reached; ++z) reached = b.action.mor[m][z] == k;
      if (!reached)
        return "morphism fiber over " + std::to_string(b.proj_mor[m]) +
               " is not transitive: cannot reach " + std::to_string(k) + " from " +
               std::to_string(m);
    }
  return std::nullopt;
}

std::optional<std::string> check_reduction(const ReductionData& red) {
  const FiniteBundle& s = *red.sub;
  const FiniteBundle& f = *red.full;
  // beta is a functor and a homomorphism on objects and morphisms
  for (int a = 0; a < static_cast<int>(s.group.obj_table.size()); ++a)
    for (int c = 0; c < static_cast<int>(s.group.obj_table.size()); ++c)
      if (red.beta_obj[s.group.obj_table[a][c]] !=
          f.group.obj_table[red.beta_obj[a]][red.beta_obj[c]])
        return "beta is not a homomorphism on objects at " + pair_str(a, c);
  for (int a = 0; a < static_cast<int>(s.group.mor_table.size()); ++a)
    for (int c = 0; c < static_cast<int>(s.group.mor_table.size()); ++c)
      if (red.beta_mor[s.group.mor_table[a][c]] !=
          f.group.mor_table[red.beta_mor[a]][red.beta_mor[c]])
        return "beta is not a homomorphism on morphisms at " + pair_str(a, c);
  // f is a functor
  for (int m = 0; m < s.total.n_mor(); ++m) {
    if (f.total.mor_src[red.f_mor[m]] != red.f_obj[s.total.mor_src[m]] ||
        f.total.mor_dst[red.f_mor[m]] != red.f_obj[s.total.mor_dst[m]])
      return "f endpoint mismatch at morphism " + std::to_string(m);
  }
  for (int fm = 0; fm < s.total.n_mor(); ++fm)
    for (int hm = 0; hm < s.total.n_mor(); ++hm) {
      if (s.total.mor_dst[fm] != s.total.mor_src[hm]) continue;
      if (red.f_mor[s.total.compose_at(hm, fm)] !=
          f.total.compose_at(red.f_mor[hm], red.f_mor[fm]))
        return "f does not respect composition at " + pair_str(hm, fm);
    }
  // fiber preservation
  for (int p = 0; p < s.total.n_obj; ++p)
    if (f.proj_obj[red.f_obj[p]] != s.proj_obj[p])
      return "f moves object " + std::to_string(p) + " across fibers";
  for (int m = 0; m < s.total.n_mor(); ++m)
    if (f.proj_mor[red.f_mor[m]] != s.proj_mor[m])
      return "f moves morphism " + std::to_string(m) + " across fibers";
  // equivariance
  for (int p = 0; p < s.total.n_obj; ++p)
    for (int z = 0; z < static_cast<int>(s.group.obj_table.size()); ++z)
      if (red.f_obj[s.action.obj[p][z]] !=
          f.action.obj[red.f_obj[p]][red.beta_obj[z]])
        return "object equivariance fails at " + pair_str(p, z);
  for (int m = 0; m < s.total.n_mor(); ++m)
    for (int z = 0; z < static_cast<int>(s.group.mor_table.size()); ++z)
      if (red.f_mor[s.action.mor[m][z]] !=
          f.action.mor[red.f_mor[m]][red.beta_mor[z]])
        return "morphism equivariance fails at " + pair_str(m, z);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// worked examples

FiniteBundle example_p1_bundle(const std::vector<std::vector<int>>& g_table, int n_base) {
  const int ng = static_cast<int>(g_table.size());
  FiniteCategory total = discrete_category(n_base * ng);
  FiniteCategoricalGroup z = discrete_catgroup(g_table);
  CatAction action;
  action.obj.assign(n_base * ng, std::vector<int>(ng));
  for (int bidx = 0; bidx < n_base; ++bidx)
    for (int i = 0; i < ng; ++i)
      for (int g = 0; g < ng; ++g)
        action.obj[bidx * ng + i][g] = bidx * ng + g_table[i][g];
  action.mor = action.obj;  // morphisms are the identities
  return quotient_bundle(total, z, action);
}

FiniteBundle example_p2_bundle(const std::vector<std::vector<int>>& g_table, int n_base) {
  const int ng = static_cast<int>(g_table.size());
  const int np = n_base * ng;
  FiniteCategory total = codiscrete_category(np);
  FiniteCategoricalGroup z = codiscrete_catgroup(g_table);
  auto act_obj = [&](int p, int g) {
    return (p / ng) * ng + g_table[p % ng][g];
  };
  CatAction action;
  action.obj.assign(np, std::vector<int>(ng));
  for (int p = 0; p < np; ++p)
    for (int g = 0; g < ng; ++g) action.obj[p][g] = act_obj(p, g);
  action.mor.assign(np * np, std::vector<int>(ng * ng));
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < np; ++q)
      for (int g1 = 0; g1 < ng; ++g1)
        for (int g2 = 0; g2 < ng; ++g2)
          action.mor[p * np + q][g1 * ng + g2] = act_obj(p, g1) * np + act_obj(q, g2);
  return quotient_bundle(total, z, action);
}

FiniteBundle cg2_quotient_bundle(const FiniteGroupModel& hatK, const std::vector<int>& Z) {
  const auto& t = hatK.table();
  const int n = hatK.order();
  const int nz = static_cast<int>(Z.size());
  std::vector<std::vector<int>> ztable(nz, std::vector<int>(nz, -1));
  auto z_index = [&](int elem) {
    for (int i = 0; i < nz; ++i)
      if (Z[i] == elem) return i;
    return -1;
  };
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nz; ++j) {
      ztable[i][j] = z_index(t[Z[i]][Z[j]]);
      if (ztable[i][j] < 0)
        throw StructureError("Z is not closed under products at " +
                             pair_str(Z[i], Z[j]));
    }
  FiniteCategory total = codiscrete_category(n);
  FiniteCategoricalGroup z = discrete_catgroup(ztable);
  CatAction action;
  action.obj.assign(n, std::vector<int>(nz));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < nz; ++i) action.obj[k][i] = t[k][Z[i]];
  action.mor.assign(n * n, std::vector<int>(nz));
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int i = 0; i < nz; ++i)
        action.mor[a * n + bb][i] = t[a][Z[i]] * n + t[bb][Z[i]];
  return quotient_bundle(total, z, action);
}

FiniteBundle broken_fiber_bundle(const std::vector<std::vector<int>>& g_table) {
  const int ng = static_cast<int>(g_table.size());
  FiniteBundle b;
  b.total = discrete_category(2 * ng);
  b.group = discrete_catgroup(g_table);
  b.action.obj.assign(2 * ng, std::vector<int>(ng));
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < ng; ++i)
      for (int g = 0; g < ng; ++g) b.action.obj[c * ng + i][g] = c * ng + g_table[i][g];
  b.action.mor = b.action.obj;
  b.base = discrete_category(1);
  b.proj_obj.assign(2 * ng, 0);  // both sheets claim the same base point
  b.proj_mor.assign(2 * ng, 0);
  return b;
}

FiniteBundle catgroup_over_point(const FiniteCategoricalGroup& g) {
  FiniteBundle b;
  b.total = g.cat;
  b.group = g;
  const int no = static_cast<int>(g.obj_table.size());
  const int nm = static_cast<int>(g.mor_table.size());
  b.action.obj.assign(no, std::vector<int>(no));
  for (int p = 0; p < no; ++p)
    for (int z = 0; z < no; ++z) b.action.obj[p][z] = g.obj_table[p][z];
  b.action.mor.assign(nm, std::vector<int>(nm));
  for (int m = 0; m < nm; ++m)
    for (int z = 0; z < nm; ++z) b.action.mor[m][z] = g.mor_table[m][z];
  b.base = discrete_category(1);
  b.proj_obj.assign(no, 0);
  b.proj_mor.assign(nm, 0);
  return b;
}

FiniteCategoricalGroup catgroup_from_crossed_module(const CrossedModule& cm) {
  const auto& G = static_cast<const FiniteGroupModel&>(*cm.G);
  const auto& H = static_cast<const FiniteGroupModel&>(*cm.H);
  const int ng = G.order(), nh = H.order();
  const int nm = nh * ng;  // morphism (h, a) at index h * ng + a
  FiniteCategoricalGroup k;
  k.cat.n_obj = ng;
  k.cat.mor_src.resize(nm);
  k.cat.mor_dst.resize(nm);
  auto tau_idx = [&](int h) { return cm.tau(H.element(h)).index(); };
  auto alpha_idx = [&](int a, int h) {
    return cm.alpha(G.element(a), H.element(h)).index();
  };
  for (int h = 0; h < nh; ++h)
    for (int a = 0; a < ng; ++a) {
      k.cat.mor_src[h * ng + a] = a;
      k.cat.mor_dst[h * ng + a] = G.multiply_index(tau_idx(h), a);
    }
  k.cat.identity.resize(ng);
  for (int a = 0; a < ng; ++a) k.cat.identity[a] = H.identity_index() * ng + a;
  k.cat.compose.assign(nm * nm, -1);
  for (int h1 = 0; h1 < nh; ++h1)
    for (int a = 0; a < ng; ++a) {
      const int f = h1 * ng + a;
      const int b = k.cat.mor_dst[f];
      for (int h2 = 0; h2 < nh; ++h2)
        k.cat.set_compose(h2 * ng + b, f, H.multiply_index(h2, h1) * ng + a);
    }
  k.obj_table.assign(ng, std::vector<int>(ng));
  for (int a = 0; a < ng; ++a)
    for (int c = 0; c < ng; ++c) k.obj_table[a][c] = G.multiply_index(a, c);
  k.mor_table.assign(nm, std::vector<int>(nm));
  for (int h = 0; h < nh; ++h)
    for (int a = 0; a < ng; ++a)
      for (int kk = 0; kk < nh; ++kk)
        for (int c = 0; c < ng; ++c)
          k.mor_table[h * ng + a][kk * ng + c] =
              H.multiply_index(h, alpha_idx(a, kk)) * ng + G.multiply_index(a, c);
  return k;
}

std::optional<std::string> check_catgrp_roundtrip(const CrossedModule& cm) {
  FiniteCategoricalGroup k1 = catgroup_from_crossed_module(cm);
  if (auto w = k1.check_axioms()) return "constructed categorical group: " + *w;

  // extract the crossed module back: H' = ker s, tau = t, alpha = 1_g . 1_{g^-1}
  const int ng = k1.cat.n_obj;
  const int nm = k1.cat.n_mor();
  const int e_obj = k1.obj_identity();
  std::vector<int> ker_s;
  std::vector<int> ker_index(nm, -1);
  for (int m = 0; m < nm; ++m)
    if (k1.cat.mor_src[m] == e_obj) {
      ker_index[m] = static_cast<int>(ker_s.size());
      ker_s.push_back(m);
    }
  const int nh = static_cast<int>(ker_s.size());
  auto obj_inv = [&](int a) { return table_inverse(k1.obj_table, a); };
  auto alpha2 = [&](int g, int theta) {
    const int lg = k1.mor_table[k1.cat.identity[g]][theta];
    return k1.mor_table[lg][k1.cat.identity[obj_inv(g)]];
  };
  // rebuilt categorical group K2: morphisms are pairs (theta, a)
  FiniteCategoricalGroup k2;
  k2.cat.n_obj = ng;
  const int nm2 = nh * ng;
  k2.cat.mor_src.resize(nm2);
  k2.cat.mor_dst.resize(nm2);
  for (int th = 0; th < nh; ++th)
    for (int a = 0; a < ng; ++a) {
      k2.cat.mor_src[th * ng + a] = a;
      k2.cat.mor_dst[th * ng + a] = k1.obj_table[k1.cat.mor_dst[ker_s[th]]][a];
    }
  int theta_e = -1;
  for (int th = 0; th < nh; ++th)
    if (ker_s[th] == k1.mor_identity()) theta_e = th;
  if (theta_e < 0) return "kernel of s does not contain the identity morphism";
  k2.cat.identity.resize(ng);
  for (int a = 0; a < ng; ++a) k2.cat.identity[a] = theta_e * ng + a;
  auto hprod = [&](int t1, int t2) {
    const int m = k1.mor_table[ker_s[t1]][ker_s[t2]];
    return ker_index[m];
  };
  k2.cat.compose.assign(nm2 * nm2, -1);
  for (int t1 = 0; t1 < nh; ++t1)
    for (int a = 0; a < ng; ++a) {
      const int f = t1 * ng + a;
      const int bb = k2.cat.mor_dst[f];
      for (int t2 = 0; t2 < nh; ++t2)
        k2.cat.set_compose(t2 * ng + bb, f, hprod(t2, t1) * ng + a);
    }
  k2.obj_table = k1.obj_table;
  k2.mor_table.assign(nm2, std::vector<int>(nm2));
  for (int t1 = 0; t1 < nh; ++t1)
    for (int a = 0; a < ng; ++a)
      for (int t2 = 0; t2 < nh; ++t2)
        for (int c = 0; c < ng; ++c) {
          const int twisted = ker_index[alpha2(a, ker_s[t2])];
          if (twisted < 0) return "alpha does not preserve ker s";
          k2.mor_table[t1 * ng + a][t2 * ng + c] =
              hprod(t1, twisted) * ng + k1.obj_table[a][c];
        }
  if (auto w = k2.check_axioms()) return "round-trip categorical group: " + *w;

  // isomorphism K1 -> K2: objects fixed, morphism m -> (m 1_{s(m)^-1}, s(m))
  std::vector<int> iso(nm, -1);
  std::vector<bool> hit(nm2, false);
  for (int m = 0; m < nm; ++m) {
    const int a = k1.cat.mor_src[m];
    const int theta = k1.mor_table[m][k1.cat.identity[obj_inv(a)]];
    if (ker_index[theta] < 0) return "morphism does not normalize into ker s";
    iso[m] = ker_index[theta] * ng + a;
    if (hit[iso[m]]) return "round-trip map is not injective";
    hit[iso[m]] = true;
  }
  if (nm != nm2) return "round-trip morphism counts differ";
  for (int m = 0; m < nm; ++m) {
    if (k2.cat.mor_src[iso[m]] != k1.cat.mor_src[m] ||
        k2.cat.mor_dst[iso[m]] != k1.cat.mor_dst[m])
      return "round-trip map moves endpoints at morphism " + std::to_string(m);
  }
  for (int m = 0; m < nm; ++m)
    for (int n = 0; n < nm; ++n) {
      if (iso[k1.mor_table[m][n]] != k2.mor_table[iso[m]][iso[n]])
        return "round-trip map is not a morphism-group isomorphism at " + pair_str(m, n);
      const int c1 = k1.cat.compose_at(m, n);
      const int c2 = k2.cat.compose_at(iso[m], iso[n]);
      if ((c1 < 0) != (c2 < 0)) return "round-trip composability differs at " + pair_str(m, n);
      if (c1 >= 0 && iso[c1] != c2)
        return "round-trip map does not respect composition at " + pair_str(m, n);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// decorated reduction fixture

ReductionData decorated_reduction_fixture(const CrossedModule& cm) {
  const auto& G = static_cast<const FiniteGroupModel&>(*cm.G);
  FiniteCategoricalGroup gd = discrete_catgroup(G.table());
  FiniteCategoricalGroup kk = catgroup_from_crossed_module(cm);
  const auto& H = static_cast<const FiniteGroupModel&>(*cm.H);
  const int ng = G.order();
  ReductionData red;
  red.sub = std::make_shared<FiniteBundle>(catgroup_over_point(gd));
  red.full = std::make_shared<FiniteBundle>(catgroup_over_point(kk));
  red.f_obj.resize(ng);
  red.f_mor.resize(ng);
  red.beta_obj.resize(ng);
  red.beta_mor.resize(ng);
  for (int a = 0; a < ng; ++a) {
    red.f_obj[a] = a;
    red.f_mor[a] = H.identity_index() * ng + a;  // 1_a -> (e_H, a)
    red.beta_obj[a] = a;
    red.beta_mor[a] = H.identity_index() * ng + a;
  }
  return red;
}

// ---------------------------------------------------------------------------
// freely reduced words

Word word_reduce(const Word& w) {
  Word out;
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word joined = a;
  joined.insert(joined.end(), b.begin(), b.end());
  return word_reduce(joined);
}

Word word_inverse(const Word& a) {
  Word out(a.rbegin(), a.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

std::optional<std::string> check_word_group(int alphabet, int max_len) {
  std::vector<Word> words{{}};
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int a = 1; a <= alphabet; ++a)
        for (int s : {a, -a}) {
          if (!w.empty() && w.back() == -s) continue;  // keep words reduced
          Word ext = w;
          ext.push_back(s);
          next.push_back(ext);
        }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const Word& w : words) {
    if (!word_concat(w, word_inverse(w)).empty())
      return "w w^-1 does not reduce to the empty word";
    if (word_concat(w, Word{}) != w || word_concat(Word{}, w) != w)
      return "identity law fails";
  }
  for (const Word& a : words)
    for (const Word& b : words)
      for (const Word& c : words)
        if (word_concat(word_concat(a, b), c) != word_concat(a, word_concat(b, c)))
          return "associativity fails";
  return std::nullopt;
}

}  // namespace finite
}  // namespace catransport
