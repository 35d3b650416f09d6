#include "possdom/recognize.hpp"

#include <algorithm>
#include <numeric>

#include "possdom/errors.hpp"

namespace possdom {

SyntacticFlags check_syntactic_class(const Formula& f) {
  SyntacticFlags s;
  for (const auto& c : f.clauses()) {
    if (c.kind != ClauseKind::Xor) s.affine = false;
    if (c.kind != ClauseKind::Or) {
      s.horn = s.dual_horn = s.bijunctive = false;
      continue;
    }
    std::size_t pos = 0;
    for (const auto& l : c.or_literals) pos += l.positive;
    if (pos > 1) s.horn = false;
    if (c.or_literals.size() - pos > 1) s.dual_horn = false;
    if (c.or_literals.size() > 2) s.bijunctive = false;
  }
  return s;
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

// Connects consecutive variables of every clause.
UnionFind clause_components(const Formula& f) {
  UnionFind uf(static_cast<std::size_t>(f.num_vars()) + 1);
  for (const auto& c : f.clauses()) {
    const auto vs = c.variables();
    for (std::size_t i = 1; i < vs.size(); ++i)
      uf.unite(static_cast<std::size_t>(vs[i - 1]), static_cast<std::size_t>(vs[i]));
  }
  return uf;
}

VarSet all_vars(int n) {
  VarSet v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<char> membership(const VarSet& s, int n) {
  std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
  for (int v : s) {
    if (v < 1 || v > n) throw InputError("variable " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    in[static_cast<std::size_t>(v)] = 1;
  }
  return in;
}

}  // namespace

std::optional<SeparabilityWitness> check_separable(const Formula& f) {
  const VarSet occ = f.occurring_variables();
  if (occ.size() < 2) throw InputError("separability needs at least two occurring variables");
  UnionFind uf = clause_components(f);
  const std::size_t root = uf.find(static_cast<std::size_t>(occ.front()));
  SeparabilityWitness w;
  for (int v : occ) (uf.find(static_cast<std::size_t>(v)) == root ? w.part1 : w.part2).push_back(v);
  if (w.part2.empty()) return std::nullopt;
  return w;
}

bool verify_partially_horn(const Formula& f, const VarSet& v0) {
  if (v0.empty()) throw InputError("partially Horn check needs a non-empty V0");
  const auto in = membership(v0, f.num_vars());
  for (const auto& c : f.clauses()) {
    bool inside = c.kind == ClauseKind::Or;
    for (int v : c.variables()) inside = inside && in[static_cast<std::size_t>(v)];
    if (inside) {
      std::size_t pos = 0;
      for (const auto& l : c.or_literals) pos += l.positive;
      if (pos > 1) return false;
      continue;
    }
    for (const auto& l : c.or_literals)
      if (l.positive && in[static_cast<std::size_t>(l.var)]) return false;
    for (const auto& l : c.xor_literals)
      if (in[static_cast<std::size_t>(l.var)]) return false;
  }
  return true;
}

std::optional<VarSet> check_partially_horn(const Formula& f) {
  const int n = f.num_vars();
  const auto& cls = f.clauses();
  std::vector<std::vector<std::size_t>> occurs(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (int v : cls[i].variables()) occurs[static_cast<std::size_t>(v)].push_back(i);

  std::vector<char> excluded(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> clause_done(cls.size(), 0);
  std::vector<int> work;
  auto exclude = [&](int v) {
    if (!excluded[static_cast<std::size_t>(v)]) {
      excluded[static_cast<std::size_t>(v)] = 1;
      work.push_back(v);
    }
  };
  // Once a clause reaches outside the admissible set, its positive
  // variables cannot be admissible either.
  auto close_clause = [&](std::size_t i) {
    if (clause_done[i]) return;
    clause_done[i] = 1;
    for (const auto& l : cls[i].or_literals)
      if (l.positive) exclude(l.var);
    for (const auto& l : cls[i].xor_literals) exclude(l.var);
  };
  for (std::size_t i = 0; i < cls.size(); ++i) {
    std::size_t pos = 0;
    for (const auto& l : cls[i].or_literals) pos += l.positive;
    if (pos > 1 || cls[i].kind != ClauseKind::Or) close_clause(i);
  }
  while (!work.empty()) {
    const int v = work.back();
    work.pop_back();
    for (auto i : occurs[static_cast<std::size_t>(v)]) close_clause(i);
  }
  VarSet v0;
  for (int v = 1; v <= n; ++v)
    if (!excluded[static_cast<std::size_t>(v)]) v0.push_back(v);
  if (v0.empty()) return std::nullopt;
  if (!verify_partially_horn(f, v0)) throw VerificationFailure("check_partially_horn produced an inadmissible set");
  return v0;
}

namespace {

// Vertex 2(v-1) stands for x_v (in V0, renamed), 2(v-1)+1 for x_v' (in V0,
// kept as written).
inline std::uint32_t plain(int v) { return static_cast<std::uint32_t>(2 * (v - 1)); }
inline std::uint32_t primed(int v) { return plain(v) + 1; }
inline std::uint32_t mate(std::uint32_t x) { return x ^ 1u; }

struct Graph {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> target;
};

Graph build_implication_graph(const Formula& f) {
  const std::size_t verts = 2 * static_cast<std::size_t>(f.num_vars());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::pair<int, bool>> lits;
  for (const auto& c : f.clauses()) {
    lits.clear();
    for (const auto& l : c.or_literals) lits.emplace_back(l.var, l.positive);
    for (const auto& l : c.xor_literals) lits.emplace_back(l.var, l.positive);
    for (const auto& [u, upos] : lits)
      for (const auto& [v, vpos] : lits) {
        if (u == v) continue;
        edges.emplace_back(upos ? primed(u) : plain(u), vpos ? plain(v) : primed(v));
      }
    // Parity variables can never be admissible: put x and x' in one component.
    for (const auto& l : c.xor_literals) {
      edges.emplace_back(plain(l.var), primed(l.var));
      edges.emplace_back(primed(l.var), plain(l.var));
    }
  }

  // Every edge a -> b must come with b' -> a'.
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  auto mirrored = edges;
  for (auto& [a, b] : mirrored) std::tie(a, b) = std::pair{mate(b), mate(a)};
  std::sort(mirrored.begin(), mirrored.end());
  if (sorted != mirrored) throw VerificationFailure("implication graph is not closed under mirroring");

  Graph g;
  g.offset.assign(verts + 1, 0);
  for (const auto& e : sorted) ++g.offset[e.first + 1];
  for (std::size_t i = 0; i < verts; ++i) g.offset[i + 1] += g.offset[i];
  g.target.reserve(sorted.size());
  for (const auto& e : sorted) g.target.push_back(e.second);
  return g;
}

// Iterative Tarjan. Components are numbered in the order they are completed,
// which is a reverse topological order of the condensation.
std::vector<std::uint32_t> tarjan(const Graph& g) {
  const std::uint32_t nv = static_cast<std::uint32_t>(g.offset.size() - 1);
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> index(nv, kUnset), low(nv, 0), comp(nv, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<char> on_stack(nv, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> call;  // (vertex, next edge)
  std::uint32_t counter = 0, comps = 0;

  for (std::uint32_t root = 0; root < nv; ++root) {
    if (index[root] != kUnset) continue;
    call.emplace_back(root, g.offset[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < g.offset[v + 1]) {
        const std::uint32_t w = g.target[e++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, g.offset[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return comp;
}

}  // namespace

std::optional<RphWitness> check_renamable_partially_horn(const Formula& f) {
  const int n = f.num_vars();
  const Graph g = build_implication_graph(f);
  const auto comp = tarjan(g);
  RphWitness w;
  for (int v = 1; v <= n; ++v) {
    const auto cx = comp[plain(v)], cp = comp[primed(v)];
    if (cx == cp) continue;  // bad: x and x' share a component
    w.admissible.push_back(v);
    // Components finished first are sinks; they receive value 1 first.
    if (cx < cp) w.renamed.push_back(v);
  }
  if (w.admissible.empty()) return std::nullopt;
  // Keep the formula as written when that already works for the same V0.
  if (!w.renamed.empty() && verify_partially_horn(f, w.admissible)) w.renamed.clear();
  if (!verify_partially_horn(rename(f, w.renamed), w.admissible))
    throw VerificationFailure("renamable partially Horn witness failed verification");
  return w;
}

std::optional<VarSet> check_renamable_horn(const Formula& f) {
  for (const auto& c : f.clauses())
    if (c.kind != ClauseKind::Or) return std::nullopt;
  auto w = check_renamable_partially_horn(f);
  if (!w) return std::nullopt;
  for (int v : f.occurring_variables())
    if (!std::binary_search(w->admissible.begin(), w->admissible.end(), v)) return std::nullopt;
  if (!check_syntactic_class(rename(f, w->renamed)).horn)
    throw VerificationFailure("Horn renaming failed verification");
  return w->renamed;
}

PicReport check_pic(const Formula& f) {
  PicReport r;
  if (f.occurring_variables().size() >= 2) r.separable = check_separable(f);
  r.affine = check_syntactic_class(f).affine;
  r.renamable_partially_horn = check_renamable_partially_horn(f);
  return r;
}

bool verify_lpic(const Formula& f, const LpicWitness& w) {
  const int n = f.num_vars();
  std::vector<int> part(static_cast<std::size_t>(n) + 1, -1);
  const VarSet* parts[] = {&w.v0, &w.v1, &w.v2};
  for (int p = 0; p < 3; ++p)
    for (int v : *parts[p]) {
      if (v < 1 || v > n) throw InputError("variable " + std::to_string(v) + " out of range");
      if (part[static_cast<std::size_t>(v)] != -1) throw InputError("V0, V1, V2 overlap at x" + std::to_string(v));
      part[static_cast<std::size_t>(v)] = p;
    }
  for (int v = 1; v <= n; ++v)
    if (part[static_cast<std::size_t>(v)] == -1) throw InputError("V0, V1, V2 do not cover x" + std::to_string(v));
  for (int v : w.renamed)
    if (v < 1 || v > n || part[static_cast<std::size_t>(v)] != 0) throw InputError("renamed set is not inside V0");

  const Formula g = rename(f, w.renamed);
  if (!w.v0.empty() && !verify_partially_horn(g, w.v0)) return false;
  for (const auto& c : g.clauses()) {
    int count[3] = {0, 0, 0};
    for (int v : c.variables()) ++count[part[static_cast<std::size_t>(v)]];
    if (count[1] > 2) return false;
    if (count[1] > 0 && count[2] > 0) return false;
    switch (c.kind) {
      case ClauseKind::Or:
        if (count[2] > 1 || (count[2] == 1 && count[0] + 1 != static_cast<int>(c.size()))) return false;
        break;
      case ClauseKind::Xor:
        if (count[2] != static_cast<int>(c.size())) return false;
        break;
      case ClauseKind::Generalized:
        for (const auto& l : c.or_literals)
          if (part[static_cast<std::size_t>(l.var)] != 0) return false;
        for (const auto& l : c.xor_literals)
          if (part[static_cast<std::size_t>(l.var)] != 2) return false;
        break;
    }
  }
  return true;
}

std::optional<LpicWitness> check_lpic(const Formula& f) {
  const int n = f.num_vars();
  const auto syn = check_syntactic_class(f);
  LpicWitness w;
  auto accept = [&]() -> std::optional<LpicWitness> {
    if (!verify_lpic(f, w)) throw VerificationFailure("lpic witness failed verification");
    return w;
  };
  if (syn.bijunctive) {
    w.v1 = all_vars(n);
    return accept();
  }
  if (syn.affine) {
    w.v2 = all_vars(n);
    return accept();
  }

  auto rph = check_renamable_partially_horn(f);
  if (!rph) {
    // No admissible variable: every connected piece has to be bijunctive or
    // affine on its own. A unit OR clause doubles as a one-literal parity block.
    UnionFind uf = clause_components(f);
    std::vector<char> has_wide(static_cast<std::size_t>(n) + 1, 0), has_parity(has_wide), has_binary(has_wide);
    for (const auto& c : f.clauses()) {
      const auto r = uf.find(static_cast<std::size_t>(c.variables().front()));
      if (c.kind == ClauseKind::Xor) has_parity[r] = 1;
      else if (c.kind == ClauseKind::Generalized) has_wide[r] = 1;
      else if (c.size() > 2) has_wide[r] = 1;
      else if (c.size() == 2) has_binary[r] = 1;
    }
    for (int v = 1; v <= n; ++v) {
      const auto r = uf.find(static_cast<std::size_t>(v));
      if (has_wide[r] || (has_binary[r] && has_parity[r])) return std::nullopt;
      (has_parity[r] ? w.v2 : w.v1).push_back(v);
    }
    return accept();
  }

  w.renamed = rph->renamed;
  w.v0 = rph->admissible;
  if (static_cast<int>(w.v0.size()) == n) return accept();

  const auto in_v0 = membership(w.v0, n);
  std::vector<char> in_v2(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : f.clauses())
    if (c.kind != ClauseKind::Or)
      for (int v : c.variables())
        if (!in_v0[static_cast<std::size_t>(v)]) in_v2[static_cast<std::size_t>(v)] = 1;
  for (int v = 1; v <= n; ++v) {
    if (in_v0[static_cast<std::size_t>(v)]) continue;
    (in_v2[static_cast<std::size_t>(v)] ? w.v2 : w.v1).push_back(v);
  }
  if (!verify_lpic(f, w)) return std::nullopt;
  return w;
}

FormulaClassReport classify_formula(const Formula& f) {
  FormulaClassReport r;
  r.syntactic = check_syntactic_class(f);
  for (const auto& c : f.clauses())
    if (c.kind != ClauseKind::Or) r.mixed_clause_extension = true;
  r.renamable_horn = check_renamable_horn(f);
  const PicReport pic = check_pic(f);
  r.separable = pic.separable;
  r.renamable_partially_horn = pic.renamable_partially_horn;
  r.pic = pic.accepted();
  r.partially_horn = check_partially_horn(f);
  r.lpic = check_lpic(f);
  return r;
}

std::string format_var_set(const VarSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += "x" + std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace possdom
