#include "polar/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "polar/base.hpp"

namespace polar::rootsys {

namespace {

struct Diagram {
  std::vector<std::vector<long>> cartan;
  std::vector<long> norm2;
};

// Node orderings: A/B/C/D chains with the short/fork end last; E6/E7/E8 as a
// chain 1..(rank-1) with the last node attached to node 3; F4 with the short
// end first (so that weight (1,0,0,0) is the 26-dimensional representation);
// G2 with the short root first.
Diagram diagram_for(char type, int rank) {
  auto chain = [&](std::vector<long> norm2) {
    Diagram d;
    const int n = static_cast<int>(norm2.size());
    d.norm2 = std::move(norm2);
    d.cartan.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) d.cartan[i][i] = 2;
    for (int i = 0; i + 1 < n; ++i) {
      // ip2 between chain neighbours is -max(norm2_i, norm2_j)
      const long ip2 = -std::max(d.norm2[i], d.norm2[i + 1]);
      d.cartan[i][i + 1] = 2 * ip2 / (2 * d.norm2[i + 1]);
      d.cartan[i + 1][i] = 2 * ip2 / (2 * d.norm2[i]);
    }
    return d;
  };
  auto attach = [](Diagram& d, int a, int b) {  // simply-laced extra edge
    d.cartan[a][b] = -1;
    d.cartan[b][a] = -1;
  };
  switch (type) {
    case 'A': {
      if (rank < 1) throw Error("A_n needs rank >= 1");
      return chain(std::vector<long>(rank, 2));
    }
    case 'B': {
      if (rank < 2) throw Error("B_n needs rank >= 2");
      std::vector<long> n2(rank, 2);
      n2[rank - 1] = 1;
      return chain(std::move(n2));
    }
    case 'C': {
      if (rank < 2) throw Error("C_n needs rank >= 2");
      std::vector<long> n2(rank, 1);
      n2[rank - 1] = 2;
      return chain(std::move(n2));
    }
    case 'D': {
      if (rank < 3) throw Error("D_n needs rank >= 3");
      Diagram d = chain(std::vector<long>(rank, 2));
      // detach the last node from the chain end and hook it to rank-2
      d.cartan[rank - 2][rank - 1] = 0;
      d.cartan[rank - 1][rank - 2] = 0;
      if (rank >= 3) {
        d.cartan[rank - 3][rank - 1] = -1;
        d.cartan[rank - 1][rank - 3] = -1;
      }
      return d;
    }
    case 'E': {
      if (rank < 6 || rank > 8) throw Error("E_n needs rank in {6,7,8}");
      Diagram d = chain(std::vector<long>(rank, 2));
      d.cartan[rank - 2][rank - 1] = 0;
      d.cartan[rank - 1][rank - 2] = 0;
      attach(d, 2, rank - 1);  // node `rank` hangs off node 3
      return d;
    }
    case 'F': {
      if (rank != 4) throw Error("F needs rank 4");
      return chain({1, 1, 2, 2});
    }
    case 'G': {
      if (rank != 2) throw Error("G needs rank 2");
      return chain({1, 3});
    }
    default:
      throw Error(std::string("unknown type ") + type);
  }
}

long height(const Coeff& r) { return std::accumulate(r.begin(), r.end(), 0L); }

struct CoeffLess {
  bool operator()(const Coeff& a, const Coeff& b) const { return a < b; }
};

}  // namespace

long RootSystem::ip2(const Coeff& a, const Coeff& b) const {
  long acc = 0;
  for (int i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank; ++j) {
      if (b[j] == 0) continue;
      acc += a[i] * b[j] * cartan[i][j] * norm2[j];
    }
  }
  return acc;
}

long RootSystem::pairing(const Coeff& a, const Coeff& b) const {
  const long n = 2 * ip2(a, b);
  const long d = ip2(b, b);
  if (d == 0 || n % d != 0) throw Error("pairing: non-integral Cartan number");
  return n / d;
}

int RootSystem::index_of(const Coeff& r) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == r) return static_cast<int>(i);
  return -1;
}

std::vector<long> RootSystem::adjoint_weight() const {
  std::vector<long> w(rank, 0);
  for (int i = 0; i < rank; ++i) {
    Coeff simple(rank, 0);
    simple[i] = 1;
    w[i] = pairing(highest, simple);
  }
  return w;
}

RootSystem build_root_system(char type, int rank) {
  RootSystem sys;
  sys.type = type;
  sys.rank = rank;
  Diagram d = diagram_for(type, rank);
  sys.cartan = d.cartan;
  sys.norm2 = d.norm2;

  // Height-by-height generation of positive roots via root strings.
  std::set<Coeff, CoeffLess> pos;
  std::vector<Coeff> frontier;
  for (int i = 0; i < rank; ++i) {
    Coeff r(rank, 0);
    r[i] = 1;
    pos.insert(r);
    frontier.push_back(r);
  }
  while (!frontier.empty()) {
    std::vector<Coeff> next;
    for (const Coeff& beta : frontier) {
      for (int i = 0; i < rank; ++i) {
        // p = how far the alpha_i-string extends below beta
        long p = 0;
        Coeff down = beta;
        while (true) {
          down[i] -= 1;
          bool nonneg = std::all_of(down.begin(), down.end(), [](long c) { return c >= 0; });
          if (!nonneg || height(down) <= 0 || !pos.count(down)) break;
          ++p;
        }
        long pair = 0;
        for (int j = 0; j < rank; ++j) pair += beta[j] * sys.cartan[j][i];
        const long q = p - pair;
        if (q > 0) {
          Coeff up = beta;
          up[i] += 1;
          if (!pos.count(up)) {
            pos.insert(up);
            next.push_back(up);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<Coeff> ordered(pos.begin(), pos.end());
  std::sort(ordered.begin(), ordered.end(), [](const Coeff& a, const Coeff& b) {
    const long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  sys.roots = ordered;
  for (const Coeff& r : ordered) {
    Coeff neg(r.size());
    for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    sys.roots.push_back(neg);
  }
  sys.highest = ordered.back();
  return sys;
}

namespace {

// Closure of a symmetric generating set under addition inside R.
std::vector<int> closure(const RootSystem& sys, std::set<int> members) {
  std::map<Coeff, int> index;
  for (long i = 0; i < sys.num_roots(); ++i) index[sys.roots[i]] = static_cast<int>(i);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(members.begin(), members.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a + 1; b < cur.size(); ++b) {
        Coeff sum = sys.roots[cur[a]];
        const Coeff& rb = sys.roots[cur[b]];
        for (int i = 0; i < sys.rank; ++i) sum[i] += rb[i];
        auto it = index.find(sum);
        if (it != index.end() && !members.count(it->second)) {
          members.insert(it->second);
          grew = true;
        }
      }
  }
  return std::vector<int>(members.begin(), members.end());
}

bool is_positive(const Coeff& r) {
  for (long c : r)
    if (c != 0) return c > 0;
  return false;
}

// Simple roots of a closed symmetric subset: positive members that are not
// sums of two positive members.
std::vector<Coeff> subset_base(const RootSystem& sys, const std::vector<int>& members) {
  std::vector<Coeff> positives;
  for (int idx : members)
    if (is_positive(sys.roots[idx])) positives.push_back(sys.roots[idx]);
  std::set<Coeff, CoeffLess> posset(positives.begin(), positives.end());
  std::vector<Coeff> base;
  for (const Coeff& r : positives) {
    bool decomposable = false;
    for (const Coeff& a : positives) {
      Coeff diff(r.size());
      for (size_t i = 0; i < r.size(); ++i) diff[i] = r[i] - a[i];
      if (diff != Coeff(r.size(), 0) && posset.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) base.push_back(r);
  }
  return base;
}

long span_rank(std::vector<Coeff> vecs) {
  // fraction-free Gaussian elimination
  long r = 0;
  const size_t cols = vecs.empty() ? 0 : vecs[0].size();
  for (size_t c = 0; c < cols && r < static_cast<long>(vecs.size()); ++c) {
    size_t piv = static_cast<size_t>(r);
    while (piv < vecs.size() && vecs[piv][c] == 0) ++piv;
    if (piv == vecs.size()) continue;
    std::swap(vecs[static_cast<size_t>(r)], vecs[piv]);
    for (size_t i = static_cast<size_t>(r) + 1; i < vecs.size(); ++i) {
      if (vecs[i][c] == 0) continue;
      const long a = vecs[static_cast<size_t>(r)][c], b = vecs[i][c];
      for (size_t j = 0; j < cols; ++j)
        vecs[i][j] = vecs[i][j] * a - vecs[static_cast<size_t>(r)][j] * b;
    }
    ++r;
  }
  return r;
}

// Classify one connected component of a base diagram.
std::string component_type(const RootSystem& sys, const std::vector<Coeff>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n == 1) return "A1";
  // pairwise bond multiplicities and lengths
  std::vector<std::vector<int>> bond(n, std::vector<int>(n, 0));
  std::vector<long> len(n);
  for (int i = 0; i < n; ++i) len[i] = sys.ip2(nodes[i], nodes[i]);
  int max_bond = 0;
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const long nij = sys.pairing(nodes[i], nodes[j]);
      const long nji = sys.pairing(nodes[j], nodes[i]);
      bond[i][j] = static_cast<int>(nij * nji);
      if (bond[i][j] > 0) ++degree[i];
      max_bond = std::max(max_bond, bond[i][j]);
    }
  for (int i = 0; i < n; ++i) degree[i] /= 1;
  if (max_bond == 3) return "G2";
  if (max_bond == 2) {
    if (n == 2) return "B2";
    const long maxlen = *std::max_element(len.begin(), len.end());
    int longs = 0;
    for (long l : len)
      if (l == maxlen) ++longs;
    // B_n has n-1 long simple roots, C_n exactly one.
    if (longs == n - 1) return "B" + std::to_string(n);
    if (longs == 1) return "C" + std::to_string(n);
    return "F" + std::to_string(n);  // F4: two long, two short
  }
  // simply laced: look for a branch node
  int branch = -1;
  for (int i = 0; i < n; ++i)
    if (degree[i] >= 3) branch = i;
  if (branch < 0) return "A" + std::to_string(n);
  // arm lengths from the branch node
  std::vector<int> arms;
  std::vector<bool> seen(n, false);
  seen[branch] = true;
  for (int j = 0; j < n; ++j) {
    if (bond[branch][j] == 0 || seen[j]) continue;
    int len_arm = 0;
    int cur = j;
    int prev = branch;
    while (true) {
      seen[cur] = true;
      ++len_arm;
      int nxt = -1;
      for (int t = 0; t < n; ++t)
        if (t != prev && bond[cur][t] > 0 && !seen[t]) nxt = t;
      if (nxt < 0) break;
      prev = cur;
      cur = nxt;
    }
    arms.push_back(len_arm);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() == 3 && arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms.size() == 3 && arms[0] == 1 && arms[1] == 2) return "E" + std::to_string(n);
  return "X" + std::to_string(n);
}

std::string label_from_components(std::vector<std::string> comps, long torus_deficit) {
  std::sort(comps.begin(), comps.end(), [](const std::string& a, const std::string& b) {
    auto key = [](const std::string& s) {
      return std::pair<long, char>(-std::stol(s.substr(1)), s[0]);
    };
    return key(a) < key(b);
  });
  std::string out;
  for (const auto& c : comps) {
    if (!out.empty()) out += "+";
    out += c;
  }
  if (torus_deficit > 0) out += (out.empty() ? "T" : "+T") + std::to_string(torus_deficit);
  if (out.empty()) out = "T0";
  return out;
}

}  // namespace

std::string subset_label(const RootSystem& sys, const std::vector<int>& members) {
  if (members.empty()) return "T" + std::to_string(sys.rank);
  std::vector<Coeff> base = subset_base(sys, members);
  // split base into connected components
  const int n = static_cast<int>(base.size());
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (comp[j] >= 0) continue;
        if (sys.ip2(base[cur], base[j]) != 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::string> labels;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<Coeff> nodes;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) nodes.push_back(base[i]);
    labels.push_back(component_type(sys, nodes));
  }
  std::vector<Coeff> all;
  for (int idx : members) all.push_back(sys.roots[idx]);
  const long deficit = sys.rank - span_rank(all);
  return label_from_components(labels, deficit);
}

RootSubset borel_de_siebenthal(const RootSystem& sys, int delete_vertex) {
  if (delete_vertex < 0 || delete_vertex > sys.rank)
    throw Error("borel_de_siebenthal: vertex index out of range");
  std::set<int> gen;
  auto add_pm = [&](const Coeff& r) {
    int idx = sys.index_of(r);
    if (idx < 0) throw Error("borel_de_siebenthal: generator is not a root");
    gen.insert(idx);
    Coeff neg(r.size());
    for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    gen.insert(sys.index_of(neg));
  };
  for (int i = 1; i <= sys.rank; ++i) {
    if (i == delete_vertex) continue;
    Coeff simple(sys.rank, 0);
    simple[i - 1] = 1;
    add_pm(simple);
  }
  if (delete_vertex != 0) add_pm(sys.highest);  // node 0 = -highest
  RootSubset out;
  out.parent_type = sys.type;
  out.parent_rank = sys.rank;
  out.members = closure(sys, std::move(gen));
  out.label = subset_label(sys, out.members);
  return out;
}

std::vector<RootSubset> bds_enumerate(const RootSystem& sys) {
  auto is_prime = [](long m) {
    if (m < 2) return false;
    for (long d = 2; d * d <= m; ++d)
      if (m % d == 0) return false;
    return true;
  };
  std::vector<RootSubset> out;
  std::set<std::string> seen;
  for (int i = 1; i <= sys.rank; ++i) {
    if (!is_prime(sys.highest[i - 1])) continue;
    RootSubset s = borel_de_siebenthal(sys, i);
    if (seen.insert(s.label).second) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const RootSubset& a, const RootSubset& b) { return a.label < b.label; });
  return out;
}

RootSubset parity_subset(const RootSystem& sys, int node) {
  if (node < 1 || node > sys.rank) throw Error("parity_subset: bad node");
  RootSubset out;
  out.parent_type = sys.type;
  out.parent_rank = sys.rank;
  for (long i = 0; i < sys.num_roots(); ++i)
    if (sys.roots[i][node - 1] % 2 == 0) out.members.push_back(static_cast<int>(i));
  out.label = subset_label(sys, out.members);
  return out;
}

std::string canonical_label(const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == '+') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(toupper(static_cast<unsigned char>(c)));
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  std::vector<std::string> torus;
  std::vector<std::string> comps;
  for (auto& p : parts)
    (p[0] == 'T' ? torus : comps).push_back(p);
  long deficit = 0;
  for (auto& t : torus) deficit += std::stol(t.substr(1));
  return label_from_components(comps, deficit);
}

RootSubset subset_from_label(const RootSystem& sys, const std::string& label) {
  const std::string want = canonical_label(label);
  // full system
  {
    std::vector<int> all(static_cast<size_t>(sys.num_roots()));
    std::iota(all.begin(), all.end(), 0);
    if (canonical_label(subset_label(sys, all)) == want) {
      RootSubset s;
      s.parent_type = sys.type;
      s.parent_rank = sys.rank;
      s.members = all;
      s.label = want;
      return s;
    }
  }
  for (int i = 0; i <= sys.rank; ++i) {
    RootSubset s = borel_de_siebenthal(sys, i);
    if (canonical_label(s.label) == want) return s;
  }
  for (int i = 1; i <= sys.rank; ++i) {
    RootSubset s = parity_subset(sys, i);
    if (canonical_label(s.label) == want) return s;
  }
  throw Error("subset_from_label: no subsystem labelled " + want + " found");
}

MaxRankSlice maximal_rank_slice(const RootSystem& sys, const RootSubset& s,
                                const RootSubset& s2) {
  if (s.parent_type != s2.parent_type || s.parent_rank != s2.parent_rank)
    throw DimensionMismatch("maximal_rank_slice: parent mismatch");
  std::set<int> a(s.members.begin(), s.members.end());
  std::set<int> b(s2.members.begin(), s2.members.end());
  MaxRankSlice out;
  for (long i = 0; i < sys.num_roots(); ++i) {
    const bool in_a = a.count(static_cast<int>(i)) > 0;
    const bool in_b = b.count(static_cast<int>(i)) > 0;
    if (in_a && in_b) out.isotropy_roots.push_back(static_cast<int>(i));
    if (!in_a && !in_b) out.slice_roots.push_back(static_cast<int>(i));
  }
  out.isotropy_label = subset_label(sys, out.isotropy_roots);
  out.isotropy_dim = static_cast<long>(out.isotropy_roots.size()) + sys.rank;
  return out;
}

namespace {

void factor_accumulate(long n, long sign, std::map<long, long>& expo) {
  if (n <= 0) throw Error("weyl_dimension: nonpositive term");
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      expo[p] += sign;
      n /= p;
    }
  if (n > 1) expo[n] += sign;
}

}  // namespace

unsigned long long weyl_dimension(char type, int rank,
                                  const std::vector<long>& weight) {
  if (static_cast<int>(weight.size()) != rank)
    throw DimensionMismatch("weyl_dimension: weight length != rank");
  for (long w : weight)
    if (w < 0) throw Error("weyl_dimension: weight must be dominant");
  const RootSystem sys = build_root_system(type, rank);
  std::map<long, long> expo;
  for (long i = 0; i < sys.num_positive(); ++i) {
    const Coeff& a = sys.roots[i];
    long num = 0, den = 0;
    for (int j = 0; j < rank; ++j) {
      num += (weight[j] + 1) * a[j] * sys.norm2[j];
      den += a[j] * sys.norm2[j];
    }
    factor_accumulate(num, +1, expo);
    factor_accumulate(den, -1, expo);
  }
  unsigned long long result = 1;
  for (const auto& [p, e] : expo) {
    if (e < 0) throw Error("weyl_dimension: non-integer result (bad root data)");
    for (long k = 0; k < e; ++k) {
      if (result > std::numeric_limits<unsigned long long>::max() / static_cast<unsigned long long>(p))
        throw Error("weyl_dimension: overflow");
      result *= static_cast<unsigned long long>(p);
    }
  }
  return result;
}

long dim_of_simple(char type, int rank) {
  const RootSystem sys = build_root_system(type, rank);
  return sys.num_roots() + rank;
}

}  // namespace polar::rootsys
