#include "addrand/normalize.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace addrand {

std::optional<Int> NormalizationBranch::preimage(Int b) const {
  Int diff = checked_sub(b, subst_const);
  if (floor_mod(diff, subst_coeff) != 0) return std::nullopt;
  return diff / subst_coeff;
}

bool NormalizationBranch::accepts(const RandomnessOracle& o, Int b) const {
  if (!witness_class.contains(b)) return false;
  auto e = preimage(b);
  return e && holds(o, psi, *e);
}

std::vector<NegatedCase> expand_neg_Pk(const PredicateAtom& atom) {
  if (atom.positive) throw std::invalid_argument("expand_neg_Pk: atom must be negated");
  const Int k = atom.index;
  std::vector<NegatedCase> out;
  for (Int j = 1; j < k; ++j) out.push_back({{atom.term.coeff, atom.term.constant, k, j}, std::nullopt});
  out.push_back({{atom.term.coeff, atom.term.constant, k, 0}, atom});
  return out;
}

namespace {

std::optional<CongruenceClass> solve(const CongruenceAtom& c) {
  return solve_linear_congruence(c.coeff, checked_sub(c.constant, c.residue), c.modulus);
}

struct Leaf {
  std::vector<CongruenceAtom> congruences;
  CongruenceClass cls;
  std::vector<Int> labels;
  std::vector<PredicateAtom> kept;
};

class Expander {
 public:
  Expander(std::vector<PredicateAtom> negatives, std::size_t cap)
      : negatives_(std::move(negatives)), cap_(cap) {}

  std::vector<Leaf> run(Leaf root) {
    descend(std::move(root), 0);
    return std::move(leaves_);
  }

 private:
  std::vector<PredicateAtom> negatives_;
  std::size_t cap_;
  std::vector<Leaf> leaves_;

  void descend(Leaf leaf, std::size_t i) {
    if (i == negatives_.size()) {
      if (leaves_.size() >= cap_) throw BranchCapExceeded("normalization branch cap exceeded");
      leaves_.push_back(std::move(leaf));
      return;
    }
    for (const auto& alt : expand_neg_Pk(negatives_[i])) {
      auto cls = solve(alt.congruence);
      if (!cls) continue;
      auto merged = intersect(leaf.cls, *cls);
      if (!merged) continue;
      Leaf next = leaf;
      next.cls = *merged;
      next.congruences.push_back(alt.congruence);
      next.labels.push_back(alt.congruence.residue);
      if (alt.retained) next.kept.push_back(*alt.retained);
      descend(std::move(next), i + 1);
    }
  }
};

// ell*x + a = 0 (mod n) equivalent to the leaf congruences. A lone
// non-trivial congruence is used as written; several are merged through CRT.
std::tuple<Int, Int, Int> consolidate(const Leaf& leaf) {
  const CongruenceAtom* single = nullptr;
  std::size_t nontrivial = 0;
  for (const auto& c : leaf.congruences) {
    if (c.modulus > 1) {
      ++nontrivial;
      single = &c;
    }
  }
  if (nontrivial == 1) {
    Int n = single->modulus;
    Int ell = floor_mod(single->coeff, n);
    if (ell == 0) ell = n;
    return {ell, floor_mod(checked_sub(single->constant, single->residue), n), n};
  }
  Int n = leaf.cls.modulus;
  return {1, floor_mod(-leaf.cls.residue, n), n};
}

}  // namespace

std::vector<NormalizationBranch> normalize_basic(const BasicFormula& input,
                                                 const NormalizeOptions& options) {
  if (!input.equalities.empty())
    throw std::invalid_argument("normalize_basic: resolve equality atoms first");
  BasicFormula canon = input;
  for (auto& a : canon.atoms) {
    a.term = canonical(a.term);
    if (a.term.is_constant()) throw std::invalid_argument("normalize_basic: constant predicate term");
    if (a.index < 1) throw std::invalid_argument("normalize_basic: predicate index must be >= 1");
  }
  BasicFormula f = unify_coefficients(canon);
  const Int m = f.atoms.empty() ? 1 : f.atoms.front().term.coeff;

  std::vector<PredicateAtom> atoms;
  {
    std::set<PredicateAtom> seen;
    for (const auto& a : f.atoms)
      if (seen.insert(a).second) atoms.push_back(a);
  }

  // Root: the given congruences plus divisibility of every positive P_k term.
  Leaf root;
  root.congruences = f.congruences;
  std::vector<PredicateAtom> negatives;
  for (const auto& a : atoms) {
    if (a.positive) {
      root.congruences.push_back({a.term.coeff, a.term.constant, a.index, 0});
      root.kept.push_back(a);
    } else {
      negatives.push_back(a);
    }
  }
  for (const auto& c : root.congruences) {
    auto cls = solve(c);
    if (!cls) return {};
    auto merged = intersect(root.cls, *cls);
    if (!merged) return {};
    root.cls = *merged;
  }
  // Negated atoms keep their place after the positive ones in psi.
  std::vector<Leaf> leaves = Expander(negatives, options.branch_cap).run(std::move(root));

  std::vector<NormalizationBranch> branches;
  for (const auto& leaf : leaves) {
    NormalizationTrace tr;
    tr.m = m;
    std::tie(tr.ell, tr.a, tr.n) = consolidate(leaf);
    tr.d = gcd(tr.ell, tr.n);
    if (tr.a % tr.d != 0) continue;
    tr.ell_prime = tr.ell / tr.d;
    tr.n_prime = tr.n / tr.d;
    Int a_prime = tr.a / tr.d;
    tr.bezout = *inverse_mod(tr.ell_prime, tr.n_prime);
    // b = -bezout * a' (mod n'); t1(x) = n' x + rho with rho in [0, n').
    Int rho = floor_mod(-mul_mod(tr.bezout, a_prime, tr.n_prime), tr.n_prime);
    tr.a_second = -rho;
    if (CongruenceClass(tr.n_prime, rho) != leaf.cls)
      throw std::logic_error("normalize_basic: congruence consolidation disagrees with CRT");

    Int N = 1;
    for (const auto& a : leaf.kept) N = lcm(N, a.index);
    tr.N = N;
    const Int mn = checked_mul(m, tr.n_prime);
    const Int coeff = checked_mul(tr.n_prime, N);

    for (Int m0 = 0; m0 < N; ++m0) {
      if (branches.size() >= options.branch_cap)
        throw BranchCapExceeded("normalization branch cap exceeded");
      NormalizationBranch br;
      br.labels = leaf.labels;
      br.trace = tr;
      br.trace.m0 = m0;
      br.subst_coeff = coeff;
      br.subst_const = checked_add(checked_mul(tr.n_prime, m0), rho);
      br.witness_class = CongruenceClass(coeff, br.subst_const);
      PrimaryFormula psi;
      for (const auto& a : leaf.kept) {
        // c' = c - m a'', then d = (c' + m n' m0) / k.
        Int c_prime = checked_sub(a.term.constant, checked_mul(m, tr.a_second));
        Int numerator = checked_add(c_prime, checked_mul(mn, m0));
        if (numerator % a.index != 0)
          throw std::logic_error("normalize_basic: divided constant is not integral");
        Int dk = numerator / a.index;
        br.trace.divided_constants.push_back(dk);
        Term t{checked_mul(mn, N / a.index), dk};
        (a.positive ? psi.positive : psi.negative).push_back(t);
      }
      br.psi = deduplicated(psi);
      branches.push_back(std::move(br));
    }
  }
  std::sort(branches.begin(), branches.end(), [](const auto& x, const auto& y) {
    return std::tie(x.witness_class.residue, x.witness_class.modulus, x.labels, x.trace.m0) <
           std::tie(y.witness_class.residue, y.witness_class.modulus, y.labels, y.trace.m0);
  });
  return branches;
}

CoverReport branch_cover_check(const BasicFormula& f, std::span<const NormalizationBranch> branches,
                               Int bound, const RandomnessOracle& o) {
  if (bound < 1) throw std::invalid_argument("branch_cover_check: bound must be >= 1");
  CoverReport report;
  report.bound = bound;
  const std::size_t width = static_cast<std::size_t>(2 * bound + 1);
  std::vector<std::uint32_t> accepting(width, 0);
  for (const auto& br : branches) {
    Int e_lo = ceil_div(checked_sub(-bound, br.subst_const), br.subst_coeff);
    Int e_hi = floor_div(checked_sub(bound, br.subst_const), br.subst_coeff);
    for (Int e = e_lo; e <= e_hi; ++e) {
      Int b = br.substitution().at(e);
      if (br.witness_class.contains(b) && holds(o, br.psi, e))
        ++accepting[static_cast<std::size_t>(b + bound)];
    }
  }
  for (Int b = -bound; b <= bound; ++b) {
    bool sat = holds(o, f, b);
    std::size_t acc = accepting[static_cast<std::size_t>(b + bound)];
    report.satisfying += sat;
    if (acc != (sat ? 1u : 0u)) {
      ++report.counterexample_count;
      if (report.counterexamples.size() < 100) report.counterexamples.push_back({b, sat, acc});
    }
  }
  return report;
}

}  // namespace addrand
