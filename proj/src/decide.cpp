#include "addrand/decide.hpp"

#include <algorithm>
#include <set>

#include "addrand/primes.hpp"

namespace addrand {

namespace {

struct LocalOption {
  Int prime;
  Int residue;  // mod prime^2
};

bool assign(std::span<const std::vector<LocalOption>> options, std::size_t j, std::vector<LocalOption>& used) {
  if (j == options.size()) return true;
  for (const auto& opt : options[j]) {
    auto it = std::find_if(used.begin(), used.end(), [&](const LocalOption& u) { return u.prime == opt.prime; });
    if (it != used.end()) {
      if (it->residue == opt.residue && assign(options, j + 1, used)) return true;
      continue;
    }
    used.push_back(opt);
    if (assign(options, j + 1, used)) return true;
    used.pop_back();
  }
  return false;
}

// With chi holding for the positive terms, infinitely many x make every
// negative term non-square-free iff each negative term can be given a prime p
// and a class x0 mod p^2 killing it but no positive term, consistently across
// shared primes. A negative term proportional to no positive term has fresh
// large primes available; otherwise p must divide its coefficient.
bool squarefree_negatives_realizable(const PrimaryFormula& f) {
  std::vector<std::vector<LocalOption>> constrained;
  for (const auto& n : f.negative) {
    bool proportional = std::any_of(f.positive.begin(), f.positive.end(), [&](const Term& t) {
      return static_cast<__int128>(t.coeff) * n.constant == static_cast<__int128>(n.coeff) * t.constant;
    });
    if (!proportional) continue;
    std::vector<LocalOption> opts;
    for (Int p : prime_factors(n.coeff)) {
      Int q = p * p;
      for (Int x = 0; x < q; ++x) {
        auto kills = [&](const Term& t) { return floor_mod(mul_mod(t.coeff, x, q) + floor_mod(t.constant, q), q) == 0; };
        if (kills(n) && std::none_of(f.positive.begin(), f.positive.end(), kills)) opts.push_back({p, x});
      }
    }
    constrained.push_back(std::move(opts));
  }
  std::vector<LocalOption> used;
  return assign(constrained, 0, used);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Inconsistent: return "Inconsistent";
    case Verdict::Finite: return "Finite";
    case Verdict::Infinite: return "Infinite";
  }
  return "?";
}

Classification classify_primary(const PrimaryFormula& input, const RandomnessOracle& o) {
  PrimaryFormula f = deduplicated(input);
  Classification out;
  out.chi = {false};
  if (!is_good_position(f)) return out;

  // Constant terms are sentences; fold them away.
  PrimaryFormula open;
  for (const auto& t : f.positive) {
    if (!t.is_constant()) open.positive.push_back(t);
    else if (!o.contains(t.constant)) return out;
  }
  for (const auto& t : f.negative) {
    if (!t.is_constant()) open.negative.push_back(t);
    else if (o.contains(t.constant)) return out;
  }

  Instance inst = Instance::from(open);
  auto k = failing_boundary_modulus(o, inst);
  if (!k && o.kind() == OracleKind::SquareFree && !squarefree_negatives_realizable(open)) {
    // Every solution is a zero of some negative term.
    out.verdict = Verdict::Finite;
    out.chi = {true};
    out.negative_obstruction = true;
    for (const auto& t : open.negative)
      if (t.constant % t.coeff == 0) {
        Int x = -t.constant / t.coeff;
        if (holds(o, open, x)) out.solutions.push_back(x);
      }
    std::sort(out.solutions.begin(), out.solutions.end());
    out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
    return out;
  }
  if (!k) {
    out.verdict = Verdict::Infinite;
    out.conditionality = o.conditionality();
    out.chi = {true};
    return out;
  }

  // Every solution sends some positive term into the trapped set at k.
  std::vector<Int> trapped = o.boundary_trapped_set(*k);
  std::set<Int> candidates;
  for (const auto& t : open.positive)
    for (Int v : trapped) {
      Int diff = checked_sub(v, t.constant);
      if (diff % t.coeff == 0) candidates.insert(diff / t.coeff);
    }
  out.verdict = Verdict::Finite;
  out.witness_k = *k;
  for (Int x : candidates)
    if (holds(o, open, x)) out.solutions.push_back(x);
  return out;
}

Classification classify_conjunction(std::span<const PrimaryFormula> fs, const RandomnessOracle& o) {
  bool compatible = are_compatible(fs);
  Classification out;
  out.chi = {false};
  if (compatible) out = classify_primary(conjoin(fs), o);
  out.compatible = compatible;
  return out;
}

EqualityResolution resolve_equalities(const BasicFormula& f, const RandomnessOracle& o) {
  std::optional<Int> pinned;
  for (const auto& e : f.equalities) {
    Int rhs = checked_sub(e.value, e.constant);
    if (e.coeff == 0) {
      if (rhs != 0) return PinnedSolutions{};
      continue;
    }
    if (rhs % e.coeff != 0) return PinnedSolutions{};
    Int x = rhs / e.coeff;
    if (pinned && *pinned != x) return PinnedSolutions{};
    pinned = x;
  }
  BasicFormula rest = f;
  rest.equalities.clear();
  if (!pinned) return rest;
  PinnedSolutions out{true, {}};
  if (holds(o, rest, *pinned)) out.solutions.push_back(*pinned);
  return out;
}

Classification decide_exists_basic(const BasicFormula& input, const RandomnessOracle& o,
                                   const NormalizeOptions& options) {
  auto resolved = resolve_equalities(input, o);
  if (auto* pin = std::get_if<PinnedSolutions>(&resolved)) {
    Classification out;
    out.branches = 0;
    if (pin->solvable) {
      out.verdict = Verdict::Finite;
      out.solutions = pin->solutions;
    }
    return out;
  }

  BasicFormula f = std::get<BasicFormula>(resolved);
  // Constant predicate atoms are sentences.
  std::vector<PredicateAtom> open;
  for (const auto& a : f.atoms) {
    if (!a.term.is_constant()) {
      open.push_back(a);
      continue;
    }
    if (!holds(o, a, 0)) {
      Classification out;
      out.branches = 0;
      return out;
    }
  }
  f.atoms = std::move(open);

  auto branches = normalize_basic(f, options);
  Classification out;
  out.branches = branches.size();
  std::set<Int> finite_union;
  bool any_finite = false;
  for (const auto& br : branches) {
    Classification c = classify_primary(br.psi, o);
    out.chi.push_back(!c.chi.empty() && c.chi.front());
    if (c.verdict == Verdict::Infinite) {
      out.verdict = Verdict::Infinite;
      out.conditionality = c.conditionality;
    } else if (c.verdict == Verdict::Finite) {
      if (!any_finite) out.witness_k = c.witness_k;
      any_finite = true;
      out.negative_obstruction = out.negative_obstruction || c.negative_obstruction;
      for (Int e : c.solutions) finite_union.insert(br.substitution().at(e));
    }
  }
  if (out.verdict == Verdict::Infinite) {
    out.witness_k.reset();
    out.negative_obstruction = false;
    return out;
  }
  if (any_finite) {
    out.verdict = Verdict::Finite;
    out.solutions.assign(finite_union.begin(), finite_union.end());
  }
  return out;
}

}  // namespace addrand
