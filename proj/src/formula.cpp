#include "addrand/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace addrand {

Term canonical(const Term& t) {
  if (t.coeff < 0 || (t.coeff == 0 && t.constant < 0))
    return {checked_neg(t.coeff), checked_neg(t.constant)};
  return t;
}

bool CongruenceAtom::holds(Int x) const {
  __int128 v = static_cast<__int128>(coeff) * x + constant - residue;
  v %= modulus;
  return v == 0;
}

BasicFormula to_basic(const PrimaryFormula& f) {
  BasicFormula out;
  for (const auto& t : f.positive) out.atoms.push_back({t, 1, true});
  for (const auto& t : f.negative) out.atoms.push_back({t, 1, false});
  return out;
}

std::optional<PrimaryFormula> as_primary(const BasicFormula& f) {
  if (!f.congruences.empty() || !f.equalities.empty()) return std::nullopt;
  PrimaryFormula out;
  for (const auto& a : f.atoms) {
    if (a.index != 1) return std::nullopt;
    (a.positive ? out.positive : out.negative).push_back(a.term);
  }
  return out;
}

namespace {

std::vector<Term> unique_canonical(const std::vector<Term>& terms) {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const auto& t : terms) {
    Term c = canonical(t);
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

}  // namespace

PrimaryFormula deduplicated(const PrimaryFormula& f) {
  return {unique_canonical(f.positive), unique_canonical(f.negative)};
}

BasicFormula unify_coefficients(const BasicFormula& f) {
  Int m = 1;
  for (const auto& a : f.atoms) {
    if (a.term.coeff < 0) throw std::invalid_argument("unify_coefficients: negative coefficient");
    if (a.term.coeff > 0) m = lcm(m, a.term.coeff);
  }
  BasicFormula out = f;
  for (auto& a : out.atoms) {
    if (a.term.coeff == 0) continue;
    Int scale = m / a.term.coeff;
    a.index = checked_mul(a.index, scale);
    a.term = {m, checked_mul(a.term.constant, scale)};
  }
  return out;
}

bool is_good_position(const PrimaryFormula& f) {
  auto g = deduplicated(f);
  std::set<Term> pos(g.positive.begin(), g.positive.end());
  return std::none_of(g.negative.begin(), g.negative.end(),
                      [&](const Term& t) { return pos.contains(t); });
}

bool are_compatible(std::span<const PrimaryFormula> fs) {
  std::vector<std::set<Term>> pos, neg;
  for (const auto& f : fs) {
    auto g = deduplicated(f);
    pos.emplace_back(g.positive.begin(), g.positive.end());
    neg.emplace_back(g.negative.begin(), g.negative.end());
  }
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : pos[i])
        if (neg[j].contains(t)) return false;
    }
  return true;
}

PrimaryFormula conjoin(std::span<const PrimaryFormula> fs) {
  PrimaryFormula all;
  for (const auto& f : fs) {
    all.positive.insert(all.positive.end(), f.positive.begin(), f.positive.end());
    all.negative.insert(all.negative.end(), f.negative.begin(), f.negative.end());
  }
  return deduplicated(all);
}

}  // namespace addrand
