#include "addrand/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "addrand/syntax.hpp"

namespace addrand {

std::string_view to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Confirmed: return "confirmed";
    case AuditStatus::Refuted: return "refuted";
    case AuditStatus::ConjectureRelevantAnomaly: return "conjecture-relevant-anomaly";
  }
  return "?";
}

MembershipWindow sieve_window(const RandomnessOracle& o, Int bound, const ScanOptions& options) {
  if (bound < 0) throw std::invalid_argument("sieve_window: negative bound");
  if (bound > options.max_sieve)
    throw ResourceLimitError("sieve window " + std::to_string(bound) + " exceeds the cap " +
                             std::to_string(options.max_sieve));
  const std::size_t n = static_cast<std::size_t>(bound) + 1;
  const std::size_t seg = std::max<std::size_t>(64, (options.segment_size + 63) / 64 * 64);
  const std::size_t segments = (n + seg - 1) / seg;
  std::vector<std::uint64_t> words((n + 63) / 64, 0);
  // Segments start on word boundaries, so workers never share a word.
  parallel_for(segments, options.workers, [&](std::size_t s) {
    std::size_t first = s * seg;
    std::size_t len = std::min(seg, n - first);
    std::vector<std::uint8_t> buf(len);
    o.fill_segment(static_cast<Int>(first), buf);
    for (std::size_t i = 0; i < len; ++i)
      if (buf[i]) words[(first + i) >> 6] |= std::uint64_t{1} << ((first + i) & 63);
  });
  return MembershipWindow(bound, std::move(words));
}

MembershipSource::MembershipSource(const RandomnessOracle& o, Int value_bound, const ScanOptions& options)
    : oracle_(&o), window_(sieve_window(o, std::min(value_bound, options.max_sieve), options)) {}

bool MembershipSource::contains(Int n) const {
  if (n >= -window_.bound() && n <= window_.bound()) return window_.test(n);
  return oracle_->contains(n);
}

namespace {

Int clamp_to_int(__int128 v) {
  constexpr __int128 hi = std::numeric_limits<Int>::max();
  return v > hi ? std::numeric_limits<Int>::max() : static_cast<Int>(v);
}

__int128 abs128(Int v) { return v < 0 ? -static_cast<__int128>(v) : v; }

Int term_value_bound(const Term& t, Int bound) {
  return clamp_to_int(abs128(t.coeff) * bound + abs128(t.constant));
}

Int value_of(const Term& t, Int x) {
  __int128 v = static_cast<__int128>(t.coeff) * x + t.constant;
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw OverflowError("term value out of range during scan");
  return static_cast<Int>(v);
}

void check_bounds(std::span<const Int> bounds) {
  if (bounds.empty()) throw std::invalid_argument("scan: no bounds given");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 0) throw std::invalid_argument("scan: bounds must be non-negative");
    if (i > 0 && bounds[i] <= bounds[i - 1])
      throw std::invalid_argument("scan: bounds must be strictly increasing");
  }
}

// One pass over [-B, B], B the largest bound, split in fixed chunks merged in order.
template <class Sat>
ScanResult scan_core(std::span<const Int> bounds, const ScanOptions& options, Sat&& sat) {
  check_bounds(bounds);
  const Int B = bounds.back();
  const std::size_t width = static_cast<std::size_t>(2 * B + 1);
  const std::size_t chunks = std::min<std::size_t>(width, std::max(1u, options.workers) * 8u);
  struct Partial {
    std::vector<std::uint64_t> first_radius;  // solutions whose smallest enclosing bound is i
    std::vector<Int> solutions;
  };
  std::vector<Partial> partial(chunks);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    Partial& p = partial[c];
    p.first_radius.assign(bounds.size(), 0);
    Int lo = -B + static_cast<Int>(width * c / chunks);
    Int hi = -B + static_cast<Int>(width * (c + 1) / chunks);  // exclusive
    for (Int x = lo; x < hi; ++x) {
      if (!sat(x)) continue;
      Int ax = x < 0 ? -x : x;
      auto it = std::lower_bound(bounds.begin(), bounds.end(), ax);
      ++p.first_radius[static_cast<std::size_t>(it - bounds.begin())];
      if (p.solutions.size() < options.solution_cap) p.solutions.push_back(x);
    }
  });
  ScanResult out;
  out.bounds.assign(bounds.begin(), bounds.end());
  out.counts.assign(bounds.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < bounds.size(); ++i) out.counts[i] += p.first_radius[i];
    for (Int x : p.solutions)
      if (out.solutions.size() < options.solution_cap) out.solutions.push_back(x);
  }
  for (std::size_t i = 1; i < out.counts.size(); ++i) out.counts[i] += out.counts[i - 1];
  return out;
}

}  // namespace

Int value_bound(const BasicFormula& f, Int bound) {
  Int v = 0;
  for (const auto& a : f.atoms) v = std::max(v, term_value_bound(a.term, bound) / a.index);
  return v;
}

ScanResult scan(const BasicFormula& f, const MembershipSource& source, std::span<const Int> bounds,
                const ScanOptions& options) {
  return scan_core(bounds, options, [&](Int x) {
    for (const auto& c : f.congruences)
      if (!c.holds(x)) return false;
    for (const auto& e : f.equalities)
      if (static_cast<__int128>(e.coeff) * x + e.constant != e.value) return false;
    for (const auto& a : f.atoms) {
      Int v = value_of(a.term, x);
      bool member = v % a.index == 0 && source.contains(v / a.index);
      if (member != a.positive) return false;
    }
    return true;
  });
}

SolutionCount count_solutions(const BasicFormula& f, const RandomnessOracle& o, Int bound,
                              const ScanOptions& options) {
  if (bound < 1) throw std::invalid_argument("count_solutions: bound must be >= 1");
  MembershipSource source(o, value_bound(f, bound), options);
  Int bounds[] = {bound};
  auto r = scan(f, source, bounds, options);
  return {r.counts.front(), std::move(r.solutions)};
}

SolutionCount count_solutions(const PrimaryFormula& f, const RandomnessOracle& o, Int bound,
                              const ScanOptions& options) {
  return count_solutions(to_basic(f), o, bound, options);
}

VerificationReport audit(const BasicFormula& f, const RandomnessOracle& o, std::span<const Int> bounds,
                         const ScanOptions& options, const NormalizeOptions& normalize) {
  check_bounds(bounds);
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.formula = render(f);
  rep.oracle = o.name();
  rep.verdict = decide_exists_basic(f, o, normalize);
  MembershipSource source(o, value_bound(f, bounds.back()), options);
  auto scanned = scan(f, source, bounds, options);
  rep.bounds = scanned.bounds;
  rep.counts = scanned.counts;
  rep.window_solutions = scanned.solutions;

  const auto& v = rep.verdict;
  switch (v.verdict) {
    case Verdict::Inconsistent:
      if (rep.counts.back() != 0) {
        rep.status = AuditStatus::Refuted;
        rep.note = "inconsistent formula has solutions in the window";
      }
      break;
    case Verdict::Finite: {
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        auto expected = std::count_if(v.solutions.begin(), v.solutions.end(),
                                      [&](Int s) { return s >= -bounds[i] && s <= bounds[i]; });
        if (static_cast<std::uint64_t>(expected) != rep.counts[i]) {
          rep.status = AuditStatus::Refuted;
          rep.note = "count at bound " + std::to_string(bounds[i]) + " differs from the finite set";
        }
      }
      std::vector<Int> expected;
      for (Int s : v.solutions)
        if (s >= -bounds.back() && s <= bounds.back() && expected.size() < options.solution_cap)
          expected.push_back(s);
      if (expected != rep.window_solutions) {
        rep.status = AuditStatus::Refuted;
        rep.note = "window solutions differ from the finite set";
      }
      break;
    }
    case Verdict::Infinite: {
      bool growing = rep.counts.front() > 0;
      for (std::size_t i = 1; i < rep.counts.size(); ++i) growing = growing && rep.counts[i] > rep.counts[i - 1];
      if (!growing) {
        bool proved = v.conditionality == Conditionality::Unconditional;
        rep.status = proved ? AuditStatus::Refuted : AuditStatus::ConjectureRelevantAnomaly;
        rep.note = "solution counts do not grow across the bounds";
      }
      break;
    }
  }
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return rep;
}

namespace {

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rdist(1, 3), rpdist(0, 2);
  std::uniform_int_distribution<Int> cdist(1, 5), zdist(-30, 30);
  for (;;) {
    Instance inst;
    int r = rdist(rng), rp = rpdist(rng);
    for (int i = 0; i < r; ++i) inst.positive.push_back({cdist(rng), zdist(rng)});
    for (int i = 0; i < rp; ++i) inst.negative.push_back({cdist(rng), zdist(rng)});
    if (is_good_position({inst.positive, inst.negative})) return inst;
  }
}

bool has_solution(const Instance& inst, const MembershipSource& source, Int bound) {
  // Outward from 0; most instances with chi true have small solutions.
  auto sat = [&](Int x) {
    for (const auto& t : inst.positive)
      if (!source.contains(value_of(t, x))) return false;
    for (const auto& t : inst.negative)
      if (source.contains(value_of(t, x))) return false;
    return true;
  };
  for (Int x = 0; x <= bound; ++x)
    if (sat(x) || sat(-x)) return true;
  return false;
}

}  // namespace

AxiomReport check_axioms(const RandomnessOracle& o, std::size_t samples, Int bound, std::uint64_t seed,
                         const ScanOptions& options) {
  AxiomReport rep;
  rep.oracle = o.name();
  rep.samples = samples;
  rep.bound = bound;
  std::mt19937_64 rng(seed);
  MembershipSource source(o, clamp_to_int(static_cast<__int128>(5) * bound + 30), options);
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < samples; ++i) instances.push_back(random_instance(rng));

  std::vector<char> p1_ok(samples, 0), p1_tested(samples, 0), p2_ok(samples, 0), p2_tested(samples, 0);
  parallel_for(samples, options.workers, [&](std::size_t i) {
    const Instance& inst = instances[i];
    if (chi_holds(o, inst)) {
      p1_tested[i] = 1;
      p1_ok[i] = has_solution(inst, source, bound);
      return;
    }
    p2_tested[i] = 1;
    Int k = failing_boundary_witness(o, inst);
    bool covered = true;
    for (Int s = 0; s < k && covered; ++s)
      covered = std::any_of(inst.positive.begin(), inst.positive.end(),
                            [&](const Term& t) { return floor_mod(t.at(s), k) == 0; });
    p2_ok[i] = covered;
  });
  for (std::size_t i = 0; i < samples; ++i) {
    rep.p1.tested += p1_tested[i];
    rep.p1.passed += p1_ok[i];
    if (p1_tested[i] && !p1_ok[i] && rep.p1_failures.size() < 20)
      rep.p1_failures.push_back(render(PrimaryFormula{instances[i].positive, instances[i].negative}));
    rep.p2.tested += p2_tested[i];
    rep.p2.passed += p2_ok[i];
  }

  std::set<Int> moduli;
  for (const auto& inst : instances) {
    auto chi = build_chi(o, inst);
    if (chi.boundary.empty()) continue;
    for (Int k : chi.boundary.elements()) moduli.insert(k);
  }
  for (Int k : moduli) {
    ++rep.p3.tested;
    std::vector<Int> found;
    for (Int n = floor_div(-bound, k) * k; n <= bound; n += k)
      if (n >= -bound && source.contains(n)) found.push_back(n);
    std::vector<Int> trapped;
    for (Int t : o.boundary_trapped_set(k))
      if (t >= -bound && t <= bound) trapped.push_back(t);
    rep.p3.passed += found == trapped;
  }

  if (!rep.p2.all_passed() || !rep.p3.all_passed()) {
    rep.status = AuditStatus::Refuted;
    rep.note = "boundary or trapped-set check failed";
  } else if (!rep.p1.all_passed()) {
    bool proved = o.conditionality() == Conditionality::Unconditional;
    rep.status = proved ? AuditStatus::Refuted : AuditStatus::ConjectureRelevantAnomaly;
    rep.note = "some instances with chi true have no solution in the window";
  }
  if (o.kind() == OracleKind::Primes)
    rep.note += rep.note.empty() ? "P1 evidence is conditional on Dickson's conjecture"
                                 : "; P1 evidence is conditional on Dickson's conjecture";
  return rep;
}

ScanResult count_mixed(const MixedConjunction& f, std::span<const Int> bounds, const ScanOptions& options) {
  check_bounds(bounds);
  PrimeOracle primes;
  SquareFreeOracle squarefree;
  Int vb = 0;
  for (const auto* list : {&f.pos_pr, &f.neg_pr, &f.pos_sf, &f.neg_sf})
    for (const auto& t : *list) vb = std::max(vb, term_value_bound(t, bounds.back()));
  MembershipSource pr(primes, vb, options);
  MembershipSource sf(squarefree, vb, options);
  auto all = [](const std::vector<Term>& ts, const MembershipSource& s, bool want, Int x) {
    return std::all_of(ts.begin(), ts.end(), [&](const Term& t) { return s.contains(value_of(t, x)) == want; });
  };
  return scan_core(bounds, options, [&](Int x) {
    return all(f.pos_pr, pr, true, x) && all(f.neg_pr, pr, false, x) && all(f.pos_sf, sf, true, x) &&
           all(f.neg_sf, sf, false, x);
  });
}

}  // namespace addrand
