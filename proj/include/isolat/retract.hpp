#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "isolat/constructions.hpp"
#include "isolat/errors.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/subspaces.hpp"

namespace isolat {

// K ⊆ L is convex when a ≤ x ≤ b with a, b ∈ K forces x ∈ K.
inline bool is_convex(const FiniteLattice& l, const std::vector<int>& k, std::vector<std::string>* witness = nullptr) {
  std::vector<char> in(static_cast<std::size_t>(l.size()), 0);
  for (int x : k) in[static_cast<std::size_t>(x)] = 1;
  for (int x = 0; x < l.size(); ++x) {
    if (in[static_cast<std::size_t>(x)]) continue;
    for (int a : k)
      for (int b : k)
        if (l.leq(a, x) && l.leq(x, b)) {
          if (witness) *witness = {l.label(a), l.label(x), l.label(b)};
          return false;
        }
  }
  return true;
}

struct RetractCheck {
  bool ok = true;
  std::vector<std::string> witness;
};

// For an idempotent lattice retraction ρ of L onto a convex sublattice K:
// any x lying under some element of K lies under ρ(x).  The structural
// requirements on (K, ρ) are hypotheses; convexity and the majorization
// conclusion are what gets checked and witnessed.
inline RetractCheck convex_retract_majorization_check(const FiniteLattice& l, const std::vector<int>& k,
                                                      const MonotoneMap& rho) {
  if (k.empty()) fail(Errc::hypothesis_violated, "K must be nonempty");
  if (rho.dom.size() != l.size() || rho.cod.size() != l.size())
    fail(Errc::hypothesis_violated, "retraction must be an endomap of L");
  std::unordered_set<int> ks(k.begin(), k.end());
  for (int a : k)
    for (int b : k)
      if (!ks.count(l.meet(a, b)) || !ks.count(l.join(a, b)))
        fail(Errc::hypothesis_violated, "K is not a sublattice", {l.label(a), l.label(b)});
  if (!map_check(rho, MapMode::lattice_hom).ok)
    fail(Errc::hypothesis_violated, "retraction is not a lattice homomorphism");
  for (int x = 0; x < l.size(); ++x)
    if (!ks.count(rho.img[x])) fail(Errc::hypothesis_violated, "retraction leaves K", {l.label(x)});
  for (int a : k)
    if (rho.img[a] != a) fail(Errc::hypothesis_violated, "retraction moves a point of K", {l.label(a)});

  RetractCheck out;
  if (!is_convex(l, k, &out.witness)) {
    out.ok = false;
    return out;
  }
  for (int x = 0; x < l.size(); ++x)
    for (int r : k)
      if (l.leq(x, r) && !l.leq(x, rho.img[x])) {
        out.ok = false;
        out.witness = {l.label(x), l.label(r)};
        return out;
      }
  return out;
}

// ---- factoring through compatible tuples ---------------------------------
//
// The factors share a copy of K, each with a convex embedding and a lattice
// retraction back onto it.  The intermediate collects the tuples
// (f_0, f_1, ..., f_k) ∈ K×∏L_i whose coordinates are ρ-consistent:
// ρ_i(f_i) = f_0.  The projection folds against the shared K-coordinate the
// way the sea-level fold does against e.

inline FactorizationResult retract_factorization(const Carrier& k_lat, const std::vector<MonotoneMap>& embeds,
                                                 const std::vector<MonotoneMap>& rhos,
                                                 const std::vector<MonotoneMap>& phis,
                                                 std::size_t cap = kDefaultSizeCap) {
  const std::size_t nf = phis.size();
  if (nf == 0) fail(Errc::empty_index_set, "need at least one factor");
  if (embeds.size() != nf || rhos.size() != nf) fail(Errc::invalid_input, "need one embedding and one retraction per factor");
  const FiniteLattice& K = k_lat.lattice();
  const FiniteLattice& m = detail::common_codomain(phis);

  for (std::size_t i = 0; i < nf; ++i) {
    const FiniteLattice& li = phis[i].dom.lattice();
    if (embeds[i].dom.size() != K.size() || embeds[i].cod.size() != li.size() ||
        rhos[i].dom.size() != li.size() || rhos[i].cod.size() != K.size())
      fail(Errc::invalid_input, "embedding/retraction endpoints do not match");
    if (!map_check(embeds[i], MapMode::embedding).ok)
      fail(Errc::hypothesis_violated, "K does not embed in factor " + std::to_string(i));
    if (!map_check(rhos[i], MapMode::lattice_hom).ok)
      fail(Errc::hypothesis_violated, "retraction " + std::to_string(i) + " is not a lattice homomorphism");
    for (int x = 0; x < K.size(); ++x)
      if (rhos[i].img[embeds[i].img[x]] != x)
        fail(Errc::hypothesis_violated, "retraction " + std::to_string(i) + " does not restore K",
             {K.label(x)});
    std::vector<int> image(embeds[i].img.begin(), embeds[i].img.end());
    if (!is_convex(li, image))
      fail(Errc::hypothesis_violated, "image of K is not convex in factor " + std::to_string(i));
    detail::require_isotone(phis[i]);
  }
  for (int x = 0; x < K.size(); ++x)
    for (std::size_t i = 1; i < nf; ++i)
      if (phis[i].img[embeds[i].img[x]] != phis[0].img[embeds[0].img[x]])
        fail(Errc::hypothesis_violated, "maps disagree on K", {K.label(x)});

  std::vector<FiniteLattice> factors{K};
  for (const auto& p : phis) factors.push_back(p.dom.lattice());
  FiniteLattice prod = product(factors, cap);

  std::vector<std::size_t> stride(nf + 1, 1);
  for (std::size_t j = nf + 1; j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(factors[j].size());

  auto decompose = [&](std::size_t f, std::vector<int>& c) {
    for (std::size_t j = nf + 1; j-- > 0;) {
      c[j] = static_cast<int>(f % static_cast<std::size_t>(factors[j].size()));
      f /= static_cast<std::size_t>(factors[j].size());
    }
  };
  std::vector<int> members;
  std::vector<int> c(nf + 1);
  for (int f = 0; f < prod.size(); ++f) {
    decompose(static_cast<std::size_t>(f), c);
    bool good = true;
    for (std::size_t i = 1; i <= nf && good; ++i)
      if (rhos[i - 1].img[c[i]] != c[0]) good = false;
    if (good) members.push_back(f);
  }
  std::vector<int> pos(static_cast<std::size_t>(prod.size()), -1);
  for (std::size_t j = 0; j < members.size(); ++j) pos[static_cast<std::size_t>(members[j])] = static_cast<int>(j);
  Carrier inter(induced_sublattice(prod, members, "compatible_tuples"));

  std::vector<MonotoneMap> injections;
  for (std::size_t i = 0; i < nf; ++i) {
    const FiniteLattice& li = phis[i].dom.lattice();
    std::vector<int> img(static_cast<std::size_t>(li.size()));
    for (int x = 0; x < li.size(); ++x) {
      const int r = rhos[i].img[x];
      std::size_t off = static_cast<std::size_t>(r) * stride[0];
      for (std::size_t j = 1; j <= nf; ++j)
        off += stride[j] * static_cast<std::size_t>(j == i + 1 ? x : embeds[j - 1].img[r]);
      const int p = pos[off];
      if (p < 0) fail(Errc::invalid_input, "internal: injection image escapes the compatible tuples");
      img[static_cast<std::size_t>(x)] = p;
    }
    injections.push_back(make_map("inject_" + std::to_string(i), phis[i].dom, inter, std::move(img)));
  }

  std::vector<int> proj(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    decompose(static_cast<std::size_t>(members[j]), c);
    bool all_below = true;
    for (std::size_t i = 1; i <= nf; ++i)
      if (!factors[i].leq(c[i], embeds[i - 1].img[c[0]])) { all_below = false; break; }
    int acc = -1;
    if (all_below) {
      for (std::size_t i = 1; i <= nf; ++i) {
        const int v = phis[i - 1].img[c[i]];
        acc = acc < 0 ? v : m.meet(acc, v);
      }
    } else {
      for (std::size_t i = 1; i <= nf; ++i)
        if (!factors[i].leq(c[i], embeds[i - 1].img[c[0]])) {
          const int v = phis[i - 1].img[c[i]];
          acc = acc < 0 ? v : m.join(acc, v);
        }
    }
    proj[j] = acc;
  }
  FactorizationResult out{inter, std::move(injections),
                          make_map("project", inter, phis.front().cod, std::move(proj)), {}};
  verify_factorization(out, phis);
  return out;
}

// ---- why convexity cannot be dropped --------------------------------------
//
// In the subspace lattice of {0,1}^3, the chain K = {0 < a} (a a plane) is
// convex in the sublattice generated by {a, b} for each line b ⊄ a — but not
// in the sublattice generated by the union {a, b0, b1}, where (b0∨b1)∧a
// wedges strictly between 0 and a.

struct ConvexityReport {
  FiniteLattice space;  // Sub(F2^3)
  int zero, a, b0, b1, middle;
  FiniteLattice side0, side1, joint;  // generated sublattices
  bool convex_in_sides = false;
  bool middle_strictly_between = false;
  bool convex_in_joint = true;  // expected to come back false
};

inline ConvexityReport convexity_counterexample() {
  ConvexityReport r{subspaces_f2(3), 0, 0, 0, 0, 0, chain(1), chain(1), chain(1), false, false, true};
  const FiniteLattice& s = r.space;
  r.zero = s.bottom();
  r.a = s.require("{001,010,011}");   // the plane spanned by 001 and 010
  r.b0 = s.require("{100}");          // two lines outside that plane
  r.b1 = s.require("{101}");
  r.middle = s.meet(s.join(r.b0, r.b1), r.a);
  r.middle_strictly_between = s.lt(r.zero, r.middle) && s.lt(r.middle, r.a);

  auto in_set = [](const FiniteLattice& l, const std::string& lab) {
    for (int i = 0; i < l.size(); ++i)
      if (l.label(i) == lab) return i;
    return -1;
  };
  auto k_of = [&](const FiniteLattice& l) {
    std::vector<int> k{in_set(l, s.label(r.zero)), in_set(l, s.label(r.a))};
    if (k[0] < 0 || k[1] < 0) fail(Errc::invalid_input, "internal: K missing from generated sublattice");
    return k;
  };
  r.side0 = sublattice_closure(s, {r.a, r.b0}, "side0");
  r.side1 = sublattice_closure(s, {r.a, r.b1}, "side1");
  r.joint = sublattice_closure(s, {r.a, r.b0, r.b1}, "joint");
  r.convex_in_sides = is_convex(r.side0, k_of(r.side0)) && is_convex(r.side1, k_of(r.side1));
  r.convex_in_joint = is_convex(r.joint, k_of(r.joint));
  return r;
}

}  // namespace isolat
