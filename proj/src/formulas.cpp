#include "hv/formulas.hpp"

#include <algorithm>
#include <functional>

namespace hv {

namespace {

std::vector<Generator> h_word(const std::vector<std::int64_t>& js) {
  std::vector<Generator> w;
  for (auto j : js) w.push_back(gen_h2(2 * j + 1));
  return w;
}

std::vector<Generator> d_word(const std::vector<std::int64_t>& js) {
  std::vector<Generator> w;
  for (auto j : js) w.push_back(gen_d(j));
  return w;
}

std::vector<std::int64_t> erase_at(const std::vector<std::int64_t>& js, size_t s) {
  std::vector<std::int64_t> out = js;
  out.erase(out.begin() + s);
  return out;
}

// Canonical monomial data: split factors into h-part, d-part, central
// exponents. Returns false if any exponent pattern is unexpected.
struct Split {
  std::vector<std::int64_t> h_idx2;  // with multiplicity
  std::vector<std::int64_t> d_idx;   // with multiplicity
  std::int64_t c1 = 0, c2 = 0;
};

Split split_monomial(const PBWMonomial& m) {
  Split s;
  for (const auto& [g, e] : m.factors) {
    switch (g.tag) {
      case GenTag::C1:
        s.c1 += e;
        break;
      case GenTag::C2:
        s.c2 += e;
        break;
      case GenTag::C3:
        s.c1 += 1000000;  // never valid in mirror
        break;
      case GenTag::H:
        for (std::int64_t i = 0; i < e; ++i) s.h_idx2.push_back(g.idx2);
        break;
      case GenTag::D:
        for (std::int64_t i = 0; i < e; ++i) s.d_idx.push_back(g.idx2 / 2);
        break;
    }
  }
  return s;
}

// Multiset difference js \ kept must be well defined; enumerate removed
// sub-multisets of size >= 2 and test the shape.
bool tail_shape_ok_F33(const Split& s, std::int64_t i,
                       const std::vector<std::int64_t>& js) {
  if (s.c1 != 0 || s.c2 != 0) return false;
  if (s.h_idx2.size() != 1) return false;
  size_t t = js.size();
  for (std::uint64_t mask = 0; mask < (1ull << t); ++mask) {
    size_t removed = static_cast<size_t>(__builtin_popcountll(mask));
    if (removed < 2) continue;
    std::vector<std::int64_t> kept;
    std::int64_t sigma = 0;
    for (size_t s2 = 0; s2 < t; ++s2) {
      if (mask & (1ull << s2))
        sigma += js[s2];
      else
        kept.push_back(js[s2]);
    }
    if (kept != s.d_idx) continue;
    if (s.h_idx2[0] == 2 * (i + sigma) - 1) return true;
  }
  return false;
}

bool tail_shape_ok_F34(const Split& s, std::int64_t i,
                       const std::vector<std::int64_t>& js) {
  if (!s.h_idx2.empty() || s.c2 != 0 || s.c1 > 1) return false;
  size_t t = js.size();
  for (std::uint64_t mask = 0; mask < (1ull << t); ++mask) {
    size_t removed = static_cast<size_t>(__builtin_popcountll(mask));
    if (removed < 2) continue;
    std::vector<std::int64_t> kept;
    std::int64_t sigma = 0;
    for (size_t s2 = 0; s2 < t; ++s2) {
      if (mask & (1ull << s2))
        sigma += js[s2];
      else
        kept.push_back(js[s2]);
    }
    if (s.c1 == 1) {
      // central shape: kept d's only, total index zero
      if (i + sigma == 0 && kept == s.d_idx) return true;
    } else {
      // kept d's plus one new mode d_{i+sigma}
      std::vector<std::int64_t> expected = kept;
      expected.insert(std::upper_bound(expected.begin(), expected.end(), i + sigma),
                      i + sigma);
      if (expected == s.d_idx) return true;
    }
  }
  return false;
}

}  // namespace

VerificationReport verify_formula(FormulaId which, std::int64_t i,
                                  const std::vector<std::int64_t>& js,
                                  std::int64_t t_bound, std::int64_t index_bound) {
  if (static_cast<std::int64_t>(js.size()) > t_bound)
    throw BoundExceeded("verify_formula: t=" + std::to_string(js.size()) +
                        " exceeds bound " + std::to_string(t_bound));
  if (js.empty()) throw BoundExceeded("verify_formula: empty index list");
  if (!std::is_sorted(js.begin(), js.end()))
    throw BoundExceeded("verify_formula: js must be sorted ascending");
  auto in_range = [&](std::int64_t v) { return v >= -index_bound && v <= index_bound; };
  if (!in_range(i) || !std::all_of(js.begin(), js.end(), in_range))
    throw BoundExceeded("verify_formula: index outside configured range");

  NormalOrderer ord(AlgebraKind::MirrorHV);
  const std::int64_t t = static_cast<std::int64_t>(js.size());
  VerificationReport rep;

  auto fail_with = [&](const std::string& id, const EnvElement& lhs,
                       const EnvElement& rhs) {
    rep.fail({id, "", lhs.str(), rhs.str()});
  };

  switch (which) {
    case FormulaId::F31: {
      // [h_{i-1/2}, h^J] = sum_s delta_{i+j_s,0} (i-1/2) c2 h^{J \ s}
      EnvElement lhs = ord.commutator(ord.from_generator(gen_h2(2 * i - 1)),
                                      ord.normal_form(h_word(js)));
      EnvElement rhs;
      for (std::int64_t s = 0; s < t; ++s) {
        if (i + js[s] != 0) continue;
        std::vector<Generator> w = h_word(erase_at(js, s));
        w.insert(w.begin(), gen_c2());
        rhs.add(ord.normal_form(w), rat(2 * i - 1, 2));
      }
      ++rep.checked;
      if (!(lhs == rhs)) fail_with("(3.1) i=" + std::to_string(i), lhs, rhs);
      break;
    }
    case FormulaId::F32: {
      // [d_i, h^J] = sum_s (-j_s-1/2) h^{J\s} h_{i+j_s+1/2}
      //   + sum_{s1<s2} (-j_{s1}-1/2)(i+j_{s1}+1/2) delta_{i+j_{s1}+j_{s2}+1,0} c2 h^{J\{s1,s2}}
      EnvElement lhs = ord.commutator(ord.from_generator(gen_d(i)),
                                      ord.normal_form(h_word(js)));
      EnvElement rhs;
      for (std::int64_t s = 0; s < t; ++s) {
        std::vector<Generator> w = h_word(erase_at(js, s));
        w.push_back(gen_h2(2 * (i + js[s]) + 1));
        rhs.add(ord.normal_form(w), rat(-(2 * js[s] + 1), 2));
      }
      for (std::int64_t s1 = 0; s1 < t; ++s1)
        for (std::int64_t s2 = s1 + 1; s2 < t; ++s2) {
          if (i + js[s1] + js[s2] + 1 != 0) continue;
          std::vector<std::int64_t> rest = erase_at(erase_at(js, s2), s1);
          std::vector<Generator> w = h_word(rest);
          w.insert(w.begin(), gen_c2());
          Rat coeff = rat(-(2 * js[s1] + 1), 2) * rat(2 * (i + js[s1]) + 1, 2);
          rhs.add(ord.normal_form(w), coeff);
        }
      ++rep.checked;
      if (!(lhs == rhs)) fail_with("(3.2) i=" + std::to_string(i), lhs, rhs);
      break;
    }
    case FormulaId::F33: {
      // leading: sum_s (i-1/2) d^{J\s} h_{i+j_s-1/2}; tail shape-checked
      EnvElement lhs = ord.commutator(ord.from_generator(gen_h2(2 * i - 1)),
                                      ord.normal_form(d_word(js)));
      EnvElement leading;
      for (std::int64_t s = 0; s < t; ++s) {
        std::vector<Generator> w = d_word(erase_at(js, s));
        w.push_back(gen_h2(2 * (i + js[s]) - 1));
        leading.add(ord.normal_form(w), rat(2 * i - 1, 2));
      }
      EnvElement tail = lhs;
      tail.add(leading, Rat(-1));
      ++rep.checked;
      for (const auto& [m, c] : tail.terms) {
        (void)c;
        if (!tail_shape_ok_F33(split_monomial(m), i, js)) {
          fail_with("(3.3) i=" + std::to_string(i) + " stray monomial " + m.str(),
                    lhs, leading);
          break;
        }
      }
      break;
    }
    case FormulaId::F34: {
      // leading: sum_s (i-j_s) d^{J\s} dtilde_{i+j_s} with
      // dtilde_m = d_m + (j_s^2-1)/24 delta_{m,0} c1; tail shape-checked
      EnvElement lhs = ord.commutator(ord.from_generator(gen_d(i)),
                                      ord.normal_form(d_word(js)));
      EnvElement leading;
      for (std::int64_t s = 0; s < t; ++s) {
        std::vector<std::int64_t> rest = erase_at(js, s);
        std::vector<Generator> w = d_word(rest);
        w.push_back(gen_d(i + js[s]));
        leading.add(ord.normal_form(w), rat(i - js[s]));
        if (i + js[s] == 0) {
          std::vector<Generator> wc = d_word(rest);
          wc.insert(wc.begin(), gen_c1());
          leading.add(ord.normal_form(wc),
                      rat(i - js[s]) * rat(js[s] * js[s] - 1, 24));
        }
      }
      EnvElement tail = lhs;
      tail.add(leading, Rat(-1));
      ++rep.checked;
      for (const auto& [m, c] : tail.terms) {
        (void)c;
        if (!tail_shape_ok_F34(split_monomial(m), i, js)) {
          fail_with("(3.4) i=" + std::to_string(i) + " stray monomial " + m.str(),
                    lhs, leading);
          break;
        }
      }
      break;
    }
  }
  return rep;
}

VerificationReport verify_formula_sweep(FormulaId which, std::int64_t range,
                                        std::int64_t t_max) {
  VerificationReport rep;
  std::vector<std::int64_t> js;
  std::function<void(std::int64_t)> rec = [&](std::int64_t lo) {
    if (!rep.pass) return;
    if (!js.empty()) {
      for (std::int64_t i = -range; i <= range; ++i) {
        VerificationReport one = verify_formula(which, i, js, t_max, range);
        rep.checked += one.checked;
        if (!one.pass) {
          rep.pass = false;
          rep.counterexample = one.counterexample;
          return;
        }
      }
    }
    if (static_cast<std::int64_t>(js.size()) == t_max) return;
    for (std::int64_t j = lo; j <= range; ++j) {
      js.push_back(j);
      rec(j);
      js.pop_back();
    }
  };
  rec(-range);
  return rep;
}

}  // namespace hv
