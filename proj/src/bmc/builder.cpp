#include <algorithm>
#include <bit>

#include "saga/bmc.hpp"

namespace saga::bmc {

using sat::kFalse;
using sat::kTrue;

namespace {

enum Op { kAnd, kXor, kIte };

}  // namespace

std::size_t Builder::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = static_cast<std::uint64_t>(k.op);
  for (Lit l : {k.a, k.b, k.c}) h = (h ^ static_cast<std::uint32_t>(l)) * 0x100000001b3ULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Lit Builder::and2(Lit a, Lit b) {
  if (a == kFalse || b == kFalse || a == -b) return kFalse;
  if (a == kTrue || a == b) return b;
  if (b == kTrue) return a;
  if (a > b) std::swap(a, b);
  const Key key{kAnd, a, b, 0};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Lit x = sat::make_and(f_, a, b);
  cache_.emplace(key, x);
  return x;
}

Lit Builder::xor2(Lit a, Lit b) {
  if (sat::is_constant(a) || sat::is_constant(b) || a == b || a == -b) return sat::make_xor(f_, a, b);
  const bool negate = (a < 0) != (b < 0);
  a = sat::var_of(a);
  b = sat::var_of(b);
  if (a > b) std::swap(a, b);
  const Key key{kXor, a, b, 0};
  Lit x;
  if (auto it = cache_.find(key); it != cache_.end()) {
    x = it->second;
  } else {
    x = sat::make_xor(f_, a, b);
    cache_.emplace(key, x);
  }
  return negate ? -x : x;
}

Lit Builder::ite(Lit c, Lit t, Lit e) {
  if (c == kTrue) return t;
  if (c == kFalse) return e;
  if (t == e) return t;
  if (t == kTrue) return or2(c, e);
  if (t == kFalse) return and2(-c, e);
  if (e == kTrue) return or2(-c, t);
  if (e == kFalse) return and2(c, t);
  if (t == -e) return -xor2(c, t);
  if (t == c) return or2(c, e);
  if (t == -c) return and2(-c, e);
  if (e == c) return and2(c, t);
  if (e == -c) return or2(-c, t);
  if (c < 0) {
    c = -c;
    std::swap(t, e);
  }
  bool negate = false;
  if (t < 0) {
    t = -t;
    e = -e;
    negate = true;
  }
  const Key key{kIte, c, t, e};
  Lit x;
  if (auto it = cache_.find(key); it != cache_.end()) {
    x = it->second;
  } else {
    x = sat::make_ite(f_, c, t, e);
    cache_.emplace(key, x);
  }
  return negate ? -x : x;
}

Lit Builder::and_all(const std::vector<Lit>& lits) {
  std::vector<Lit> in;
  for (Lit l : lits) {
    if (l == kFalse) return kFalse;
    if (l != kTrue) in.push_back(l);
  }
  if (in.size() <= 2) {
    Lit acc = kTrue;
    for (Lit l : in) acc = and2(acc, l);
    return acc;
  }
  return sat::make_and(f_, in);
}

Lit Builder::or_any(const std::vector<Lit>& lits) {
  std::vector<Lit> negated(lits);
  for (Lit& l : negated) l = -l;
  return -and_all(negated);
}

Word Builder::constant(std::int64_t value, int width) {
  Word w(static_cast<std::size_t>(width));
  const auto bits = static_cast<std::uint64_t>(value);
  for (int i = 0; i < width; ++i) w[static_cast<std::size_t>(i)] = ((bits >> std::min(i, 63)) & 1U) ? kTrue : kFalse;
  return w;
}

Word Builder::ite(Lit c, const Word& t, const Word& e) {
  if (t.size() != e.size()) throw InternalError("word width mismatch in ite");
  Word out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = ite(c, t[i], e[i]);
  return out;
}

Lit Builder::eq(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw InternalError("word width mismatch in eq");
  std::vector<Lit> bits;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Lit same = -xor2(a[i], b[i]);
    if (same == kFalse) return kFalse;
    bits.push_back(same);
  }
  return and_all(bits);
}

Lit Builder::eq_const(const Word& w, std::int64_t value) {
  if (value < 0) return kFalse;
  if (w.size() < 63 && static_cast<std::uint64_t>(value) >> w.size() != 0) return kFalse;
  return eq(w, constant(value, static_cast<int>(w.size())));
}

Lit Builder::eq_const_signed(const Word& w, std::int64_t value) {
  const auto width = static_cast<int>(w.size());
  if (width == 0) return value == 0 ? kTrue : kFalse;
  const std::int64_t min = -(std::int64_t{1} << (width - 1));
  const std::int64_t max = (std::int64_t{1} << (width - 1)) - 1;
  if (value < min || value > max) return kFalse;
  return eq(w, constant(value, width));
}

Lit Builder::add_carry(const Word& a, const Word& b, Lit carry, Word* sum) {
  if (a.size() != b.size()) throw InternalError("word width mismatch in adder");
  if (sum) sum->assign(a.size(), kFalse);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Lit half = xor2(a[i], b[i]);
    if (sum) (*sum)[i] = xor2(half, carry);
    carry = or2(and2(a[i], b[i]), and2(carry, half));
  }
  return carry;
}

Word Builder::add(const Word& a, const Word& b) {
  Word sum;
  add_carry(a, b, kFalse, &sum);
  return sum;
}

Word Builder::sub(const Word& a, const Word& b) {
  Word nb(b);
  for (Lit& l : nb) l = -l;
  Word diff;
  add_carry(a, nb, kTrue, &diff);
  return diff;
}

Lit Builder::ult(const Word& a, const Word& b) {
  Word nb(b);
  for (Lit& l : nb) l = -l;
  return -add_carry(a, nb, kTrue, nullptr);
}

Lit Builder::slt(const Word& a, const Word& b) {
  if (a.empty()) return kFalse;
  Word fa(a), fb(b);
  fa.back() = -fa.back();
  fb.back() = -fb.back();
  return ult(fa, fb);
}

Lit Builder::ule_const(const Word& w, std::uint64_t value) {
  if (w.size() >= 64 || value >= (std::uint64_t{1} << w.size()) - 1) return kTrue;
  return -ult(constant(static_cast<std::int64_t>(value), static_cast<int>(w.size())), w);
}

Lit Builder::sle_const(const Word& w, std::int64_t value) {
  const auto width = static_cast<int>(w.size());
  if (width == 0) return value >= 0 ? kTrue : kFalse;
  const std::int64_t min = -(std::int64_t{1} << (width - 1));
  const std::int64_t max = (std::int64_t{1} << (width - 1)) - 1;
  if (value >= max) return kTrue;
  if (value < min) return kFalse;
  return -slt(constant(value, width), w);
}

Word Builder::popcount(const std::vector<Lit>& lits) {
  const int width = std::max(1, static_cast<int>(std::bit_width(lits.size())));
  Word acc = constant(0, width);
  for (Lit l : lits) {
    Word one = constant(0, width);
    one[0] = l;
    acc = add(acc, one);
  }
  return acc;
}

}  // namespace saga::bmc
