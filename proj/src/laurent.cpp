// laurent.cpp

#include "klq/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace klq {

namespace {
const BigInt kZero = 0;
}

LaurentPoly::LaurentPoly(BigInt constant) {
  if (constant != 0) terms_.emplace_back(0, std::move(constant));
}

LaurentPoly LaurentPoly::monomial(BigInt coeff, int exp) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.emplace_back(exp, std::move(coeff));
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i - 1].first >= terms[i].first)
      fail(Errc::invalid_input, "term exponents must be strictly ascending");
  }
  LaurentPoly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return t.second == 0; }),
               terms_.end());
}

int LaurentPoly::min_exp() const { return terms_.front().first; }
int LaurentPoly::max_exp() const { return terms_.back().first; }

const BigInt& LaurentPoly::coeff(int exp) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exp,
      [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exp) return it->second;
  return kZero;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae && b != be) {
    if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      BigInt c = std::move(a->second);
      c += b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), std::make_move_iterator(a), std::make_move_iterator(ae));
  out.insert(out.end(), b, be);
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae && b != be) {
    if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first < a->first) {
      out.emplace_back(b->first, -b->second);
      ++b;
    } else {
      BigInt c = std::move(a->second);
      c -= b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), std::make_move_iterator(a), std::make_move_iterator(ae));
  for (; b != be; ++b) out.emplace_back(b->first, -b->second);
  terms_ = std::move(out);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.emplace_back(t.first, -t.second);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  const long lo = static_cast<long>(a.min_exp()) + b.min_exp();
  const long hi = static_cast<long>(a.max_exp()) + b.max_exp();
  const long width = hi - lo + 1;
  if (width <= 1 << 16) {
    // Dense accumulation over the (small) exponent range.
    std::vector<BigInt> acc(static_cast<std::size_t>(width));
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        acc[static_cast<std::size_t>(ta.first + tb.first - lo)] +=
            ta.second * tb.second;
    for (long e = 0; e < width; ++e)
      if (acc[static_cast<std::size_t>(e)] != 0)
        r.terms_.emplace_back(static_cast<int>(lo + e),
                              std::move(acc[static_cast<std::size_t>(e)]));
  } else {
    std::map<int, BigInt> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        acc[ta.first + tb.first] += ta.second * tb.second;
    for (auto& [e, c] : acc)
      if (c != 0) r.terms_.emplace_back(e, std::move(c));
  }
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.emplace_back(t.first + k, t.second);
  return r;
}

LaurentPoly LaurentPoly::times_t_plus_tinv() const {
  return shifted(1) + shifted(-1);
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    r.terms_.emplace_back(-it->first, it->second);
  return r;
}

void LaurentPoly::sub_mul(const LaurentPoly& g, const LaurentPoly& h) {
  *this -= g * h;
}

void LaurentPoly::add_shifted(const LaurentPoly& g, int k) {
  if (g.terms_.empty()) return;
  if (terms_.empty()) {
    terms_.reserve(g.terms_.size());
    for (const Term& t : g.terms_) terms_.emplace_back(t.first + k, t.second);
    return;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = g.terms_.begin(), be = g.terms_.end();
  while (a != ae && b != be) {
    const int bexp = b->first + k;
    if (a->first < bexp) {
      out.push_back(std::move(*a++));
    } else if (bexp < a->first) {
      out.emplace_back(bexp, b->second);
      ++b;
    } else {
      BigInt c = std::move(a->second);
      c += b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), std::make_move_iterator(a), std::make_move_iterator(ae));
  for (; b != be; ++b) out.emplace_back(b->first + k, b->second);
  terms_ = std::move(out);
}

bool LaurentPoly::is_strictly_negative() const {
  return terms_.empty() || terms_.back().first < 0;
}

bool LaurentPoly::is_bar_symmetric() const {
  std::size_t i = 0, j = terms_.size();
  while (i < j) {
    const Term& lo = terms_[i];
    const Term& hi = terms_[j - 1];
    if (lo.first != -hi.first || lo.second != hi.second) return false;
    ++i;
    --j;
  }
  return true;
}

bool LaurentPoly::parity_ok(int parity) const {
  for (const Term& t : terms_)
    if (((t.first % 2) + 2) % 2 != parity) return false;
  return true;
}

std::vector<BigInt> LaurentPoly::to_q_polynomial(int ldiff) const {
  std::vector<BigInt> out;
  if (terms_.empty()) return out;
  if (min_exp() + ldiff < 0)
    fail(Errc::negative_exponent,
         "negative exponent " + std::to_string(min_exp() + ldiff) +
             " after normalization shift " + std::to_string(ldiff));
  out.resize(static_cast<std::size_t>(max_exp() + ldiff) / 2 + 1);
  for (const Term& t : terms_) {
    const int e = t.first + ldiff;
    if (e % 2 != 0)
      fail(Errc::odd_exponent, "odd exponent " + std::to_string(e) +
                                   " after normalization shift " +
                                   std::to_string(ldiff));
    out[static_cast<std::size_t>(e) / 2] = t.second;
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    BigInt c = t.second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.first == 0) {
      os << c.str();
    } else {
      if (c != 1) os << c.str() << "*";
      os << "t^" << t.first;
    }
  }
  return os.str();
}

LaurentPoly correction_poly(const LaurentPoly& f) {
  std::vector<LaurentPoly::Term> out;
  const auto& ts = f.terms();
  // Mirrored copies of the strictly positive part, descending source order
  // keeps the output ascending.
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (it->first <= 0) break;
    out.emplace_back(-it->first, it->second);
  }
  for (const auto& t : ts)
    if (t.first >= 0) out.push_back(t);
  return LaurentPoly::from_terms(std::move(out));
}

}  // namespace klq
